// Copyright 2026 The qs3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qs3/geometry.hpp"

#include <cmath>

namespace qs3 {

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

namespace {

struct MetricJets {
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> dg;                 // dg[k](i,j) = d_k g_ij
  std::vector<std::vector<Eigen::MatrixXd>> d2g;   // d2g[k][l](i,j)
};

MetricJets metric_jets(const ChartedManifold& m, const Eigen::VectorXd& p) {
  JetVec u = chart_vars(m, p);
  JetMatrix gj = m.g(u);
  const int d = m.dim;
  if (gj.rows() != d || gj.cols() != d) fail(Errc::dimension_mismatch, "metric field has wrong shape");

  MetricJets out;
  out.g = gj.values();
  double scale = std::max(1.0, out.g.cwiseAbs().maxCoeff());
  if ((out.g - out.g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(Errc::non_spd_metric, "metric is not symmetric at the sample point");
  Eigen::LLT<Eigen::MatrixXd> llt(out.g);
  if (llt.info() != Eigen::Success) fail(Errc::non_spd_metric, "metric is not positive definite at the sample point");
  out.g_inv = llt.solve(Eigen::MatrixXd::Identity(d, d));

  out.dg.assign(d, Eigen::MatrixXd::Zero(d, d));
  out.d2g.assign(d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Jet2& e = gj(i, j);
      if (e.dim() == 0) continue;
      for (int k = 0; k < d; ++k) {
        out.dg[k](i, j) = e.grad()(k);
        for (int l = 0; l < d; ++l) out.d2g[k][l](i, j) = e.hess()(k, l);
      }
    }
  return out;
}

std::vector<Eigen::MatrixXd> gamma_from(const MetricJets& mj) {
  const int d = static_cast<int>(mj.g.rows());
  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += mj.g_inv(k, l) * (mj.dg[i](j, l) + mj.dg[j](i, l) - mj.dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
        gamma[k](j, i) = gamma[k](i, j);
      }
  return gamma;
}

}  // namespace

ChristoffelAt christoffel_at(const ChartedManifold& m, const Eigen::VectorXd& p) {
  MetricJets mj = metric_jets(m, p);
  return ChristoffelAt{mj.g, mj.g_inv, gamma_from(mj)};
}

PointGeometry riemann_at(const ChartedManifold& m, const Eigen::VectorXd& p) {
  MetricJets mj = metric_jets(m, p);
  const int d = m.dim;

  PointGeometry out;
  out.p = p;
  out.g = mj.g;
  out.g_inv = mj.g_inv;
  out.gamma = gamma_from(mj);

  // d_m g_inv = -g_inv (d_m g) g_inv
  std::vector<Eigen::MatrixXd> dginv(d);
  for (int mm = 0; mm < d; ++mm) dginv[mm] = -mj.g_inv * mj.dg[mm] * mj.g_inv;

  // d_m Gamma^k_ij
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(d, std::vector<Eigen::MatrixXd>(d));
  for (int mm = 0; mm < d; ++mm)
    for (int k = 0; k < d; ++k) {
      Eigen::MatrixXd gk = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            double t = mj.dg[i](j, l) + mj.dg[j](i, l) - mj.dg[l](i, j);
            double dt = mj.d2g[mm][i](j, l) + mj.d2g[mm][j](i, l) - mj.d2g[mm][l](i, j);
            s += dginv[mm](k, l) * t + mj.g_inv(k, l) * dt;
          }
          gk(i, j) = 0.5 * s;
          gk(j, i) = gk(i, j);
        }
      dgamma[mm][k] = gk;
    }

  out.riem_up = Tensor4(d);
  out.riem_low = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int mm = 0; mm < d; ++mm)
            s += out.gamma[l](i, mm) * out.gamma[mm](j, k) - out.gamma[l](j, mm) * out.gamma[mm](i, k);
          out.riem_up.at(i, j, k, l) = s;
          out.riem_up.at(j, i, k, l) = -s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int mm = 0; mm < d; ++mm) s += mj.g(k, mm) * out.riem_up.at(i, j, l, mm);
          out.riem_low.at(i, j, k, l) = s;
        }
  return out;
}

Eigen::VectorXd PointGeometry::curv(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& z) const {
  const int d = static_cast<int>(g.rows());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        double c = xy * z(k);
        if (c == 0.0) continue;
        for (int l = 0; l < d; ++l) r(l) += c * riem_up.at(i, j, k, l);
      }
    }
  }
  return r;
}

double PointGeometry::riem4(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                            const Eigen::VectorXd& w) const {
  return w.dot(g * curv(x, y, z));
}

double PointGeometry::sectional(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  double xx = x.dot(g * x), yy = y.dot(g * y), xy = x.dot(g * y);
  double area2 = xx * yy - xy * xy;
  if (area2 <= 1e-12 * std::max(1.0, xx * yy))
    fail(Errc::degenerate_input, "sectional: vectors do not span a plane");
  return riem4(x, y, y, x) / area2;
}

double PointGeometry::symmetry_residual() const {
  const int d = static_cast<int>(g.rows());
  double scale = std::max(1.0, riem_low.max_abs());
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double r = riem_low.at(i, j, k, l);
          worst = std::max(worst, std::abs(r + riem_low.at(j, i, k, l)));
          worst = std::max(worst, std::abs(r + riem_low.at(i, j, l, k)));
          worst = std::max(worst, std::abs(r - riem_low.at(k, l, i, j)));
          worst = std::max(worst,
                           std::abs(r + riem_low.at(j, k, i, l) + riem_low.at(k, i, j, l)));
        }
  return worst / scale;
}

double sectional(const ChartedManifold& m, const Eigen::VectorXd& p, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y) {
  return riemann_at(m, p).sectional(x, y);
}

Eigen::VectorXd lie_bracket(const Vec1& a, const Vec1& b) {
  // [A, B]^k = A^i d_i B^k - B^i d_i A^k
  return b.jac * a.v - a.jac * b.v;
}

Eigen::VectorXd lie_bracket_at(const ChartedManifold& m,
                               const std::function<JetVec(const JetVec&)>& a,
                               const std::function<JetVec(const JetVec&)>& b,
                               const Eigen::VectorXd& p) {
  JetVec u = chart_vars(m, p);
  return lie_bracket(to_vec1(a(u)), to_vec1(b(u)));
}

AltForm d_form(const Vec1& w) {
  const int d = static_cast<int>(w.v.size());
  AltForm r(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) r.comp({i, j}) = w.jac(j, i) - w.jac(i, j);
  return r;
}

AltForm d_form(const Mat1& w) {
  const int d = static_cast<int>(w.v.rows());
  double scale = std::max(1.0, w.v.cwiseAbs().maxCoeff());
  if ((w.v + w.v.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    fail(Errc::invalid_argument, "d_form: 2-form components are not skew");
  AltForm r(d, 3);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        r.comp({i, j, k}) = w.partial[i](j, k) - w.partial[j](i, k) + w.partial[k](i, j);
  return r;
}

AltForm d_form_at(const ChartedManifold& m, const std::function<JetVec(const JetVec&)>& covector_field,
                  const Eigen::VectorXd& p) {
  JetVec u = chart_vars(m, p);
  return d_form(to_vec1(covector_field(u)));
}

AltForm d_form_at(const ChartedManifold& m, const std::function<JetMatrix(const JetVec&)>& two_form_field,
                  const Eigen::VectorXd& p) {
  JetVec u = chart_vars(m, p);
  return d_form(to_mat1(two_form_field(u)));
}

Eigen::VectorXd cov_deriv_vector(const std::vector<Eigen::MatrixXd>& gamma, const Vec1& field,
                                 const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd r = field.jac * x;
  for (int i = 0; i < d; ++i) r(i) += x.dot(gamma[i] * field.v);
  return r;
}

Eigen::VectorXd cov_deriv_covector(const std::vector<Eigen::MatrixXd>& gamma, const Vec1& field,
                                   const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd r = field.jac * x;
  // (nabla_X w)_j -= X^k Gamma^m_kj w_m
  for (int j = 0; j < d; ++j) {
    double s = 0.0;
    for (int mm = 0; mm < d; ++mm) s += field.v(mm) * x.dot(gamma[mm].col(j));
    r(j) -= s;
  }
  return r;
}

Eigen::MatrixXd cov_deriv_tensor11(const std::vector<Eigen::MatrixXd>& gamma, const Mat1& field,
                                   const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    if (x(k) != 0.0) r += x(k) * field.partial[k];
  // + X^k Gamma^i_km T^m_j - X^k Gamma^m_kj T^i_m
  Eigen::MatrixXd xg(d, d);  // xg(i, m) = X^k Gamma^i_km
  for (int i = 0; i < d; ++i) xg.row(i) = (gamma[i].transpose() * x).transpose();
  r += xg * field.v - field.v * xg;
  return r;
}

Eigen::VectorXd nijenhuis(const Mat1& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd tx = t.v * x, ty = t.v * y;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
  for (int mm = 0; mm < d; ++mm) {
    // [TX, TY] part: (TX)^m d_m (T) Y - (TY)^m d_m (T) X
    r += tx(mm) * (t.partial[mm] * y) - ty(mm) * (t.partial[mm] * x);
  }
  // - T ( (d_i T) Y X^i - (d_j T) X Y^j )
  Eigen::VectorXd inner = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) inner += x(i) * (t.partial[i] * y) - y(i) * (t.partial[i] * x);
  r -= t.v * inner;
  return r;
}

}  // namespace qs3
