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

#include "qs3/contact.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "qs3/forms.hpp"

namespace qs3 {

namespace {

double mabs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double vabs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct KernelSplit {
  int rank = 0;
  Eigen::MatrixXd kernel;  // euclidean-orthonormal columns
};

// Rank and null space with the same ambiguity guard as the skew spectral
// routine: any singular value within a factor 32 of the cut is refused
// rather than silently binned.
KernelSplit guarded_kernel(const Eigen::MatrixXd& a, double tol) {
  const int n = static_cast<int>(a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  KernelSplit ks;
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) {
    ks.kernel = Eigen::MatrixXd::Identity(n, n);
    return ks;
  }
  const double cut = tol * smax;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut / 32.0 && sv(i) < 32.0 * cut)
      fail(Errc::indeterminate_rank, "guarded_kernel: singular value " + std::to_string(sv(i)) +
                                         " lies in the guard band around " + std::to_string(cut));
    if (sv(i) > cut) ++ks.rank;
  }
  ks.kernel = svd.matrixV().rightCols(n - ks.rank);
  return ks;
}

// g-orthogonal projector onto the span of euclidean-orthonormal columns.
Eigen::MatrixXd g_projector(const Eigen::MatrixXd& k, const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(g.rows());
  if (k.cols() == 0) return Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd gram = k.transpose() * g * k;
  return k * gram.llt().solve(k.transpose() * g);
}

// Column i of a projector field as a vector field with first partials.
Vec1 projected_axis(const Mat1& proj, int i) {
  const int d = static_cast<int>(proj.v.rows());
  Vec1 f;
  f.v = proj.v.col(i);
  f.jac.resize(d, d);
  for (int k = 0; k < d; ++k) f.jac.col(k) = proj.partial[k].col(i);
  return f;
}

}  // namespace

ContactPoint contact_point(const ChartedManifold& m, const Eigen::VectorXd& p) {
  ContactPoint pt;
  pt.p = p;
  pt.d = m.dim;

  ChristoffelAt ch = christoffel_at(m, p);  // includes the SPD metric check
  pt.gamma = std::move(ch.gamma);

  JetVec u = chart_vars(m, p);
  JetMatrix gj = m.g(u);
  pt.g = to_mat1(gj);
  pt.g_inv.v = ch.g_inv;
  pt.g_inv.partial.resize(m.dim);
  for (int k = 0; k < m.dim; ++k)
    pt.g_inv.partial[k] = -ch.g_inv * pt.g.partial[k] * ch.g_inv;

  for (int a = 0; a < 3; ++a) {
    pt.phi[a] = to_mat1(m.phi[a](u));
    JetVec xj = m.xi[a](u);
    pt.xi[a] = to_vec1(xj);
    JetVec ej = matvec(gj, xj);
    pt.eta[a] = to_vec1(ej);

    Mat1& da = pt.deta[a];
    da.v.resize(pt.d, pt.d);
    da.partial.assign(pt.d, Eigen::MatrixXd(pt.d, pt.d));
    for (int i = 0; i < pt.d; ++i)
      for (int j = 0; j < pt.d; ++j) {
        da.v(i, j) = ej[j].grad()(i) - ej[i].grad()(j);
        for (int k = 0; k < pt.d; ++k)
          da.partial[k](i, j) = ej[j].hess()(k, i) - ej[i].hess()(k, j);
      }
  }
  return pt;
}

ResidualStat structure_residual(const ContactPoint& pt) {
  ResidualStat r;
  const int d = pt.d;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd& g = pt.g.v;

  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXd& ph = pt.phi[a].v;
    const Eigen::VectorXd& x = pt.xi[a].v;
    const Eigen::VectorXd& e = pt.eta[a].v;

    for (int b = 0; b < 3; ++b) {
      double val = e.dot(pt.xi[b].v);
      r.add(std::abs(val - (a == b ? 1.0 : 0.0)), std::max(1.0, std::abs(val)));
    }
    r.add(vabs(ph * x), mabs(ph) * vabs(x));
    r.add(vabs(ph.transpose() * e), mabs(ph) * vabs(e));

    Eigen::MatrixXd sq = ph * ph;
    Eigen::MatrixXd sq_ref = -id + x * e.transpose();
    r.add(mabs(sq - sq_ref), std::max(mabs(sq), mabs(sq_ref)));

    Eigen::MatrixXd compat = ph.transpose() * g * ph;
    Eigen::MatrixXd compat_ref = g - e * e.transpose();
    r.add(mabs(compat - compat_ref), std::max(mabs(compat), mabs(compat_ref)));

    Eigen::MatrixXd fund = g * ph;
    r.add(mabs(fund + fund.transpose()), mabs(fund));
  }

  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    const Eigen::MatrixXd &pa = pt.phi[a].v, &pb = pt.phi[b].v, &pc = pt.phi[c].v;
    const Eigen::VectorXd &xa = pt.xi[a].v, &xb = pt.xi[b].v, &xc = pt.xi[c].v;
    const Eigen::VectorXd &ea = pt.eta[a].v, &eb = pt.eta[b].v, &ec = pt.eta[c].v;

    Eigen::MatrixXd lhs = pa * pb;
    Eigen::MatrixXd rhs = pc + xa * eb.transpose();
    r.add(mabs(lhs - rhs), std::max(mabs(lhs), mabs(rhs)));
    lhs = pb * pa;
    rhs = -pc + xb * ea.transpose();
    r.add(mabs(lhs - rhs), std::max(mabs(lhs), mabs(rhs)));

    r.add(vabs(pa * xb - xc), std::max(vabs(xb), vabs(xc)));
    r.add(vabs(pb * xa + xc), std::max(vabs(xa), vabs(xc)));
    r.add(vabs(pb.transpose() * ea - ec), std::max(vabs(ea), vabs(ec)));
    r.add(vabs(pa.transpose() * eb + ec), std::max(vabs(eb), vabs(ec)));
  }
  return r;
}

ResidualStat normality_residual(const ContactPoint& pt, int alpha, Sampler& s, int trials) {
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x = s.gaussian(pt.d), y = s.gaussian(pt.d);
    Eigen::VectorXd n = nijenhuis(pt.phi[alpha], x, y);
    double da = x.dot(pt.deta[alpha].v * y);
    Eigen::VectorXd res = n + da * pt.xi[alpha].v;
    r.add(vabs(res), std::max(vabs(n), std::abs(da) * vabs(pt.xi[alpha].v)));
  }
  return r;
}

ResidualStat dfund_closed_residual(const ContactPoint& pt, int alpha) {
  Mat1 fund = mat1_mul(pt.g, pt.phi[alpha]);
  AltForm df = d_form(fund);
  double scale = 0.0;
  for (const Eigen::MatrixXd& pk : fund.partial) scale = std::max(scale, mabs(pk));
  ResidualStat r;
  r.add(df.max_abs(), scale);
  return r;
}

int rank_at(const ContactPoint& pt, int alpha, double tol) {
  return skew_spectrum(pt.deta[alpha].v, tol).rank + 1;
}

int rank_via_forms(const ContactPoint& pt, int alpha, double tol) {
  AltForm acc = AltForm::from_covector(pt.eta[alpha].v);
  AltForm da = AltForm::from_skew_matrix(pt.deta[alpha].v);
  const double da_scale = std::max(1.0, da.max_abs());
  int k = 0;
  while (acc.degree() + 2 <= pt.d) {
    AltForm nxt = wedge(acc, da);
    if (nxt.max_abs() <= tol * std::max(1.0, acc.max_abs()) * da_scale) break;
    acc = nxt;
    ++k;
  }
  return 2 * k + 1;
}

double reeb_constant_at(const ContactPoint& pt, double tol) {
  double coef[3];
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    Eigen::VectorXd br = lie_bracket(pt.xi[a], pt.xi[b]);
    double comp[3];
    Eigen::VectorXd rest = br;
    for (int e = 0; e < 3; ++e) {
      comp[e] = pt.eta[e].v.dot(br);
      rest -= comp[e] * pt.xi[e].v;
    }
    const double bscale = std::max(1.0, vabs(br));
    if (vabs(rest) > tol * bscale)
      fail(Errc::not_3qs, "reeb_constant: bracket of Reeb fields " + std::to_string(a) + "," +
                              std::to_string(b) + " leaves the Reeb span by " +
                              std::to_string(vabs(rest)));
    if (std::abs(comp[a]) > tol * bscale || std::abs(comp[b]) > tol * bscale)
      fail(Errc::not_3qs, "reeb_constant: bracket of Reeb fields " + std::to_string(a) + "," +
                              std::to_string(b) + " is not aligned with the third field");
    coef[a] = comp[c];
  }
  double mean = (coef[0] + coef[1] + coef[2]) / 3.0;
  for (double cf : coef)
    if (std::abs(cf - mean) > tol * std::max(1.0, std::abs(mean)))
      fail(Errc::not_3qs, "reeb_constant: cyclic bracket coefficients disagree");
  return mean;
}

double reeb_constant(const ChartedManifold& m, const std::vector<Eigen::VectorXd>& pts,
                     double tol) {
  if (pts.empty()) fail(Errc::invalid_argument, "reeb_constant: no sample points");
  double sum = 0.0;
  double first = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    double c = reeb_constant_at(contact_point(m, pts[i]), tol);
    if (i == 0)
      first = c;
    else if (std::abs(c - first) > tol * std::max(1.0, std::abs(first)))
      fail(Errc::not_3qs, "reeb_constant: transverse constant varies across sample points");
    sum += c;
  }
  return sum / static_cast<double>(pts.size());
}

SplitEval split_eval(const ContactPoint& pt, double tol) {
  const int d = pt.d;
  Eigen::MatrixXd stack(3 * d + 3, d);
  for (int a = 0; a < 3; ++a) {
    stack.middleRows(a * d, d) = pt.deta[a].v;
    stack.row(3 * d + a) = pt.eta[a].v.transpose();
  }
  KernelSplit ks = guarded_kernel(stack, tol);
  const int kdim = d - ks.rank;
  if (kdim % 4 != 0)
    fail(Errc::structure_defect,
         "split_eval: common kernel dimension " + std::to_string(kdim) + " is not a multiple of 4");

  SplitEval se;
  se.m = kdim / 4;
  se.l = (d - 3 - kdim) / 4;
  se.p_e4m = g_projector(ks.kernel, pt.g.v);
  se.p_e4l3 = Eigen::MatrixXd::Identity(d, d) - se.p_e4m;

  double num = 0.0, den = 0.0;
  for (int a = 0; a < 3; ++a) {
    se.psi[a] = pt.phi[a].v * se.p_e4l3;
    se.theta[a] = pt.phi[a].v * se.p_e4m;
    Eigen::MatrixXd big_psi = pt.g.v * se.psi[a];
    num += (pt.deta[a].v.cwiseProduct(big_psi)).sum();
    den += big_psi.squaredNorm();
  }
  se.c = num / den;
  return se;
}

ResidualStat split_projector_residual(const ContactPoint& pt, const SplitEval& se) {
  ResidualStat r;
  const Eigen::MatrixXd& g = pt.g.v;
  for (const Eigen::MatrixXd* proj : {&se.p_e4m, &se.p_e4l3}) {
    const Eigen::MatrixXd& p = *proj;
    r.add(mabs(p * p - p), std::max(1.0, mabs(p)));
    Eigen::MatrixXd gp = g * p;
    r.add(mabs(gp - gp.transpose()), std::max(1.0, mabs(gp)));
  }
  double tr = se.p_e4m.trace();
  r.add(std::abs(tr - 4.0 * se.m), std::max(1.0, std::abs(tr)));

  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXd& ph = pt.phi[a].v;
    r.add(mabs(ph * se.p_e4m - se.p_e4m * ph), mabs(ph) * std::max(1.0, mabs(se.p_e4m)));
    r.add(mabs(se.psi[a] * se.p_e4m), std::max(1.0, mabs(se.psi[a])));
    r.add(mabs(se.theta[a] * se.p_e4l3), std::max(1.0, mabs(se.theta[a])));
    r.add(vabs(se.p_e4m * pt.xi[a].v), std::max(1.0, vabs(pt.xi[a].v)));
  }
  return r;
}

DerivedFields derived_fields(const ContactPoint& pt, double c_zero_tol) {
  DerivedFields df;
  df.c = reeb_constant_at(pt);
  const int d = pt.d;

  df.p_v = outer1(pt.xi[0], pt.eta[0]);
  for (int a = 1; a < 3; ++a) df.p_v = mat1_add(df.p_v, outer1(pt.xi[a], pt.eta[a]));

  if (std::abs(df.c) < c_zero_tol) {
    df.c = 0.0;
    df.p_e4l3 = df.p_v;
  } else {
    Mat1 sum_sq = Mat1::zero(d);
    for (int a = 0; a < 3; ++a) {
      Mat1 psi_c = mat1_scale(mat1_mul(pt.g_inv, pt.deta[a]), 1.0 / df.c);
      sum_sq = mat1_add(sum_sq, mat1_mul(psi_c, psi_c));
    }
    Mat1 p_e4l = mat1_scale(mat1_add(sum_sq, mat1_scale(df.p_v, 2.0)), -1.0 / 3.0);
    df.p_e4l3 = mat1_add(p_e4l, df.p_v);
  }
  df.p_e4m = mat1_sub(Mat1::identity(d), df.p_e4l3);
  for (int a = 0; a < 3; ++a) {
    df.psi[a] = mat1_mul(pt.phi[a], df.p_e4l3);
    df.theta[a] = mat1_sub(pt.phi[a], df.psi[a]);
    df.psi_sq[a] = mat1_mul(df.psi[a], df.psi[a]);
  }
  return df;
}

ResidualStat split_route_residual(const SplitEval& se, const DerivedFields& df) {
  ResidualStat r;
  r.add(mabs(se.p_e4m - df.p_e4m.v), std::max(1.0, mabs(se.p_e4m)));
  r.add(std::abs(se.c - df.c), std::max(1.0, std::abs(se.c)));
  return r;
}

ResidualStat foliation_residual(const ContactPoint& pt, const DerivedFields& df) {
  ResidualStat r;
  const int d = pt.d;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  for (const Mat1* proj : {&df.p_e4m, &df.p_e4l3}) {
    Eigen::MatrixXd leak_out = id - proj->v;
    std::vector<Vec1> fields;
    fields.reserve(d);
    for (int i = 0; i < d; ++i) fields.push_back(projected_axis(*proj, i));

    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Eigen::VectorXd br = lie_bracket(fields[i], fields[j]);
        r.add(vabs(leak_out * br), vabs(br));
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Eigen::VectorXd cd = cov_deriv_vector(pt.gamma, fields[j], fields[i].v);
        r.add(vabs(leak_out * cd), vabs(cd));
      }
  }
  return r;
}

}  // namespace qs3
