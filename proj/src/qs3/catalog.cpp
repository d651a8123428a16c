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

#include "qs3/catalog.hpp"

#include <cmath>
#include <sstream>

#include "qs3/geometry.hpp"

namespace qs3 {

namespace {

Eigen::Matrix4d from_rows(std::initializer_list<double> v) {
  Eigen::Matrix4d m;
  int k = 0;
  for (double x : v) {
    m(k / 4, k % 4) = x;
    ++k;
  }
  return m;
}

}  // namespace

Eigen::Matrix4d quat_right(int alpha) {
  // (a, b, c, d) q for q = i, j, k.
  switch (alpha) {
    case 0:
      return from_rows({0, -1, 0, 0,
                        1, 0, 0, 0,
                        0, 0, 0, 1,
                        0, 0, -1, 0});
    case 1:
      return from_rows({0, 0, -1, 0,
                        0, 0, 0, -1,
                        1, 0, 0, 0,
                        0, 1, 0, 0});
    case 2:
      return from_rows({0, 0, 0, -1,
                        0, 0, 1, 0,
                        0, -1, 0, 0,
                        1, 0, 0, 0});
  }
  fail(Errc::invalid_argument, "quat_right: alpha out of range");
}

Eigen::Matrix4d quat_left(int alpha) {
  // q (a, b, c, d) for q = i, j, k.
  switch (alpha) {
    case 0:
      return from_rows({0, -1, 0, 0,
                        1, 0, 0, 0,
                        0, 0, 0, -1,
                        0, 0, 1, 0});
    case 1:
      return from_rows({0, 0, -1, 0,
                        0, 0, 0, 1,
                        1, 0, 0, 0,
                        0, -1, 0, 0});
    case 2:
      return from_rows({0, 0, 0, -1,
                        0, 0, -1, 0,
                        0, 1, 0, 0,
                        1, 0, 0, 0});
  }
  fail(Errc::invalid_argument, "quat_left: alpha out of range");
}

Eigen::Matrix3d reeb_rot(int alpha) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  switch (alpha) {
    case 0:
      m(1, 2) = -1;
      m(2, 1) = 1;
      return m;
    case 1:
      m(0, 2) = 1;
      m(2, 0) = -1;
      return m;
    case 2:
      m(0, 1) = -1;
      m(1, 0) = 1;
      return m;
  }
  fail(Errc::invalid_argument, "reeb_rot: alpha out of range");
}

ChartedManifold flat_cosymplectic(int n) {
  if (n < 1) fail(Errc::invalid_argument, "flat_cosymplectic: n must be positive");
  const int d = 4 * n + 3;
  ChartedManifold m;
  m.name = "flat" + std::to_string(d);
  m.dim = d;
  m.domain_radius = 10.0;

  m.g = [d](const JetVec&) { return JetMatrix::identity(d, d); };
  for (int a = 0; a < 3; ++a) {
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b < n; ++b) phi.block<4, 4>(4 * b, 4 * b) = quat_left(a);
    phi.block<3, 3>(4 * n, 4 * n) = reeb_rot(a);
    m.phi[a] = [phi, d](const JetVec&) { return JetMatrix::constant(phi, d); };

    Eigen::VectorXd xi = Eigen::VectorXd::Zero(d);
    xi(4 * n + a) = 1.0;
    m.xi[a] = [xi, d](const JetVec&) {
      JetVec r(d);
      for (int i = 0; i < d; ++i) r[i] = jet_const(xi(i), d);
      return r;
    };
  }
  return m;
}

namespace {

// Ambient data of the inverse stereographic chart of the unit sphere
// S^{D-1}: position jets x(u) and the D x d Jacobian jets.
struct SphereChart {
  JetVec x;    // D entries
  JetMatrix jac;  // D x d
};

SphereChart sphere_chart(const JetVec& u) {
  const int d = static_cast<int>(u.size());
  const int D = d + 1;
  // Product charts hand in jets whose gradient dimension exceeds the number
  // of sphere variables, so accumulators take their shape from the entries.
  Jet2 r2(0.0, u.empty() ? 0 : u[0].dim());
  for (const Jet2& ui : u) r2 += ui * ui;
  Jet2 w = recip(1.0 + r2);

  SphereChart s;
  s.x.resize(D);
  for (int mm = 0; mm < d; ++mm) s.x[mm] = 2.0 * u[mm] * w;
  s.x[d] = 2.0 * w - 1.0;

  JetVec dw(d);
  Jet2 w2 = w * w;
  for (int j = 0; j < d; ++j) dw[j] = -2.0 * u[j] * w2;

  s.jac = JetMatrix(D, d);
  for (int mm = 0; mm < d; ++mm)
    for (int j = 0; j < d; ++j) {
      Jet2 e = 2.0 * u[mm] * dw[j];
      if (mm == j) e += 2.0 * w;
      s.jac(mm, j) = e;
    }
  for (int j = 0; j < d; ++j) s.jac(d, j) = 2.0 * dw[j];
  return s;
}

Eigen::MatrixXd ambient_right(int alpha, int D) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(D, D);
  for (int b = 0; b < D / 4; ++b) r.block<4, 4>(4 * b, 4 * b) = quat_right(alpha);
  return r;
}

// dEta matrix (A)_ij = d_i eta_j - d_j eta_i from the first partials of a
// covector jet field.
Eigen::MatrixXd deta_matrix(const JetVec& eta) {
  const int d = static_cast<int>(eta.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = eta[j].grad()(i) - eta[i].grad()(j);
  return a;
}

// Orientation probe: the Reeb bracket [xi_1, xi_2] must point along +xi_3 and
// each dEta_a must equal twice the fundamental two-form of phi_a.  A reversed
// triple is repaired by swapping the second and third structures.
void sphere_self_check(ChartedManifold& m) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(m.dim);
  p(0) = 0.11;
  p(1) = -0.07;
  if (m.dim > 4) p(4) = 0.05;

  auto bracket_sign = [&]() {
    JetVec u = chart_vars(m, p);
    JetMatrix g = m.g(u);
    Eigen::MatrixXd gv = g.values();
    Vec1 x1 = to_vec1(m.xi[0](u)), x2 = to_vec1(m.xi[1](u)), x3 = to_vec1(m.xi[2](u));
    Eigen::VectorXd br = lie_bracket(x1, x2);
    return br.dot(gv * x3.v) / x3.v.dot(gv * x3.v);
  };

  double s = bracket_sign();
  if (std::abs(s + 2.0) < 1e-6) {
    std::swap(m.phi[1], m.phi[2]);
    std::swap(m.xi[1], m.xi[2]);
    s = bracket_sign();
  }
  if (std::abs(s - 2.0) > 1e-6)
    fail(Errc::structure_defect, m.name + ": Reeb bracket orientation probe returned " + std::to_string(s));

  JetVec u = chart_vars(m, p);
  JetMatrix g = m.g(u);
  for (int a = 0; a < 3; ++a) {
    JetVec eta = matvec(g, m.xi[a](u));
    Eigen::MatrixXd da = deta_matrix(eta);
    Eigen::MatrixXd fund = g.values() * to_mat1(m.phi[a](u)).v;
    double resid = (da - 2.0 * fund).cwiseAbs().maxCoeff();
    if (resid > 1e-8 * std::max(1.0, fund.cwiseAbs().maxCoeff()))
      fail(Errc::structure_defect,
           m.name + ": dEta differs from twice the fundamental form by " + std::to_string(resid));
  }
}

}  // namespace

ChartedManifold sphere_3sasakian(int n) {
  if (n < 1) fail(Errc::invalid_argument, "sphere_3sasakian: n must be positive");
  const int d = 4 * n + 3;
  const int D = d + 1;
  ChartedManifold m;
  m.name = "sphere" + std::to_string(d);
  m.dim = d;
  m.domain_radius = 2.0;

  m.g = [](const JetVec& u) {
    SphereChart s = sphere_chart(u);
    return matmul(transpose(s.jac), s.jac);
  };
  for (int a = 0; a < 3; ++a) {
    Eigen::MatrixXd r = ambient_right(a, D);
    m.xi[a] = [r](const JetVec& u) {
      SphereChart s = sphere_chart(u);
      const int D_ = static_cast<int>(s.x.size());
      JetVec amb(D_);
      const int jd = s.x[0].dim();
      for (int i = 0; i < D_; ++i) {
        Jet2 acc(0.0, jd);
        for (int j = 0; j < D_; ++j)
          if (r(i, j) != 0.0) acc += r(i, j) * s.x[j];
        amb[i] = acc;
      }
      JetMatrix g = matmul(transpose(s.jac), s.jac);
      return jet_solve(g, matvec(transpose(s.jac), amb));
    };
    m.phi[a] = [r](const JetVec& u) {
      SphereChart s = sphere_chart(u);
      const int D_ = static_cast<int>(s.x.size());
      const int d_ = static_cast<int>(u.size());
      // Ambient action -R_a on tangent vectors, projected back to the sphere:
      // M' = M - x (x^T M) with M = -R_a J, then solve G phihat = J^T M'.
      JetMatrix mm = matmul(JetMatrix::constant(-r, 0), s.jac);
      JetVec xt(d_);
      const int jd = s.x[0].dim();
      for (int j = 0; j < d_; ++j) {
        Jet2 acc(0.0, jd);
        for (int i = 0; i < D_; ++i) acc += s.x[i] * mm(i, j);
        xt[j] = acc;
      }
      JetMatrix mp(D_, d_);
      for (int i = 0; i < D_; ++i)
        for (int j = 0; j < d_; ++j) mp(i, j) = mm(i, j) - s.x[i] * xt[j];
      JetMatrix g = matmul(transpose(s.jac), s.jac);
      return jet_solve(g, matmul(transpose(s.jac), mp));
    };
  }
  sphere_self_check(m);
  return m;
}

ChartedManifold homothety(const ChartedManifold& base, double factor, const std::string& name) {
  if (!(factor > 0.0)) fail(Errc::invalid_argument, "homothety: factor must be positive");
  ChartedManifold m = base;
  m.name = name;
  const double root = std::sqrt(factor);
  auto g0 = base.g;
  m.g = [g0, factor](const JetVec& u) { return jet_scale(g0(u), factor); };
  for (int a = 0; a < 3; ++a) {
    auto xi0 = base.xi[a];
    m.xi[a] = [xi0, root](const JetVec& u) { return jet_scale(xi0(u), 1.0 / root); };
  }
  return m;
}

ChartedManifold product_3qs(int l, int m_factor) {
  if (l < 1 || m_factor < 1) fail(Errc::invalid_argument, "product_3qs: factors must be positive");
  ChartedManifold sph = sphere_3sasakian(l);
  const int ds = sph.dim;
  const int df = 4 * m_factor;
  const int d = ds + df;

  ChartedManifold m;
  m.name = "product" + std::to_string(d);
  m.dim = d;
  m.domain_radius = sph.domain_radius;

  auto split = [ds](const JetVec& u) {
    // Sphere-factor jets keep the full chart dimension so block assembly
    // needs no promotion.
    return JetVec(u.begin(), u.begin() + ds);
  };
  auto sg = sph.g;
  m.g = [sg, split, ds, df, d](const JetVec& u) {
    JetMatrix gs = sg(split(u));
    JetMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = jet_const(i == j && i >= ds ? 1.0 : 0.0, d);
    for (int i = 0; i < ds; ++i)
      for (int j = 0; j < ds; ++j) g(i, j) = gs(i, j);
    return g;
  };
  for (int a = 0; a < 3; ++a) {
    auto sphi = sph.phi[a];
    auto sxi = sph.xi[a];
    Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(df, df);
    for (int b = 0; b < m_factor; ++b) flat.block<4, 4>(4 * b, 4 * b) = quat_left(a);
    m.phi[a] = [sphi, split, flat, ds, df, d](const JetVec& u) {
      JetMatrix ps = sphi(split(u));
      JetMatrix p(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(i, j) = jet_const(0.0, d);
      for (int i = 0; i < ds; ++i)
        for (int j = 0; j < ds; ++j) p(i, j) = ps(i, j);
      for (int i = 0; i < df; ++i)
        for (int j = 0; j < df; ++j)
          if (flat(i, j) != 0.0) p(ds + i, ds + j) = jet_const(flat(i, j), d);
      return p;
    };
    m.xi[a] = [sxi, split, ds, d](const JetVec& u) {
      JetVec xs = sxi(split(u));
      JetVec x(d);
      for (int i = 0; i < d; ++i) x[i] = jet_const(0.0, d);
      for (int i = 0; i < ds; ++i) x[i] = xs[i];
      return x;
    };
  }
  return m;
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"flat7", 7, "flat cosymplectic model on R^7, rank 1"},
      {"flat11", 11, "flat cosymplectic model on R^11, rank 1"},
      {"sphere7", 7, "round S^7, 3-Sasakian, transverse constant 2"},
      {"sphere11", 11, "round S^11, 3-Sasakian, transverse constant 2"},
      {"csasakian7:c=<value>", 7, "rescaled S^7 with transverse constant <value>"},
      {"product11", 11, "S^7 x H with flat quaternionic factor, rank 7"},
  };
}

ChartedManifold catalog_open(const std::string& name) {
  if (name == "flat7") return flat_cosymplectic(1);
  if (name == "flat11") return flat_cosymplectic(2);
  if (name == "sphere7") return sphere_3sasakian(1);
  if (name == "sphere11") return sphere_3sasakian(2);
  if (name == "product11") return product_3qs(1, 1);
  const std::string prefix = "csasakian7:c=";
  if (name.rfind(prefix, 0) == 0) {
    std::istringstream is(name.substr(prefix.size()));
    double c = 0.0;
    if (!(is >> c) || !is.eof() || !(c > 0.0) || !std::isfinite(c))
      fail(Errc::invalid_argument, "catalog_open: bad transverse constant in '" + name + "'");
    return homothety(sphere_3sasakian(1), 4.0 / (c * c), name);
  }
  fail(Errc::invalid_argument, "catalog_open: unknown catalog member '" + name + "'");
}

}  // namespace qs3
