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

#include "qs3/identities.hpp"

#include <algorithm>
#include <cmath>

namespace qs3 {

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
double inf_norm(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Psi_a(X, Y) = g(X, psi_a Y).
double psi_form(const Eigen::MatrixXd& g, const Eigen::MatrixXd& psi, const Eigen::VectorXd& x,
                const Eigen::VectorXd& y) {
  return x.dot(g * (psi * y));
}

// Projector onto the g-orthogonal complement of the Reeb distribution.
Eigen::MatrixXd horizontal_projector(const IdentityContext& cx) {
  return Eigen::MatrixXd::Identity(cx.pt.d, cx.pt.d) - cx.df.p_v.v;
}

Eigen::MatrixXd rank_block_projector(const IdentityContext& cx) {
  return cx.df.p_e4l3.v - cx.df.p_v.v;
}

}  // namespace

IdentityContext identity_context(const ChartedManifold& m, const Eigen::VectorXd& p) {
  IdentityContext cx;
  cx.pt = contact_point(m, p);
  cx.geo = riemann_at(m, p);
  cx.df = derived_fields(cx.pt);
  cx.se = split_eval(cx.pt);
  return cx;
}

ResidualStat sym_psi_sq_residual(const IdentityContext& cx, int alpha) {
  const Eigen::MatrixXd s = cx.pt.g.v * cx.df.psi_sq[alpha].v;
  ResidualStat r;
  r.add(inf_norm(Eigen::MatrixXd(s - s.transpose())), inf_norm(s));
  return r;
}

ResidualStat psi_cube_residual(const IdentityContext& cx, int alpha) {
  const Eigen::MatrixXd& psi = cx.df.psi[alpha].v;
  const Eigen::MatrixXd cube = psi * cx.df.psi_sq[alpha].v;
  ResidualStat r;
  r.add(inf_norm(Eigen::MatrixXd(cube + psi)), std::max(inf_norm(cube), inf_norm(psi)));
  return r;
}

ResidualStat nabla_eta_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const double lhs = y.dot(cov_deriv_covector(cx.pt.gamma, cx.pt.eta[alpha], x));
    const double rhs = 0.5 * cx.df.c * psi_form(cx.pt.g.v, cx.df.psi[alpha].v, x, y);
    r.add(std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs)));
  }
  return r;
}

ResidualStat deta_c_psi_residual(const IdentityContext& cx, int alpha) {
  // The transverse operator here comes from the kernel-splitting route and
  // the constant from Reeb brackets, so neither side is read off the other.
  const Eigen::MatrixXd rhs = cx.se.c * (cx.pt.g.v * cx.se.psi[alpha]);
  ResidualStat r;
  r.add(inf_norm(Eigen::MatrixXd(cx.pt.deta[alpha].v - rhs)),
        std::max(inf_norm(cx.pt.deta[alpha].v), inf_norm(rhs)));
  return r;
}

ResidualStat nabla_xi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd lhs = cov_deriv_vector(cx.pt.gamma, cx.pt.xi[alpha], x);
    const Eigen::VectorXd rhs = -0.5 * cx.df.c * (cx.df.psi[alpha].v * x);
    r.add(inf_norm(Eigen::VectorXd(lhs - rhs)), std::max(inf_norm(lhs), inf_norm(rhs)));
  }
  return r;
}

ResidualStat nabla_psi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const double half_c = 0.5 * cx.df.c;
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd lhs = cov_deriv_tensor11(cx.pt.gamma, cx.df.psi[alpha], x) * y;
    const Eigen::VectorXd p2x = cx.df.psi_sq[alpha].v * x;
    const Eigen::VectorXd term1 = cx.pt.eta[alpha].v.dot(y) * p2x;
    const Eigen::VectorXd term2 = p2x.dot(cx.pt.g.v * y) * cx.pt.xi[alpha].v;
    const Eigen::VectorXd rhs = half_c * (term1 - term2);
    const double scale = std::max({inf_norm(lhs), std::abs(half_c) * inf_norm(term1),
                                   std::abs(half_c) * inf_norm(term2)});
    r.add(inf_norm(Eigen::VectorXd(lhs - rhs)), scale);
  }
  return r;
}

ResidualStat nabla_psi_sq_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const double half_c = 0.5 * cx.df.c;
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd lhs = cov_deriv_tensor11(cx.pt.gamma, cx.df.psi_sq[alpha], x) * y;
    const Eigen::VectorXd term1 =
        psi_form(cx.pt.g.v, cx.df.psi[alpha].v, x, y) * cx.pt.xi[alpha].v;
    const Eigen::VectorXd term2 = cx.pt.eta[alpha].v.dot(y) * (cx.df.psi[alpha].v * x);
    const Eigen::VectorXd rhs = half_c * (term1 - term2);
    const double scale = std::max({inf_norm(lhs), std::abs(half_c) * inf_norm(term1),
                                   std::abs(half_c) * inf_norm(term2)});
    r.add(inf_norm(Eigen::VectorXd(lhs - rhs)), scale);
  }
  return r;
}

ResidualStat r_xi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd lhs = cx.geo.curv(x, y, cx.pt.xi[alpha].v);
    const Eigen::VectorXd term1 = cx.pt.eta[alpha].v.dot(x) * (cx.df.psi_sq[alpha].v * y);
    const Eigen::VectorXd term2 = cx.pt.eta[alpha].v.dot(y) * (cx.df.psi_sq[alpha].v * x);
    const Eigen::VectorXd rhs = q * (term1 - term2);
    const double scale =
        std::max({inf_norm(lhs), q * inf_norm(term1), q * inf_norm(term2)});
    r.add(inf_norm(Eigen::VectorXd(lhs - rhs)), scale);
  }
  return r;
}

ResidualStat r_phi_commute_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd& phi = cx.pt.phi[alpha].v;
  const Eigen::MatrixXd& psi = cx.df.psi[alpha].v;
  const Eigen::MatrixXd& psi2 = cx.df.psi_sq[alpha].v;
  const Eigen::VectorXd& eta = cx.pt.eta[alpha].v;
  const Eigen::VectorXd& xi = cx.pt.xi[alpha].v;
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd z = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd lhs =
        cx.geo.curv(x, y, phi * z) - phi * cx.geo.curv(x, y, z);
    const Eigen::VectorXd pz = psi * z;
    const double ex = eta.dot(x), ey = eta.dot(y), ez = eta.dot(z);
    const double pyz = psi_form(g, psi, y, z), pxz = psi_form(g, psi, x, z);
    const Eigen::VectorXd t1 = (psi_form(g, psi, y, pz) - ey * ez) * (psi * x);
    const Eigen::VectorXd t2 = (psi_form(g, psi, x, pz) - ex * ez) * (psi * y);
    const Eigen::VectorXd t3 = pyz * (psi2 * x);
    const Eigen::VectorXd t4 = pxz * (psi2 * y);
    const Eigen::VectorXd t5 = (ex * pyz - ey * pxz) * xi;
    const Eigen::VectorXd rhs = q * (t1 - t2 - t3 + t4 + t5);
    double scale = inf_norm(lhs);
    for (const Eigen::VectorXd* term : {&t1, &t2, &t3, &t4, &t5})
      scale = std::max(scale, q * inf_norm(*term));
    r.add(inf_norm(Eigen::VectorXd(lhs - rhs)), scale);
  }
  return r;
}

namespace {

// The quadratic form paired with g(R(X,Y) phi Z, W) + g(R(X,Y) Z, phi W).
// Returns the value and the largest magnitude among its eight terms.
std::pair<double, double> p_form(const IdentityContext& cx, int alpha, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& w) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd& psi = cx.df.psi[alpha].v;
  const Eigen::VectorXd& eta = cx.pt.eta[alpha].v;
  const Eigen::VectorXd pz = psi * z, pw = psi * w;
  const double ex = eta.dot(x), ey = eta.dot(y), ez = eta.dot(z), ew = eta.dot(w);
  const double terms[8] = {
      psi_form(g, psi, y, z) * psi_form(g, psi, x, pw),
      -psi_form(g, psi, x, z) * psi_form(g, psi, y, pw),
      psi_form(g, psi, y, pz) * psi_form(g, psi, x, w),
      -psi_form(g, psi, x, pz) * psi_form(g, psi, y, w),
      -ex * ew * psi_form(g, psi, y, z),
      -ey * ez * psi_form(g, psi, x, w),
      ey * ew * psi_form(g, psi, x, z),
      ex * ez * psi_form(g, psi, y, w),
  };
  double value = 0.0, biggest = 0.0;
  for (double term : terms) {
    value += term;
    biggest = std::max(biggest, std::abs(term));
  }
  return {q * value, q * biggest};
}

}  // namespace

ResidualStat p_identity_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const Eigen::MatrixXd& phi = cx.pt.phi[alpha].v;
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd y = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd z = s.g_unit(cx.pt.g.v);
    const Eigen::VectorXd w = s.g_unit(cx.pt.g.v);
    const double lhs = cx.geo.riem4(x, y, phi * z, w) + cx.geo.riem4(x, y, z, phi * w);
    const auto [p, p_scale] = p_form(cx, alpha, x, y, z, w);
    r.add(std::abs(lhs + p), std::max(std::abs(lhs), p_scale));
    // The form must inherit the antisymmetry of the curvature pair (X, Y).
    const auto [p_swapped, swap_scale] = p_form(cx, alpha, y, x, z, w);
    r.add(std::abs(p + p_swapped), std::max(p_scale, swap_scale));
  }
  return r;
}

ResidualStat phi4_check(const IdentityContext& cx, int alpha, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& w) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd& phi = cx.pt.phi[alpha].v;
  const Eigen::MatrixXd& psi = cx.df.psi[alpha].v;
  for (const Eigen::VectorXd* arg : {&x, &y, &z, &w}) {
    const Eigen::VectorXd rest = cx.df.p_v.v * *arg;
    if (std::sqrt(rest.dot(g * rest)) > 1e-10 * std::max(1.0, std::sqrt(arg->dot(g * *arg))))
      throw Error(Errc::invalid_argument, "phi4_check: argument has a Reeb component");
  }
  const double lhs = cx.geo.riem4(phi * x, phi * y, phi * z, phi * w);
  const double plain = cx.geo.riem4(x, y, z, w);
  const double terms[4] = {
      psi_form(g, psi, z, x) * psi_form(g, psi, w, psi * (phi * y)),
      psi_form(g, psi, z, psi * x) * psi_form(g, psi, w, phi * y),
      psi_form(g, psi, phi * x, z) * psi_form(g, psi, phi * y, psi * (phi * w)),
      psi_form(g, psi, phi * x, psi * z) * psi_form(g, psi, phi * y, phi * w),
  };
  double corr = 0.0, scale = std::max(std::abs(lhs), std::abs(plain));
  for (double term : terms) {
    corr += term;
    scale = std::max(scale, q * std::abs(term));
  }
  ResidualStat r;
  r.add(std::abs(lhs - plain - q * corr), scale);
  return r;
}

ResidualStat phi4_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const Eigen::MatrixXd ph = horizontal_projector(cx);
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit_projected(cx.pt.g.v, ph);
    const Eigen::VectorXd y = s.g_unit_projected(cx.pt.g.v, ph);
    const Eigen::VectorXd z = s.g_unit_projected(cx.pt.g.v, ph);
    const Eigen::VectorXd w = s.g_unit_projected(cx.pt.g.v, ph);
    r.merge(phi4_check(cx, alpha, x, y, z, w));
  }
  return r;
}

namespace {

// Validates horizontality, then renormalizes exactly (guarding rounding
// drift, not caller mistakes).
Eigen::VectorXd unit_horizontal(const IdentityContext& cx, const Eigen::VectorXd& x,
                                const char* who) {
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const double norm = std::sqrt(x.dot(g * x));
  if (norm < 1e-12) throw Error(Errc::degenerate_input, std::string(who) + ": zero direction");
  const Eigen::VectorXd rest = cx.df.p_v.v * x;
  if (std::sqrt(rest.dot(g * rest)) > 1e-8 * norm)
    throw Error(Errc::invalid_argument, std::string(who) + ": direction has a Reeb component");
  return x / norm;
}

}  // namespace

double phi_sectional(const IdentityContext& cx, const Eigen::VectorXd& x, int alpha) {
  if (alpha < 0 || alpha > 2)
    throw Error(Errc::invalid_argument, "phi_sectional: alpha out of range");
  const Eigen::VectorXd u = unit_horizontal(cx, x, "phi_sectional");
  const Eigen::VectorXd pu = cx.pt.phi[alpha].v * u;
  if (std::sqrt(pu.dot(cx.pt.g.v * pu)) < 1e-10)
    throw Error(Errc::degenerate_input, "phi_sectional: phi X is degenerate");
  return cx.geo.sectional(u, pu);
}

double phi_sectional_sum(const IdentityContext& cx, const Eigen::VectorXd& x) {
  const Eigen::VectorXd u = unit_horizontal(cx, x, "phi_sectional_sum");
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    const Eigen::VectorXd pu = cx.pt.phi[a].v * u;
    sum += cx.geo.riem4(u, pu, pu, u);
  }
  return sum;
}

ResidualStat phi_sectional_sum_residual(const IdentityContext& cx, Sampler& s, int trials) {
  const double q = 0.75 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd ph = horizontal_projector(cx);
  const Eigen::MatrixXd pl = rank_block_projector(cx);
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit_projected(cx.pt.g.v, ph);
    const double sum = phi_sectional_sum(cx, x);
    const Eigen::VectorXd xl = pl * x;
    const double tt = xl.dot(cx.pt.g.v * xl);
    const double target = q * tt * tt;
    r.add(std::abs(sum - target), std::max(std::abs(sum), std::abs(target)));
  }
  return r;
}

ResidualStat cyclic_curvature_residual(const IdentityContext& cx, Sampler& s, int trials) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd ph = horizontal_projector(cx);
  const Eigen::MatrixXd pl = rank_block_projector(cx);
  static constexpr int triples[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit_projected(g, ph);
    const Eigen::VectorXd xl = pl * x;
    const double tt = xl.dot(g * xl);
    double bianchi = 0.0, bianchi_scale = 0.0;
    for (const auto& tr : triples) {
      const int a = tr[0], b = tr[1], c3 = tr[2];
      const Eigen::VectorXd pa = cx.pt.phi[a].v * x;
      const Eigen::VectorXd pb = cx.pt.phi[b].v * x;
      const Eigen::VectorXd pc = cx.pt.phi[c3].v * x;
      const double mixed = cx.geo.riem4(x, pc, pa, pb);
      const double h_c = cx.geo.riem4(x, pc, pc, x);
      const double rhs = -h_c + q * tt * tt;
      r.add(std::abs(-mixed - rhs),
            std::max({std::abs(mixed), std::abs(h_c), q * tt * tt}));
      bianchi += mixed;
      bianchi_scale = std::max(bianchi_scale, std::abs(mixed));
    }
    r.add(std::abs(bianchi), bianchi_scale);
  }
  return r;
}

ResidualStat sectional_xi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials) {
  const double q = 0.25 * cx.df.c * cx.df.c;
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd ph = horizontal_projector(cx);
  const Eigen::MatrixXd pl = rank_block_projector(cx);
  ResidualStat r;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = s.g_unit_projected(g, ph);
    const Eigen::VectorXd& xi = cx.pt.xi[alpha].v;
    const double k = cx.geo.riem4(x, xi, xi, x);
    const Eigen::VectorXd xl = pl * x;
    const double target = q * xl.dot(g * xl);
    r.add(std::abs(k - target), std::max({std::abs(k), std::abs(target), q}));
  }
  return r;
}

std::vector<double> section_curvatures(const IdentityContext& cx, const Eigen::VectorXd& x) {
  const Eigen::VectorXd u = unit_horizontal(cx, x, "section_curvatures");
  std::vector<Eigen::VectorXd> frame;
  frame.push_back(u);
  for (int a = 0; a < 3; ++a) frame.push_back(cx.pt.phi[a].v * u);
  std::vector<double> out;
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = i + 1; j < frame.size(); ++j)
      out.push_back(cx.geo.sectional(frame[i], frame[j]));
  return out;
}

SectionalSpread horizontal_section_spread(const IdentityContext& cx, Sampler& s, int directions) {
  const Eigen::MatrixXd& g = cx.pt.g.v;
  const Eigen::MatrixXd ph = horizontal_projector(cx);
  const Eigen::MatrixXd pl = rank_block_projector(cx);
  const Eigen::MatrixXd& pm = cx.df.p_e4m.v;
  SectionalSpread out;
  bool first = true;
  auto visit = [&](const Eigen::VectorXd& x) {
    std::vector<double> ks;
    try {
      ks = section_curvatures(cx, x);
    } catch (const Error& e) {
      if (e.code() == Errc::degenerate_input) return;
      throw;
    }
    for (double k : ks) {
      if (first || k < out.k_min) out.k_min = k;
      if (first || k > out.k_max) out.k_max = k;
      first = false;
      ++out.n_planes;
    }
  };
  for (int t = 0; t < directions; ++t) {
    const Eigen::VectorXd x = s.g_unit_projected(g, ph);
    visit(x);
    // Probing the pure parts of the same draw lands on the extreme planes of
    // a mixed-rank structure instead of waiting for a lucky direction.
    for (const Eigen::MatrixXd* proj : {&pl, &pm}) {
      const Eigen::VectorXd y = *proj * x;
      const double n2 = y.dot(g * y);
      if (n2 > 1e-8) visit(Eigen::VectorXd(y / std::sqrt(n2)));
    }
  }
  return out;
}

const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::SYM_PSI2: return "SYM_PSI2";
    case IdentityId::PSI_CUBE: return "PSI_CUBE";
    case IdentityId::NABLA_ETA: return "NABLA_ETA";
    case IdentityId::DETA_CPSI: return "DETA_CPSI";
    case IdentityId::NABLA_XI: return "NABLA_XI";
    case IdentityId::NABLA_PSI: return "NABLA_PSI";
    case IdentityId::NABLA_PSI_SQ: return "NABLA_PSI_SQ";
    case IdentityId::R_XI: return "R_XI";
    case IdentityId::R_PHI_COMMUTE: return "R_PHI_COMMUTE";
    case IdentityId::P_IDENTITY: return "P_IDENTITY";
    case IdentityId::PHI4: return "PHI4";
    case IdentityId::PHI_SECTIONAL_SUM: return "PHI_SECTIONAL_SUM";
  }
  throw Error(Errc::invalid_argument, "identity_name: unknown id");
}

const char* identity_formula(IdentityId id) {
  switch (id) {
    case IdentityId::SYM_PSI2:
      return "g(psi^2 X, Y) = g(X, psi^2 Y)";
    case IdentityId::PSI_CUBE:
      return "psi^3 = -psi";
    case IdentityId::NABLA_ETA:
      return "(nabla_X eta)(Y) = (c/2) Psi(X,Y)";
    case IdentityId::DETA_CPSI:
      return "dEta = c Psi";
    case IdentityId::NABLA_XI:
      return "nabla_X xi = -(c/2) psi X";
    case IdentityId::NABLA_PSI:
      return "(nabla_X psi)Y = (c/2)(eta(Y) psi^2 X - g(psi^2 X, Y) xi)";
    case IdentityId::NABLA_PSI_SQ:
      return "(nabla_X psi^2)Y = (c/2)(Psi(X,Y) xi - eta(Y) psi X)";
    case IdentityId::R_XI:
      return "R(X,Y)xi = (c^2/4)(eta(X) psi^2 Y - eta(Y) psi^2 X)";
    case IdentityId::R_PHI_COMMUTE:
      return "R(X,Y)phi Z - phi R(X,Y)Z = (c^2/4)[(Psi(Y,psi Z) - eta(Y)eta(Z)) psi X"
             " - (Psi(X,psi Z) - eta(X)eta(Z)) psi Y - Psi(Y,Z) psi^2 X + Psi(X,Z) psi^2 Y"
             " + (eta(X)Psi(Y,Z) - eta(Y)Psi(X,Z)) xi]";
    case IdentityId::P_IDENTITY:
      return "g(R(X,Y)phi Z, W) + g(R(X,Y)Z, phi W) = -P(X,Y,Z,W), P the eight-term"
             " quadratic in Psi and eta";
    case IdentityId::PHI4:
      return "g(R(phi X, phi Y)phi Z, phi W) = g(R(X,Y)Z, W) + (c^2/4)[Psi(Z,X)Psi(W,psi phi Y)"
             " + Psi(Z,psi X)Psi(W,phi Y) + Psi(phi X,Z)Psi(phi Y,psi phi W)"
             " + Psi(phi X,psi Z)Psi(phi Y,phi W)] on horizontal arguments";
    case IdentityId::PHI_SECTIONAL_SUM:
      return "H_1(X) + H_2(X) + H_3(X) = (3c^2/4) g(X_l, X_l)^2 for unit horizontal X";
  }
  throw Error(Errc::invalid_argument, "identity_formula: unknown id");
}

bool identity_per_alpha(IdentityId id) { return id != IdentityId::PHI_SECTIONAL_SUM; }

ResidualStat identity_residual(const IdentityContext& cx, IdentityId id, int alpha, Sampler& s,
                               int trials) {
  switch (id) {
    case IdentityId::SYM_PSI2: return sym_psi_sq_residual(cx, alpha);
    case IdentityId::PSI_CUBE: return psi_cube_residual(cx, alpha);
    case IdentityId::NABLA_ETA: return nabla_eta_residual(cx, alpha, s, trials);
    case IdentityId::DETA_CPSI: return deta_c_psi_residual(cx, alpha);
    case IdentityId::NABLA_XI: return nabla_xi_residual(cx, alpha, s, trials);
    case IdentityId::NABLA_PSI: return nabla_psi_residual(cx, alpha, s, trials);
    case IdentityId::NABLA_PSI_SQ: return nabla_psi_sq_residual(cx, alpha, s, trials);
    case IdentityId::R_XI: return r_xi_residual(cx, alpha, s, trials);
    case IdentityId::R_PHI_COMMUTE: return r_phi_commute_residual(cx, alpha, s, trials);
    case IdentityId::P_IDENTITY: return p_identity_residual(cx, alpha, s, trials);
    case IdentityId::PHI4: return phi4_residual(cx, alpha, s, trials);
    case IdentityId::PHI_SECTIONAL_SUM: return phi_sectional_sum_residual(cx, s, trials);
  }
  throw Error(Errc::invalid_argument, "identity_residual: unknown id");
}

Classification classify_chsc(const ChartedManifold& m, const std::vector<Eigen::VectorXd>& pts,
                             uint64_t seed, double tol) {
  if (pts.size() < 8)
    throw Error(Errc::invalid_argument, "classify_chsc: needs at least 8 sample points");
  Classification out;
  out.c = reeb_constant(m, pts);

  SectionalSpread spread;
  double curv_scale = 0.0;
  bool first = true;
  for (size_t i = 0; i < pts.size(); ++i) {
    const IdentityContext cx = identity_context(m, pts[i]);
    Sampler s(mix_seed(seed, i));
    const SectionalSpread sp = horizontal_section_spread(cx, s, 8);
    if (sp.n_planes == 0) continue;
    if (first || sp.k_min < spread.k_min) spread.k_min = sp.k_min;
    if (first || sp.k_max > spread.k_max) spread.k_max = sp.k_max;
    first = false;
    spread.n_planes += sp.n_planes;
    curv_scale = std::max(curv_scale, cx.geo.riem_low.max_abs());
  }
  if (spread.n_planes == 0)
    throw Error(Errc::degenerate_input, "classify_chsc: no nondegenerate planes sampled");
  out.k_min = spread.k_min;
  out.k_max = spread.k_max;
  out.n_planes = spread.n_planes;

  const double band = tol * std::max(1.0, std::max(std::abs(out.k_min), std::abs(out.k_max)));
  const bool constant_k = (out.k_max - out.k_min) <= band;
  const double kc = 0.5 * (out.k_min + out.k_max);
  if (std::abs(out.c) <= 1e-9) {
    if (curv_scale <= tol) {
      out.verdict = ChscVerdict::three_cosymplectic;
      out.k_value = 0.0;
      return out;
    }
    if (constant_k)
      throw Error(Errc::inconsistent_result,
                  "classify_chsc: constant curvature with a vanishing transverse constant");
    out.verdict = ChscVerdict::non_constant;
    return out;
  }
  if (constant_k) {
    const double expected = 0.25 * out.c * out.c;
    if (std::abs(kc - expected) > tol * std::max(1.0, expected))
      throw Error(Errc::inconsistent_result,
                  "classify_chsc: constant curvature away from the transverse value");
    out.verdict = ChscVerdict::three_c_sasakian;
    out.k_value = kc;
    return out;
  }
  out.verdict = ChscVerdict::non_constant;
  return out;
}

}  // namespace qs3
