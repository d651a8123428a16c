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

#ifndef QS3_IDENTITIES_HPP
#define QS3_IDENTITIES_HPP

#include "qs3/contact.hpp"

namespace qs3 {

// Shared evaluation state for the curvature identities at one sample point.
// `se` is the spectral-route splitting, kept separate from the smooth-field
// route `df` so that checks can pair independently computed quantities.
struct IdentityContext {
  ContactPoint pt;
  PointGeometry geo;
  DerivedFields df;
  SplitEval se;
};

IdentityContext identity_context(const ChartedManifold& m, const Eigen::VectorXd& p);

// The verified identity slate.  Ids name what is being equated; the formula
// text behind each one is returned by identity_formula.
enum class IdentityId {
  SYM_PSI2,
  PSI_CUBE,
  NABLA_ETA,
  DETA_CPSI,
  NABLA_XI,
  NABLA_PSI,
  NABLA_PSI_SQ,
  R_XI,
  R_PHI_COMMUTE,
  P_IDENTITY,
  PHI4,
  PHI_SECTIONAL_SUM,
};

constexpr IdentityId kAllIdentities[] = {
    IdentityId::SYM_PSI2,     IdentityId::PSI_CUBE,  IdentityId::NABLA_ETA,
    IdentityId::DETA_CPSI,    IdentityId::NABLA_XI,  IdentityId::NABLA_PSI,
    IdentityId::NABLA_PSI_SQ, IdentityId::R_XI,      IdentityId::R_PHI_COMMUTE,
    IdentityId::P_IDENTITY,   IdentityId::PHI4,      IdentityId::PHI_SECTIONAL_SUM,
};

const char* identity_name(IdentityId id);
const char* identity_formula(IdentityId id);
// True for the ids evaluated once per structure index alpha; the remaining
// ids aggregate over all three structures at once.
bool identity_per_alpha(IdentityId id);

// Evaluates one identity at the context point over `trials` random argument
// tuples (g-unit draws from `s`).  `alpha` is ignored for aggregate ids.
ResidualStat identity_residual(const IdentityContext& cx, IdentityId id, int alpha, Sampler& s,
                               int trials = 8);

// --- identities of the transverse operators psi_a ---

// g(psi^2 X, Y) = g(X, psi^2 Y): g psi^2 is symmetric.
ResidualStat sym_psi_sq_residual(const IdentityContext& cx, int alpha);

// psi^3 = -psi.
ResidualStat psi_cube_residual(const IdentityContext& cx, int alpha);

// (nabla_X eta)(Y) = (c/2) Psi(X, Y).
ResidualStat nabla_eta_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// dEta = c Psi, pairing the spectral-route psi with the bracket-route c.
ResidualStat deta_c_psi_residual(const IdentityContext& cx, int alpha);

// nabla_X xi = -(c/2) psi X.
ResidualStat nabla_xi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// (nabla_X psi) Y = (c/2) (eta(Y) psi^2 X - g(psi^2 X, Y) xi).
ResidualStat nabla_psi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// (nabla_X psi^2) Y = (c/2) (Psi(X, Y) xi - eta(Y) psi X).
ResidualStat nabla_psi_sq_residual(const IdentityContext& cx, int alpha, Sampler& s,
                                   int trials = 4);

// --- curvature identities ---

// R(X,Y) xi = (c^2/4) (eta(X) psi^2 Y - eta(Y) psi^2 X).
ResidualStat r_xi_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// R(X,Y) phi Z - phi R(X,Y) Z =
//   (c^2/4) [ (Psi(Y, psi Z) - eta(Y) eta(Z)) psi X
//           - (Psi(X, psi Z) - eta(X) eta(Z)) psi Y
//           - Psi(Y,Z) psi^2 X + Psi(X,Z) psi^2 Y
//           + (eta(X) Psi(Y,Z) - eta(Y) Psi(X,Z)) xi ].
ResidualStat r_phi_commute_residual(const IdentityContext& cx, int alpha, Sampler& s,
                                    int trials = 4);

// g(R(X,Y) phi Z, W) + g(R(X,Y) Z, phi W) = -P(X,Y,Z,W), where P is the
// eight-term quadratic in Psi and eta below; P is antisymmetric in (X, Y).
ResidualStat p_identity_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// For horizontal X, Y, Z, W:
// g(R(phi X, phi Y) phi Z, phi W) = g(R(X,Y) Z, W)
//   + (c^2/4) [ Psi(Z,X) Psi(W, psi phi Y) + Psi(Z, psi X) Psi(W, phi Y)
//             + Psi(phi X, Z) Psi(phi Y, psi phi W)
//             + Psi(phi X, psi Z) Psi(phi Y, phi W) ].
// The quartic correction carries the only transverse-constant factor; the
// plain curvature term enters with coefficient one.
//
// phi4_check evaluates one quadruple and rejects non-horizontal arguments
// (projecting silently could mask caller bugs); phi4_residual draws its own
// horizontal tuples.
ResidualStat phi4_check(const IdentityContext& cx, int alpha, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& w);
ResidualStat phi4_residual(const IdentityContext& cx, int alpha, Sampler& s, int trials = 4);

// Sectional curvature of the plane spanned by a horizontal g-unit X and
// phi_a X; rejects directions phi_a X degenerates on.
double phi_sectional(const IdentityContext& cx, const Eigen::VectorXd& x, int alpha);

// Sum over the three structures of the sectional curvature of the planes
// (X, phi_a X) for a g-unit horizontal X:
//   H_1(X) + H_2(X) + H_3(X) = (3 c^2 / 4) g(X_l, X_l)^2,
// X_l denoting the projection onto the rank block E^{4l}.
ResidualStat phi_sectional_sum_residual(const IdentityContext& cx, Sampler& s, int trials = 4);

// The plain value of that sum for one horizontal direction (rejects
// directions with a Reeb component, then normalizes exactly).
double phi_sectional_sum(const IdentityContext& cx, const Eigen::VectorXd& x);

// Cyclic relations tying the mixed curvature monomials to the sums above:
// for cyclic (a, b, c3) and unit horizontal X,
//   -g(R(X, phi_c3 X) phi_a X, phi_b X) = -H_c3(X) + (c^2/4) g(X_l, X_l)^2,
// and the three left-hand sides add up to zero.
ResidualStat cyclic_curvature_residual(const IdentityContext& cx, Sampler& s, int trials = 4);

// K(X, xi_a) = (c^2/4) g(X_l, X_l) for g-unit horizontal X.
ResidualStat sectional_xi_residual(const IdentityContext& cx, int alpha, Sampler& s,
                                   int trials = 4);

// --- classification by horizontal sectional curvature ---

// Sectional curvatures of the six planes spanned by pairs from the
// horizontal section {X, phi_1 X, phi_2 X, phi_3 X}.
std::vector<double> section_curvatures(const IdentityContext& cx, const Eigen::VectorXd& x);

// Spread of sectional curvatures over planes inside horizontal sections
// span{X, phi_1 X, phi_2 X, phi_3 X}.
struct SectionalSpread {
  double k_min = 0.0;
  double k_max = 0.0;
  int n_planes = 0;
};
SectionalSpread horizontal_section_spread(const IdentityContext& cx, Sampler& s, int directions);

enum class ChscVerdict {
  three_c_sasakian,    // c != 0 and constant horizontal curvature c^2/4
  three_cosymplectic,  // c = 0 and vanishing curvature
  non_constant,
};

struct Classification {
  ChscVerdict verdict;
  double c = 0.0;
  double k_value = 0.0;  // the constant curvature, when one exists
  double k_min = 0.0, k_max = 0.0;
  int n_planes = 0;
};

// Decides among the three verdicts from sampled evidence (>= 8 points, 8
// section directions per point); combinations that contradict the trichotomy
// (constant nonzero curvature with c = 0, or constant curvature away from
// c^2/4) raise inconsistent_result.
Classification classify_chsc(const ChartedManifold& m, const std::vector<Eigen::VectorXd>& pts,
                             uint64_t seed, double tol = 1e-6);

}  // namespace qs3

#endif
