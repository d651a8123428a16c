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

#ifndef QS3_CONTACT_HPP
#define QS3_CONTACT_HPP

#include <array>
#include <vector>

#include "qs3/geometry.hpp"
#include "qs3/manifold.hpp"
#include "qs3/sampling.hpp"

namespace qs3 {

// Residual accumulator shared by all pointwise checks.  `max_abs` is the
// largest absolute residual component seen so far and `scale` the largest
// contributing term, so `normalized()` is comparable against a tolerance
// regardless of the size of the tensors involved.  A check whose every term
// stays below the vacuity floor carries no information at the sampled
// points and is flagged instead of counted as evidence.
struct ResidualStat {
  double max_abs = 0.0;
  double scale = 0.0;
  int n_trials = 0;

  void add(double residual, double term_scale) {
    if (residual > max_abs) max_abs = residual;
    if (term_scale > scale) scale = term_scale;
    ++n_trials;
  }
  void merge(const ResidualStat& o) {
    if (o.max_abs > max_abs) max_abs = o.max_abs;
    if (o.scale > scale) scale = o.scale;
    n_trials += o.n_trials;
  }
  double normalized() const { return max_abs / (scale > 1.0 ? scale : 1.0); }
  bool vacuous(double floor = 1e-12) const { return scale < floor; }
};

// One sample point of an almost contact metric 3-structure with everything
// the downstream checks consume: metric, Christoffel symbols, the three
// structure tensors with first partials, and the lowered Reeb covectors
// together with their exterior derivatives (differentiable once more, the
// second derivatives coming from the same jet evaluation).
struct ContactPoint {
  Eigen::VectorXd p;
  int d = 0;
  Mat1 g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;  // gamma[k](i,j) = Gamma^k_ij
  std::array<Mat1, 3> phi;
  std::array<Vec1, 3> xi, eta;
  std::array<Mat1, 3> deta;  // (dEta_a)_ij = d_i eta_j - d_j eta_i
};

ContactPoint contact_point(const ChartedManifold& m, const Eigen::VectorXd& p);

// Violations of the almost contact metric 3-structure algebra:
// eta_a(xi_b) = delta_ab, phi_a xi_a = 0, eta_a o phi_a = 0,
// phi_a^2 = -I + xi_a (x) eta_a, phi_a^T g phi_a = g - eta_a (x) eta_a,
// skewness of g phi_a, and the cyclic composition rules
// phi_a phi_b = phi_c + xi_a (x) eta_b, phi_a xi_b = xi_c = -phi_b xi_a,
// eta_c = eta_a o phi_b = -eta_b o phi_a.
ResidualStat structure_residual(const ContactPoint& pt);

// Normality of the single structure alpha: the torsion
// [phi, phi](X, Y) + dEta(X, Y) xi evaluated on random direction pairs.
ResidualStat normality_residual(const ContactPoint& pt, int alpha, Sampler& s, int trials = 4);

// Closedness of the fundamental two-form g phi_a.
ResidualStat dfund_closed_residual(const ContactPoint& pt, int alpha);

// Contact rank of eta_a at the point: skew rank of dEta_a plus one.
// Inherits the indeterminate-rank guard of the spectral routine.
int rank_at(const ContactPoint& pt, int alpha, double tol = 1e-7);

// The same rank from wedge powers: the largest k with
// eta_a ^ (dEta_a)^k != 0 gives rank 2k + 1.  The cutoff is relative to the
// largest component of the accumulated power.
int rank_via_forms(const ContactPoint& pt, int alpha, double tol = 1e-9);

// Transverse constant at one point, defined by [xi_a, xi_b] = c xi_c over
// the three cyclic Reeb pairs.  Raises not_3qs when a bracket has a
// component outside the Reeb span or the three coefficients disagree.
double reeb_constant_at(const ContactPoint& pt, double tol = 1e-8);

// Shared constant across sample points; raises not_3qs on disagreement.
double reeb_constant(const ChartedManifold& m, const std::vector<Eigen::VectorXd>& pts,
                     double tol = 1e-8);

// Tangent splitting obtained from the singular value decomposition of the
// stacked matrix [dEta_1; dEta_2; dEta_3; eta_1^T; eta_2^T; eta_3^T]: its
// kernel is, by definition, the distribution annihilated by all three Reeb
// covectors and their differentials.  This route never consumes the
// transverse constant; `c` is fitted afterwards by least squares in
// dEta_a = c g psi_a over the three structures.
struct SplitEval {
  double c = 0.0;
  int l = 0, m = 0;               // dim = 4l + 4m + 3
  Eigen::MatrixXd p_e4m, p_e4l3;  // g-orthogonal projector values
  std::array<Eigen::MatrixXd, 3> psi, theta;
};
SplitEval split_eval(const ContactPoint& pt, double tol = 1e-7);

// Algebraic consistency of a splitting: projectors idempotent,
// g-self-adjoint, complementary, commuting with every phi_a; psi_a and
// theta_a vanish on the opposite factor and add up to phi_a.
ResidualStat split_projector_residual(const ContactPoint& pt, const SplitEval& se);

// The same splitting assembled from smooth fields so it can be
// differentiated: psi_a = (1/c) g^{-1} dEta_a on the non-degenerate branch,
// the projector onto E^{4l} recovered as -(sum_a psi_a^2 + 2 P_V) / 3.
// When the Reeb brackets vanish (c below `c_zero_tol`) the splitting
// degenerates to P_E4l3 = P_V and psi_a = phi_a P_V.
struct DerivedFields {
  double c = 0.0;
  Mat1 p_v, p_e4l3, p_e4m;
  std::array<Mat1, 3> psi, theta, psi_sq;
};
DerivedFields derived_fields(const ContactPoint& pt, double c_zero_tol = 1e-9);

// Agreement of the two splitting routes on the E^{4m} projector and the
// transverse constant.
ResidualStat split_route_residual(const SplitEval& se, const DerivedFields& df);

// Both E^{4m} and E^{4l+3} must be tangent to foliations with totally
// geodesic leaves: Lie brackets and covariant derivatives of coordinate
// fields projected onto either distribution may not leak into the
// complement.
ResidualStat foliation_residual(const ContactPoint& pt, const DerivedFields& df);

}  // namespace qs3

#endif
