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

#ifndef QS3_GEOMETRY_HPP
#define QS3_GEOMETRY_HPP

#include "qs3/forms.hpp"
#include "qs3/manifold.hpp"

namespace qs3 {

// Flat-stored rank-4 array of doubles.
struct Tensor4 {
  int d = 0;
  std::vector<double> a;

  explicit Tensor4(int dim = 0) : d(dim), a(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}
  double& at(int i, int j, int k, int l) { return a[((static_cast<size_t>(i) * d + j) * d + k) * d + l]; }
  double at(int i, int j, int k, int l) const { return a[((static_cast<size_t>(i) * d + j) * d + k) * d + l]; }
  double max_abs() const;
};

// Levi-Civita data at a point.
//
// Curvature sign convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
// - nabla_[X,Y] Z.  The lowered storage is riem_low(i,j,k,l) =
// g(R(e_i,e_j) e_l, e_k), so a space of constant curvature 1 satisfies
// riem_low(i,j,k,l) = g_ik g_jl - g_il g_jk.
struct PointGeometry {
  Eigen::VectorXd p;
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;  // gamma[k](i, j) = Gamma^k_ij
  Tensor4 riem_up;                     // riem_up(i,j,k,l) = component l of R(e_i,e_j) e_k
  Tensor4 riem_low;

  Eigen::VectorXd curv(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;
  // g(R(x,y)z, w)
  double riem4(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
               const Eigen::VectorXd& w) const;
  double sectional(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  // Largest normalized violation of the pair symmetries and the first Bianchi
  // identity of riem_low.
  double symmetry_residual() const;
};

struct ChristoffelAt {
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;
};

ChristoffelAt christoffel_at(const ChartedManifold& m, const Eigen::VectorXd& p);
PointGeometry riemann_at(const ChartedManifold& m, const Eigen::VectorXd& p);

double sectional(const ChartedManifold& m, const Eigen::VectorXd& p, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y);

// Bracket of two jet-evaluable vector fields at p.
Eigen::VectorXd lie_bracket_at(const ChartedManifold& m,
                               const std::function<JetVec(const JetVec&)>& a,
                               const std::function<JetVec(const JetVec&)>& b,
                               const Eigen::VectorXd& p);
Eigen::VectorXd lie_bracket(const Vec1& a, const Vec1& b);

// Exterior derivative with the determinant normalization (no 1/(k+1) factor):
// for a 1-form, (d w)(X, Y) = X w(Y) - Y w(X) - w([X, Y]).
AltForm d_form(const Vec1& covector_field);
AltForm d_form(const Mat1& two_form_field);
AltForm d_form_at(const ChartedManifold& m, const std::function<JetVec(const JetVec&)>& covector_field,
                  const Eigen::VectorXd& p);
AltForm d_form_at(const ChartedManifold& m, const std::function<JetMatrix(const JetVec&)>& two_form_field,
                  const Eigen::VectorXd& p);

// Covariant derivatives along X of fields given by value plus first partials.
Eigen::VectorXd cov_deriv_vector(const std::vector<Eigen::MatrixXd>& gamma, const Vec1& field,
                                 const Eigen::VectorXd& x);
Eigen::VectorXd cov_deriv_covector(const std::vector<Eigen::MatrixXd>& gamma, const Vec1& field,
                                   const Eigen::VectorXd& x);
Eigen::MatrixXd cov_deriv_tensor11(const std::vector<Eigen::MatrixXd>& gamma, const Mat1& field,
                                   const Eigen::VectorXd& x);

// Nijenhuis torsion of a (1,1) field applied to vectors X, Y:
// N(X,Y) = [TX, TY] - T[TX, Y] - T[X, TY] + T^2 [X, Y] on coordinate
// extensions of X and Y.
Eigen::VectorXd nijenhuis(const Mat1& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace qs3

#endif
