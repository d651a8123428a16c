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

#ifndef QS3_MANIFOLD_HPP
#define QS3_MANIFOLD_HPP

#include <array>
#include <functional>
#include <string>

#include "qs3/jet.hpp"

namespace qs3 {

// A single-chart manifold with an almost contact metric 3-structure.  Every
// field is a function of jet-valued coordinates, so one evaluation carries
// the values along with first and second partials.
struct ChartedManifold {
  std::string name;
  int dim = 0;
  double domain_radius = 1.0;

  std::function<JetMatrix(const JetVec&)> g;                 // dim x dim, symmetric
  std::array<std::function<JetMatrix(const JetVec&)>, 3> phi;
  std::array<std::function<JetVec(const JetVec&)>, 3> xi;
};

// Coordinates of p seeded as jet variables; enforces the chart domain.
JetVec chart_vars(const ChartedManifold& m, const Eigen::VectorXd& p);

// All structure fields evaluated at one point.
struct FieldsAt {
  Eigen::VectorXd p;
  JetMatrix g;
  std::array<JetMatrix, 3> phi;
  std::array<JetVec, 3> xi;
  std::array<JetVec, 3> eta;  // lowered xi, second-order exact
};

FieldsAt eval_fields(const ChartedManifold& m, const Eigen::VectorXd& p);

// Value plus first partials of a vector or covector field at a point:
// jac(i, k) = d_k of component i.
struct Vec1 {
  Eigen::VectorXd v;
  Eigen::MatrixXd jac;
};

// Value plus first partials of a (1,1) tensor field: partial[k](i, j).
struct Mat1 {
  Eigen::MatrixXd v;
  std::vector<Eigen::MatrixXd> partial;

  static Mat1 zero(int d);
  static Mat1 identity(int d);
};

Vec1 to_vec1(const JetVec& jets);
Mat1 to_mat1(const JetMatrix& jets);

Mat1 mat1_mul(const Mat1& a, const Mat1& b);
Mat1 mat1_add(const Mat1& a, const Mat1& b);
Mat1 mat1_sub(const Mat1& a, const Mat1& b);
Mat1 mat1_scale(const Mat1& a, double s);
Vec1 mat1_apply(const Mat1& a, const Vec1& x);
Mat1 outer1(const Vec1& col, const Vec1& row);  // col * row^T with partials

}  // namespace qs3

#endif
