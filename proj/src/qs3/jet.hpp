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

#ifndef QS3_JET_HPP
#define QS3_JET_HPP

#include <Eigen/Dense>
#include <vector>

#include "qs3/errors.hpp"

namespace qs3 {

// Truncated second-order Taylor scalar: value, gradient and symmetric Hessian
// with respect to a fixed set of chart coordinates.  Evaluating a field once
// with Jet2 coordinates yields the field values together with all first and
// second partial derivatives needed by the curvature pipeline.
//
// A jet of dimension 0 acts as a plain constant and combines with jets of any
// dimension; mixing two jets of different nonzero dimensions is a hard error.
class Jet2 {
public:
  Jet2() : v_(0.0) {}
  explicit Jet2(double v) : v_(v) {}
  Jet2(double v, int dim) : v_(v), g_(Eigen::VectorXd::Zero(dim)), h_(Eigen::MatrixXd::Zero(dim, dim)) {}

  static Jet2 variable(double v, int i, int dim);

  double value() const { return v_; }
  int dim() const { return static_cast<int>(g_.size()); }
  const Eigen::VectorXd& grad() const { return g_; }
  const Eigen::MatrixXd& hess() const { return h_; }

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);

  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a);

  friend Jet2 operator+(const Jet2& a, double s) { return a + Jet2(s); }
  friend Jet2 operator+(double s, const Jet2& a) { return Jet2(s) + a; }
  friend Jet2 operator-(const Jet2& a, double s) { return a - Jet2(s); }
  friend Jet2 operator-(double s, const Jet2& a) { return Jet2(s) - a; }
  friend Jet2 operator*(const Jet2& a, double s);
  friend Jet2 operator*(double s, const Jet2& a) { return a * s; }
  friend Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
  friend Jet2 operator/(double s, const Jet2& a) { return Jet2(s) / a; }

  friend Jet2 recip(const Jet2& a);
  friend Jet2 sqrt(const Jet2& a);
  friend Jet2 pow_int(const Jet2& a, long n);

private:
  double v_;
  Eigen::VectorXd g_;
  Eigen::MatrixXd h_;

  // Promotes a constant (dimension 0) to the dimension of the other operand.
  static void align(Jet2& a, Jet2& b);
};

inline Jet2 jet_var(double v, int i, int dim) { return Jet2::variable(v, i, dim); }
inline Jet2 jet_const(double v, int dim) { return Jet2(v, dim); }

// Dispatch by op tag; this is the instruction set available to manifold
// description files.
enum class JetOp { add, sub, mul, div, neg, recip, sqrt, pow_int };

Jet2 jet_apply(JetOp op, const Jet2& a, const Jet2& b);
Jet2 jet_apply(JetOp op, const Jet2& a);
Jet2 jet_apply(JetOp op, const Jet2& a, long exponent);

using JetVec = std::vector<Jet2>;

// Dense row-major matrix of jets.  Sizes stay small (chart dimension plus one
// ambient direction at most), so no sparsity or expression templates.
class JetMatrix {
public:
  JetMatrix() : rows_(0), cols_(0) {}
  JetMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static JetMatrix constant(const Eigen::MatrixXd& m, int jet_dim);
  static JetMatrix identity(int n, int jet_dim);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Jet2& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Jet2& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Eigen::MatrixXd values() const;

private:
  int rows_, cols_;
  std::vector<Jet2> a_;
};

JetMatrix matmul(const JetMatrix& a, const JetMatrix& b);
JetVec matvec(const JetMatrix& a, const JetVec& x);
JetMatrix transpose(const JetMatrix& a);
JetMatrix jet_scale(const JetMatrix& a, double s);
JetVec jet_scale(const JetVec& a, double s);

// Solves A x = b over the jet ring by Gaussian elimination with partial
// pivoting on value magnitude.  A pivot below 1e-12 relative to the largest
// value in its original column raises a singular-system error.
JetVec jet_solve(JetMatrix a, JetVec b);
JetMatrix jet_solve(JetMatrix a, JetMatrix b);

}  // namespace qs3

#endif
