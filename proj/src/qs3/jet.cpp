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

#include "qs3/jet.hpp"

#include <cmath>
#include <string>

namespace qs3 {

Jet2 Jet2::variable(double v, int i, int dim) {
  if (dim <= 0 || i < 0 || i >= dim) fail(Errc::invalid_argument, "jet_var: index out of range");
  Jet2 r(v, dim);
  r.g_(i) = 1.0;
  return r;
}

void Jet2::align(Jet2& a, Jet2& b) {
  if (a.dim() == b.dim()) return;
  if (a.dim() == 0) {
    a = Jet2(a.v_, b.dim());
  } else if (b.dim() == 0) {
    b = Jet2(b.v_, a.dim());
  } else {
    fail(Errc::dimension_mismatch, "jet arithmetic on dimensions " + std::to_string(a.dim()) +
                                       " and " + std::to_string(b.dim()));
  }
}

Jet2& Jet2::operator+=(const Jet2& o) { return *this = *this + o; }
Jet2& Jet2::operator-=(const Jet2& o) { return *this = *this - o; }
Jet2& Jet2::operator*=(const Jet2& o) { return *this = *this * o; }
Jet2& Jet2::operator/=(const Jet2& o) { return *this = *this / o; }

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 x = a, y = b;
  Jet2::align(x, y);
  x.v_ += y.v_;
  if (x.dim()) {
    x.g_ += y.g_;
    x.h_ += y.h_;
  }
  return x;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 x = a, y = b;
  Jet2::align(x, y);
  x.v_ -= y.v_;
  if (x.dim()) {
    x.g_ -= y.g_;
    x.h_ -= y.h_;
  }
  return x;
}

Jet2 operator-(const Jet2& a) {
  Jet2 x = a;
  x.v_ = -x.v_;
  x.g_ = -x.g_;
  x.h_ = -x.h_;
  return x;
}

Jet2 operator*(const Jet2& a, double s) {
  Jet2 x = a;
  x.v_ *= s;
  x.g_ *= s;
  x.h_ *= s;
  return x;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 x = a, y = b;
  Jet2::align(x, y);
  Jet2 r(x.v_ * y.v_, x.dim());
  if (x.dim()) {
    r.g_ = x.v_ * y.g_ + y.v_ * x.g_;
    // The grouped outer-product pair is exactly symmetric (the same two
    // products are added, in both orders, and IEEE addition commutes), which
    // keeps every hessian in a computation bitwise symmetric.
    r.h_ = x.v_ * y.h_ + y.v_ * x.h_ + (x.g_ * y.g_.transpose() + y.g_ * x.g_.transpose());
  }
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value() == 0.0) fail(Errc::singular_evaluation, "div: division by zero value");
  Jet2 x = a, y = b;
  Jet2::align(x, y);
  Jet2 r(x.v_ / y.v_, x.dim());
  if (x.dim()) {
    // From a = r * b: solve for the derivatives of r.
    r.g_ = (x.g_ - r.v_ * y.g_) / y.v_;
    r.h_ = (x.h_ - r.v_ * y.h_ - (r.g_ * y.g_.transpose() + y.g_ * r.g_.transpose())) / y.v_;
  }
  return r;
}

Jet2 recip(const Jet2& a) {
  if (a.value() == 0.0) fail(Errc::singular_evaluation, "recip: division by zero value");
  double u = 1.0 / a.v_;
  Jet2 r(u, a.dim());
  if (a.dim()) {
    r.g_ = -u * u * a.g_;
    r.h_ = -u * u * a.h_ + (2.0 * u * u * u) * (a.g_ * a.g_.transpose());
  }
  return r;
}

Jet2 sqrt(const Jet2& a) {
  if (a.value() <= 0.0) fail(Errc::singular_evaluation, "sqrt: nonpositive value");
  double s = std::sqrt(a.v_);
  Jet2 r(s, a.dim());
  if (a.dim()) {
    double inv2s = 0.5 / s;
    r.g_ = inv2s * a.g_;
    r.h_ = inv2s * a.h_ - (0.25 / (s * a.v_)) * (a.g_ * a.g_.transpose());
  }
  return r;
}

Jet2 pow_int(const Jet2& a, long n) {
  if (n < 0) return recip(pow_int(a, -n));
  Jet2 r(1.0, a.dim());
  Jet2 base = a;
  // Plain repeated multiplication; exponents stay tiny.
  for (long k = 0; k < n; ++k) r = r * base;
  return r;
}

Jet2 jet_apply(JetOp op, const Jet2& a, const Jet2& b) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::sub: return a - b;
    case JetOp::mul: return a * b;
    case JetOp::div: return a / b;
    default: fail(Errc::invalid_argument, "jet_apply: op is not binary");
  }
}

Jet2 jet_apply(JetOp op, const Jet2& a) {
  switch (op) {
    case JetOp::neg: return -a;
    case JetOp::recip: return recip(a);
    case JetOp::sqrt: return sqrt(a);
    default: fail(Errc::invalid_argument, "jet_apply: op is not unary");
  }
}

Jet2 jet_apply(JetOp op, const Jet2& a, long exponent) {
  if (op != JetOp::pow_int) fail(Errc::invalid_argument, "jet_apply: expected pow_int");
  return pow_int(a, exponent);
}

JetMatrix JetMatrix::constant(const Eigen::MatrixXd& m, int jet_dim) {
  JetMatrix r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows_; ++i)
    for (int j = 0; j < r.cols_; ++j) r(i, j) = Jet2(m(i, j), jet_dim);
  return r;
}

JetMatrix JetMatrix::identity(int n, int jet_dim) {
  return constant(Eigen::MatrixXd::Identity(n, n), jet_dim);
}

Eigen::MatrixXd JetMatrix::values() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

JetMatrix matmul(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols() != b.rows()) fail(Errc::dimension_mismatch, "matmul: inner dimensions differ");
  JetMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Jet2 s = a(i, 0) * b(0, j);
      for (int k = 1; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

JetVec matvec(const JetMatrix& a, const JetVec& x) {
  if (a.cols() != static_cast<int>(x.size())) fail(Errc::dimension_mismatch, "matvec: sizes differ");
  JetVec r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Jet2 s = a(i, 0) * x[0];
    for (int k = 1; k < a.cols(); ++k) s += a(i, k) * x[k];
    r[i] = s;
  }
  return r;
}

JetMatrix transpose(const JetMatrix& a) {
  JetMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

JetMatrix jet_scale(const JetMatrix& a, double s) {
  JetMatrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) * s;
  return r;
}

JetVec jet_scale(const JetVec& a, double s) {
  JetVec r = a;
  for (auto& x : r) x = x * s;
  return r;
}

namespace {

constexpr double kPivotFloorRel = 1e-12;

// In-place elimination shared by the vector and matrix right-hand sides.
void eliminate(JetMatrix& a, JetMatrix& b) {
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n) fail(Errc::dimension_mismatch, "jet_solve: shape mismatch");

  std::vector<double> col_scale(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) col_scale[j] = std::max(col_scale[j], std::abs(a(i, j).value()));

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k).value());
    for (int i = k + 1; i < n; ++i) {
      double m = std::abs(a(i, k).value());
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best <= kPivotFloorRel * col_scale[k] || best == 0.0)
      fail(Errc::singular_system, "jet_solve: pivot below floor in column " + std::to_string(k));
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
    }
    for (int i = k + 1; i < n; ++i) {
      Jet2 f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }

  for (int k = n - 1; k >= 0; --k) {
    for (int j = 0; j < b.cols(); ++j) {
      Jet2 s = b(k, j);
      for (int m = k + 1; m < n; ++m) s -= a(k, m) * b(m, j);
      b(k, j) = s / a(k, k);
    }
  }
}

}  // namespace

JetVec jet_solve(JetMatrix a, JetVec b) {
  JetMatrix rhs(static_cast<int>(b.size()), 1);
  for (size_t i = 0; i < b.size(); ++i) rhs(static_cast<int>(i), 0) = b[i];
  eliminate(a, rhs);
  JetVec x(b.size());
  for (size_t i = 0; i < b.size(); ++i) x[i] = rhs(static_cast<int>(i), 0);
  return x;
}

JetMatrix jet_solve(JetMatrix a, JetMatrix b) {
  eliminate(a, b);
  return b;
}

}  // namespace qs3
