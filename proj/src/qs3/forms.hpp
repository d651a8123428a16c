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

#ifndef QS3_FORMS_HPP
#define QS3_FORMS_HPP

#include <Eigen/Dense>
#include <vector>

#include "qs3/errors.hpp"

namespace qs3 {

// Alternating k-form at a point, stored densely over the C(d, k) strictly
// increasing index tuples in lexicographic order.  Conventions follow the
// determinant normalization: wedge products are shuffle sums with unit
// coefficients and evaluation contracts against minors, so that
// (dx^1 ^ dx^2)(e1, e2) = 1 with no factorial prefactor.
class AltForm {
public:
  AltForm() : dim_(0), degree_(0) {}
  AltForm(int dim, int degree);

  static AltForm from_skew_matrix(const Eigen::MatrixXd& a);  // degree 2
  static AltForm from_covector(const Eigen::VectorXd& a);     // degree 1

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(c_.size()); }

  double& comp(const std::vector<int>& idx);
  double comp(const std::vector<int>& idx) const;
  double& comp_at(int rank) { return c_[rank]; }
  double comp_at(int rank) const { return c_[rank]; }

  // Value on unsorted index lists, with the sign of the sorting permutation
  // (zero on repeated indices).
  double component_signed(std::vector<int> idx) const;

  double eval(const std::vector<Eigen::VectorXd>& args) const;
  double max_abs() const;

  AltForm& operator+=(const AltForm& o);
  AltForm& operator-=(const AltForm& o);
  AltForm operator*(double s) const;

  friend AltForm wedge(const AltForm& a, const AltForm& b);
  friend AltForm interior(const Eigen::VectorXd& x, const AltForm& a);

private:
  int dim_, degree_;
  std::vector<double> c_;
};

AltForm wedge(const AltForm& a, const AltForm& b);
AltForm interior(const Eigen::VectorXd& x, const AltForm& a);

long binomial(int n, int k);

// Enumerates strictly increasing index tuples of the given degree in
// lexicographic order; retains rank <-> tuple conversions.
class TupleIndex {
public:
  TupleIndex(int dim, int degree);
  int count() const { return count_; }
  int rank(const std::vector<int>& idx) const;
  std::vector<int> unrank(int r) const;

private:
  int dim_, degree_, count_;
};

struct SkewSpectrum {
  int rank = 0;                       // number of singular values above tolerance, always even
  Eigen::VectorXd singular_values;    // descending
  Eigen::MatrixXd kernel;             // euclidean-orthonormal null-space basis, one column each
};

// Spectral data of a skew-symmetric matrix.  Rejects non-skew input, and
// raises an indeterminate-rank error when singular values crowd the
// threshold (relative tolerance `tol`, default 1e-7) so callers never act on
// an ambiguous rank.
SkewSpectrum skew_spectrum(const Eigen::MatrixXd& a, double tol = 1e-7);

// Gram-Schmidt with respect to the metric g; the sign of each output vector
// is normalized so its first component above 1e-12 in magnitude is positive.
std::vector<Eigen::VectorXd> orthonormalize(const std::vector<Eigen::VectorXd>& vecs,
                                            const Eigen::MatrixXd& g);

// Metric with its inverse, validated symmetric positive definite.
struct MetricFrame {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;

  static MetricFrame from_metric(const Eigen::MatrixXd& g);
  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(g * b); }
  double norm(const Eigen::VectorXd& a) const;
};

}  // namespace qs3

#endif
