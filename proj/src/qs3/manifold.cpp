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

#include "qs3/manifold.hpp"

#include <sstream>

namespace qs3 {

JetVec chart_vars(const ChartedManifold& m, const Eigen::VectorXd& p) {
  if (static_cast<int>(p.size()) != m.dim)
    fail(Errc::dimension_mismatch, "chart_vars: point dimension does not match chart");
  if (p.norm() > m.domain_radius) {
    std::ostringstream os;
    os << "chart_vars: point with norm " << p.norm() << " outside domain radius " << m.domain_radius
       << " of " << m.name;
    fail(Errc::domain, os.str());
  }
  JetVec u(m.dim);
  for (int i = 0; i < m.dim; ++i) u[i] = jet_var(p(i), i, m.dim);
  return u;
}

FieldsAt eval_fields(const ChartedManifold& m, const Eigen::VectorXd& p) {
  JetVec u = chart_vars(m, p);
  FieldsAt f;
  f.p = p;
  f.g = m.g(u);
  for (int a = 0; a < 3; ++a) {
    f.phi[a] = m.phi[a](u);
    f.xi[a] = m.xi[a](u);
    f.eta[a] = matvec(f.g, f.xi[a]);
  }
  return f;
}

Mat1 Mat1::zero(int d) {
  Mat1 r;
  r.v = Eigen::MatrixXd::Zero(d, d);
  r.partial.assign(d, Eigen::MatrixXd::Zero(d, d));
  return r;
}

Mat1 Mat1::identity(int d) {
  Mat1 r = zero(d);
  r.v = Eigen::MatrixXd::Identity(d, d);
  return r;
}

Vec1 to_vec1(const JetVec& jets) {
  const int n = static_cast<int>(jets.size());
  const int d = n ? jets[0].dim() : 0;
  Vec1 r;
  r.v = Eigen::VectorXd(n);
  r.jac = Eigen::MatrixXd::Zero(n, d);
  for (int i = 0; i < n; ++i) {
    r.v(i) = jets[i].value();
    if (jets[i].dim()) r.jac.row(i) = jets[i].grad().transpose();
  }
  return r;
}

Mat1 to_mat1(const JetMatrix& jets) {
  const int rows = jets.rows(), cols = jets.cols();
  int d = 0;
  for (int i = 0; i < rows && !d; ++i)
    for (int j = 0; j < cols && !d; ++j) d = jets(i, j).dim();
  Mat1 r;
  r.v = Eigen::MatrixXd(rows, cols);
  r.partial.assign(d, Eigen::MatrixXd::Zero(rows, cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      r.v(i, j) = jets(i, j).value();
      if (jets(i, j).dim())
        for (int k = 0; k < d; ++k) r.partial[k](i, j) = jets(i, j).grad()(k);
    }
  return r;
}

Mat1 mat1_mul(const Mat1& a, const Mat1& b) {
  Mat1 r;
  r.v = a.v * b.v;
  r.partial.resize(a.partial.size());
  for (size_t k = 0; k < a.partial.size(); ++k) r.partial[k] = a.partial[k] * b.v + a.v * b.partial[k];
  return r;
}

Mat1 mat1_add(const Mat1& a, const Mat1& b) {
  Mat1 r;
  r.v = a.v + b.v;
  r.partial.resize(a.partial.size());
  for (size_t k = 0; k < a.partial.size(); ++k) r.partial[k] = a.partial[k] + b.partial[k];
  return r;
}

Mat1 mat1_sub(const Mat1& a, const Mat1& b) {
  Mat1 r;
  r.v = a.v - b.v;
  r.partial.resize(a.partial.size());
  for (size_t k = 0; k < a.partial.size(); ++k) r.partial[k] = a.partial[k] - b.partial[k];
  return r;
}

Mat1 mat1_scale(const Mat1& a, double s) {
  Mat1 r = a;
  r.v *= s;
  for (auto& p : r.partial) p *= s;
  return r;
}

Vec1 mat1_apply(const Mat1& a, const Vec1& x) {
  Vec1 r;
  r.v = a.v * x.v;
  r.jac = a.v * x.jac;
  for (size_t k = 0; k < a.partial.size(); ++k) r.jac.col(k) += a.partial[k] * x.v;
  return r;
}

Mat1 outer1(const Vec1& col, const Vec1& row) {
  Mat1 r;
  r.v = col.v * row.v.transpose();
  r.partial.resize(col.jac.cols());
  for (int k = 0; k < col.jac.cols(); ++k)
    r.partial[k] = col.jac.col(k) * row.v.transpose() + col.v * row.jac.col(k).transpose();
  return r;
}

}  // namespace qs3
