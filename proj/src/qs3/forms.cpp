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

#include "qs3/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qs3 {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

TupleIndex::TupleIndex(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim) fail(Errc::invalid_argument, "TupleIndex: bad degree");
  count_ = static_cast<int>(binomial(dim, degree));
}

int TupleIndex::rank(const std::vector<int>& idx) const {
  int r = 0, prev = -1;
  for (int a = 0; a < degree_; ++a) {
    for (int j = prev + 1; j < idx[a]; ++j) r += static_cast<int>(binomial(dim_ - 1 - j, degree_ - 1 - a));
    prev = idx[a];
  }
  return r;
}

std::vector<int> TupleIndex::unrank(int r) const {
  std::vector<int> idx(degree_);
  int prev = -1;
  for (int a = 0; a < degree_; ++a) {
    int j = prev + 1;
    while (true) {
      int block = static_cast<int>(binomial(dim_ - 1 - j, degree_ - 1 - a));
      if (r < block) break;
      r -= block;
      ++j;
    }
    idx[a] = j;
    prev = j;
  }
  return idx;
}

AltForm::AltForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 0 || degree < 0 || degree > dim) fail(Errc::invalid_argument, "AltForm: bad degree");
  c_.assign(static_cast<size_t>(binomial(dim, degree)), 0.0);
}

AltForm AltForm::from_covector(const Eigen::VectorXd& a) {
  AltForm f(static_cast<int>(a.size()), 1);
  for (int i = 0; i < a.size(); ++i) f.c_[i] = a(i);
  return f;
}

AltForm AltForm::from_skew_matrix(const Eigen::MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) fail(Errc::invalid_argument, "from_skew_matrix: not square");
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(Errc::invalid_argument, "from_skew_matrix: matrix is not skew-symmetric");
  AltForm f(d, 2);
  TupleIndex ti(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) f.c_[ti.rank({i, j})] = 0.5 * (a(i, j) - a(j, i));
  return f;
}

double& AltForm::comp(const std::vector<int>& idx) {
  TupleIndex ti(dim_, degree_);
  return c_[ti.rank(idx)];
}

double AltForm::comp(const std::vector<int>& idx) const {
  TupleIndex ti(dim_, degree_);
  return c_[ti.rank(idx)];
}

double AltForm::component_signed(std::vector<int> idx) const {
  int sign = 1;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0.0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  return sign * comp(idx);
}

double AltForm::eval(const std::vector<Eigen::VectorXd>& args) const {
  if (static_cast<int>(args.size()) != degree_) fail(Errc::invalid_argument, "AltForm::eval: arity mismatch");
  if (degree_ == 0) return c_[0];
  TupleIndex ti(dim_, degree_);
  double total = 0.0;
  Eigen::MatrixXd minor(degree_, degree_);
  for (int r = 0; r < static_cast<int>(c_.size()); ++r) {
    if (c_[r] == 0.0) continue;
    std::vector<int> idx = ti.unrank(r);
    for (int a = 0; a < degree_; ++a)
      for (int b = 0; b < degree_; ++b) minor(a, b) = args[a](idx[b]);
    total += c_[r] * minor.determinant();
  }
  return total;
}

double AltForm::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

AltForm& AltForm::operator+=(const AltForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) fail(Errc::dimension_mismatch, "AltForm +=");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

AltForm& AltForm::operator-=(const AltForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) fail(Errc::dimension_mismatch, "AltForm -=");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

AltForm AltForm::operator*(double s) const {
  AltForm r = *this;
  for (double& v : r.c_) v *= s;
  return r;
}

namespace {

// Sign of the permutation taking concat(first, second) to the merged
// increasing tuple, where `first_positions` lists the slots of the first
// factor.  Each second-factor slot sitting left of a first-factor slot
// contributes one inversion.
int shuffle_sign(const std::vector<int>& first_positions, int total) {
  int inv = 0;
  int firsts_to_right = static_cast<int>(first_positions.size());
  size_t fp = 0;
  for (int pos = 0; pos < total; ++pos) {
    if (fp < first_positions.size() && first_positions[fp] == pos) {
      --firsts_to_right;
      ++fp;
    } else {
      inv += firsts_to_right;
    }
  }
  return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace

AltForm wedge(const AltForm& a, const AltForm& b) {
  if (a.dim_ != b.dim_) fail(Errc::dimension_mismatch, "wedge: dimension mismatch");
  const int d = a.dim_, k = a.degree_, l = b.degree_;
  if (k + l > d) fail(Errc::invalid_argument, "wedge: degree overflow");
  AltForm r(d, k + l);
  TupleIndex tr(d, k + l), ta(d, k), tb(d, l);
  std::vector<int> sel(k);  // positions of the a-factor inside the result tuple
  for (int rr = 0; rr < static_cast<int>(r.c_.size()); ++rr) {
    std::vector<int> idx = tr.unrank(rr);
    double sum = 0.0;
    // Iterate over all k-subsets of positions {0..k+l-1}.
    for (int a0 = 0; a0 < k; ++a0) sel[a0] = a0;
    while (true) {
      std::vector<int> ia(k), ib;
      ib.reserve(l);
      size_t sp = 0;
      for (int pos = 0; pos < k + l; ++pos) {
        if (sp < sel.size() && sel[sp] == pos) {
          ia[sp] = idx[pos];
          ++sp;
        } else {
          ib.push_back(idx[pos]);
        }
      }
      double ca = (k == 0) ? a.c_[0] : a.c_[ta.rank(ia)];
      double cb = (l == 0) ? b.c_[0] : b.c_[tb.rank(ib)];
      if (ca != 0.0 && cb != 0.0) sum += shuffle_sign(sel, k + l) * ca * cb;
      // next k-subset in lexicographic order
      int i = k - 1;
      while (i >= 0 && sel[i] == l + i) --i;
      if (i < 0) break;
      ++sel[i];
      for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
    r.c_[rr] = sum;
  }
  return r;
}

AltForm interior(const Eigen::VectorXd& x, const AltForm& a) {
  if (static_cast<int>(x.size()) != a.dim_) fail(Errc::dimension_mismatch, "interior: dimension mismatch");
  if (a.degree_ < 1) fail(Errc::invalid_argument, "interior: degree must be at least 1");
  const int d = a.dim_, k = a.degree_;
  AltForm r(d, k - 1);
  TupleIndex tr(d, k - 1), ta(d, k);
  for (int rr = 0; rr < static_cast<int>(r.c_.size()); ++rr) {
    std::vector<int> idx = (k - 1 == 0) ? std::vector<int>{} : tr.unrank(rr);
    double sum = 0.0;
    for (int m = 0; m < d; ++m) {
      if (x(m) == 0.0) continue;
      // omega(x, e_{idx}) = sum_m x^m omega_{m, idx}; insert m into the tuple.
      bool dup = false;
      int below = 0;
      for (int j : idx) {
        if (j == m) {
          dup = true;
          break;
        }
        if (j < m) ++below;
      }
      if (dup) continue;
      std::vector<int> full;
      full.reserve(k);
      bool inserted = false;
      for (int j : idx) {
        if (!inserted && m < j) {
          full.push_back(m);
          inserted = true;
        }
        full.push_back(j);
      }
      if (!inserted) full.push_back(m);
      double sign = (below % 2 == 0) ? 1.0 : -1.0;
      sum += x(m) * sign * a.c_[ta.rank(full)];
    }
    r.c_[rr] = sum;
  }
  return r;
}

SkewSpectrum skew_spectrum(const Eigen::MatrixXd& a, double tol) {
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) fail(Errc::invalid_argument, "skew_spectrum: not square");
  double scale = a.cwiseAbs().maxCoeff();
  if (scale > 0.0 && (a + a.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    fail(Errc::invalid_argument, "skew_spectrum: matrix is not skew-symmetric");

  SkewSpectrum out;
  if (scale == 0.0) {
    out.rank = 0;
    out.singular_values = Eigen::VectorXd::Zero(d);
    out.kernel = Eigen::MatrixXd::Identity(d, d);
    return out;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double thresh = tol * out.singular_values(0);

  std::ostringstream sv_text;
  for (int i = 0; i < d; ++i) sv_text << (i ? " " : "") << out.singular_values(i);

  int rank = 0;
  for (int i = 0; i < d; ++i) {
    double sv = out.singular_values(i);
    // A value close to the threshold means the rank decision is unreliable.
    if (sv > thresh / 32.0 && sv < thresh * 32.0)
      fail(Errc::indeterminate_rank, "skew_spectrum: singular value near tolerance; spectrum: " + sv_text.str());
    if (sv > thresh) ++rank;
  }
  if (rank % 2 != 0)
    fail(Errc::indeterminate_rank, "skew_spectrum: odd rank for skew input; spectrum: " + sv_text.str());

  out.rank = rank;
  out.kernel = svd.matrixV().rightCols(d - rank);
  return out;
}

std::vector<Eigen::VectorXd> orthonormalize(const std::vector<Eigen::VectorXd>& vecs,
                                            const Eigen::MatrixXd& g) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(vecs.size());
  for (const auto& v0 : vecs) {
    Eigen::VectorXd v = v0;
    double orig = std::sqrt(std::max(0.0, v.dot(g * v)));
    for (const auto& e : out) v -= e.dot(g * v) * e;
    // second pass for numerical orthogonality
    for (const auto& e : out) v -= e.dot(g * v) * e;
    double n = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (n <= 1e-10 * std::max(1.0, orig))
      fail(Errc::degenerate_input, "orthonormalize: rank-deficient input");
    v /= n;
    for (int i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    out.push_back(v);
  }
  return out;
}

MetricFrame MetricFrame::from_metric(const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(g.rows());
  if (g.cols() != d) fail(Errc::invalid_argument, "MetricFrame: not square");
  double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(Errc::non_spd_metric, "MetricFrame: metric is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) fail(Errc::non_spd_metric, "MetricFrame: metric is not positive definite");
  MetricFrame f;
  f.g = g;
  f.g_inv = llt.solve(Eigen::MatrixXd::Identity(d, d));
  return f;
}

double MetricFrame::norm(const Eigen::VectorXd& a) const {
  return std::sqrt(std::max(0.0, a.dot(g * a)));
}

}  // namespace qs3
