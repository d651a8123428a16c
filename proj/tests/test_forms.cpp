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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qs3/forms.hpp"
#include "qs3/sampling.hpp"

using namespace qs3;

namespace {

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Wedge evaluated from first principles: the alternating sum over all
// permutations with the determinant normalization 1/(k! l!).
double wedge_eval_oracle(const AltForm& a, const AltForm& b, const std::vector<Eigen::VectorXd>& v) {
  const int k = a.degree(), l = b.degree();
  std::vector<int> perm(k + l);
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<Eigen::VectorXd> va, vb;
    for (int i = 0; i < k; ++i) va.push_back(v[perm[i]]);
    for (int i = 0; i < l; ++i) vb.push_back(v[perm[k + i]]);
    sum += perm_sign(perm) * a.eval(va) * b.eval(vb);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / (factorial(k) * factorial(l));
}

AltForm random_form(Sampler& rng, int dim, int degree) {
  AltForm f(dim, degree);
  for (int r = 0; r < f.size(); ++r) f.comp_at(r) = rng.symmetric();
  return f;
}

Eigen::VectorXd basis(int d, int i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  e(i) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("coordinate two-form evaluates to one on its own basis pair") {
  AltForm a(4, 1), b(4, 1);
  a.comp({0}) = 1.0;  // dx^1
  b.comp({1}) = 1.0;  // dx^2
  AltForm w = wedge(a, b);
  CHECK(w.eval({basis(4, 0), basis(4, 1)}) == doctest::Approx(1.0));
  CHECK(w.eval({basis(4, 1), basis(4, 0)}) == doctest::Approx(-1.0));
  CHECK(w.comp({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("square of a symplectic-style sum doubles the top component") {
  AltForm w(4, 2);
  w.comp({0, 1}) = 1.0;
  w.comp({2, 3}) = 1.0;
  AltForm ww = wedge(w, w);
  CHECK(ww.eval({basis(4, 0), basis(4, 1), basis(4, 2), basis(4, 3)}) == doctest::Approx(2.0));
}

TEST_CASE("wedge agrees with the alternating permutation sum") {
  Sampler rng(5);
  struct Case {
    int d, ka, kb;
  };
  for (Case c : {Case{4, 1, 1}, Case{4, 1, 2}, Case{5, 2, 2}, Case{5, 1, 3}, Case{6, 2, 3}}) {
    AltForm a = random_form(rng, c.d, c.ka), b = random_form(rng, c.d, c.kb);
    AltForm w = wedge(a, b);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Eigen::VectorXd> v;
      for (int i = 0; i < c.ka + c.kb; ++i) v.push_back(rng.gaussian(c.d));
      double got = w.eval(v);
      double want = wedge_eval_oracle(a, b, v);
      CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
  }
}

TEST_CASE("wedge is graded commutative") {
  Sampler rng(6);
  for (int ka = 1; ka <= 3; ++ka)
    for (int kb = 1; kb <= 3; ++kb) {
      if (ka + kb > 5) continue;
      AltForm a = random_form(rng, 5, ka), b = random_form(rng, 5, kb);
      AltForm ab = wedge(a, b), ba = wedge(b, a);
      double sign = (ka * kb) % 2 == 0 ? 1.0 : -1.0;
      for (int r = 0; r < ab.size(); ++r) CHECK(ab.comp_at(r) == doctest::Approx(sign * ba.comp_at(r)));
    }
}

TEST_CASE("interior product is evaluation in the first slot and a graded derivation") {
  Sampler rng(7);
  AltForm a = random_form(rng, 5, 2), b = random_form(rng, 5, 2);
  Eigen::VectorXd x = rng.gaussian(5), y = rng.gaussian(5);

  AltForm ia = interior(x, a);
  CHECK(ia.degree() == 1);
  CHECK(ia.eval({y}) == doctest::Approx(a.eval({x, y})));

  AltForm lhs = interior(x, wedge(a, b));
  AltForm rhs = wedge(ia, b);
  rhs += wedge(a, interior(x, b));  // sign (+1) for even degree of a
  for (int r = 0; r < lhs.size(); ++r) CHECK(lhs.comp_at(r) == doctest::Approx(rhs.comp_at(r)));

  AltForm c = random_form(rng, 5, 1);
  AltForm lhs1 = interior(x, wedge(c, b));
  AltForm rhs1 = wedge(c, interior(x, b)) * -1.0;
  rhs1 += wedge(interior(x, c), b);
  for (int r = 0; r < lhs1.size(); ++r) CHECK(lhs1.comp_at(r) == doctest::Approx(rhs1.comp_at(r)));
}

TEST_CASE("signed component lookup sorts indices and kills duplicates") {
  AltForm w(4, 2);
  w.comp({1, 3}) = 2.5;
  CHECK(w.component_signed({1, 3}) == doctest::Approx(2.5));
  CHECK(w.component_signed({3, 1}) == doctest::Approx(-2.5));
  CHECK(w.component_signed({2, 2}) == 0.0);
}

TEST_CASE("covector and skew-matrix constructors evaluate as expected") {
  Sampler rng(8);
  Eigen::VectorXd a = rng.gaussian(5), x = rng.gaussian(5), y = rng.gaussian(5);
  CHECK(AltForm::from_covector(a).eval({x}) == doctest::Approx(a.dot(x)));

  Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(5, 5, [&](Eigen::Index, Eigen::Index) { return rng.symmetric(); });
  Eigen::MatrixXd skew = m - m.transpose();
  CHECK(AltForm::from_skew_matrix(skew).eval({x, y}) == doctest::Approx(x.dot(skew * y)));
  CHECK_THROWS_AS(AltForm::from_skew_matrix(m), Error);
}

TEST_CASE("tuple ranks round trip and binomial matches the classic table") {
  CHECK(binomial(7, 2) == 21);
  CHECK(binomial(11, 3) == 165);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 4) == 1);
  for (int d : {4, 6, 7})
    for (int k : {1, 2, 3}) {
      TupleIndex t(d, k);
      CHECK(t.count() == binomial(d, k));
      for (int r = 0; r < t.count(); ++r) {
        std::vector<int> idx = t.unrank(r);
        CHECK(static_cast<int>(idx.size()) == k);
        for (size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1] < idx[i]);
        CHECK(t.rank(idx) == r);
      }
    }
}

TEST_CASE("skew spectrum of a padded rotation block") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(0, 1) = 2.0;
  a(1, 0) = -2.0;
  SkewSpectrum s = skew_spectrum(a);
  CHECK(s.rank == 2);
  CHECK(s.singular_values(0) == doctest::Approx(2.0));
  CHECK(s.singular_values(1) == doctest::Approx(2.0));
  REQUIRE(s.kernel.cols() == 2);
  CHECK((a * s.kernel).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.kernel.transpose() * s.kernel - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("skew spectrum rank thresholding with a guard band") {
  auto two_blocks = [](double s) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    a(0, 1) = 1.0;
    a(1, 0) = -1.0;
    a(2, 3) = s;
    a(3, 2) = -s;
    return a;
  };
  CHECK(skew_spectrum(two_blocks(1e-3)).rank == 4);
  CHECK(skew_spectrum(two_blocks(1e-10)).rank == 2);
  CHECK_THROWS_AS(skew_spectrum(two_blocks(1e-7)), Error);
  try {
    skew_spectrum(two_blocks(2e-7));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::indeterminate_rank);
  }
  CHECK(skew_spectrum(Eigen::MatrixXd::Zero(3, 3)).rank == 0);
  CHECK(skew_spectrum(Eigen::MatrixXd::Zero(3, 3)).kernel.cols() == 3);

  Eigen::MatrixXd notskew = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(skew_spectrum(notskew), Error);
}

TEST_CASE("rank of a two-form shows up as the last nonzero wedge power") {
  auto wedge_power_rank = [](const AltForm& w, int dim) {
    AltForm p = w;
    int r = 1;
    while (2 * (r + 1) <= dim) {
      AltForm q = wedge(p, w);
      if (q.max_abs() <= 1e-9) break;
      p = q;
      ++r;
    }
    return 2 * r;
  };
  for (int blocks = 1; blocks <= 3; ++blocks) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(7, 7);
    for (int b = 0; b < blocks; ++b) {
      a(2 * b, 2 * b + 1) = 1.0 + 0.5 * b;
      a(2 * b + 1, 2 * b) = -(1.0 + 0.5 * b);
    }
    CHECK(skew_spectrum(a).rank == 2 * blocks);
    CHECK(wedge_power_rank(AltForm::from_skew_matrix(a), 7) == 2 * blocks);
  }
}

TEST_CASE("orthonormalize produces a metric-orthonormal frame spanning the input") {
  Sampler rng(9);
  Eigen::MatrixXd b = Eigen::MatrixXd::NullaryExpr(5, 5, [&](Eigen::Index, Eigen::Index) { return rng.symmetric(); });
  Eigen::MatrixXd g = b * b.transpose() + 5.0 * Eigen::MatrixXd::Identity(5, 5);

  std::vector<Eigen::VectorXd> vecs;
  for (int i = 0; i < 3; ++i) vecs.push_back(rng.gaussian(5));
  std::vector<Eigen::VectorXd> on = orthonormalize(vecs, g);
  REQUIRE(on.size() == 3);
  for (size_t i = 0; i < on.size(); ++i)
    for (size_t j = 0; j < on.size(); ++j)
      CHECK(on[i].dot(g * on[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));

  // Same span: each input is reproduced by its g-projection onto the frame.
  for (const Eigen::VectorXd& v : vecs) {
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(5);
    for (const Eigen::VectorXd& e : on) proj += e.dot(g * v) * e;
    CHECK((proj - v).cwiseAbs().maxCoeff() <= 1e-9 * v.cwiseAbs().maxCoeff());
  }

  std::vector<Eigen::VectorXd> dep = {vecs[0], vecs[1], vecs[0] + vecs[1]};
  CHECK_THROWS_AS(orthonormalize(dep, g), Error);
}

TEST_CASE("metric frame validates symmetry and positivity") {
  Eigen::MatrixXd g(2, 2);
  g << 2.0, 0.5, 0.5, 1.0;
  MetricFrame f = MetricFrame::from_metric(g);
  CHECK((f.g_inv * g - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  Eigen::VectorXd x(2);
  x << 1.0, -1.0;
  CHECK(f.norm(x) == doctest::Approx(std::sqrt(x.dot(g * x))));

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.2, 0.0, 1.0;
  CHECK_THROWS_AS(MetricFrame::from_metric(asym), Error);
  Eigen::MatrixXd neg(2, 2);
  neg << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(MetricFrame::from_metric(neg), Error);
  try {
    MetricFrame::from_metric(neg);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_spd_metric);
  }
}

TEST_CASE("form arithmetic") {
  Sampler rng(10);
  AltForm a = random_form(rng, 4, 2), b = random_form(rng, 4, 2);
  AltForm s = a;
  s += b;
  AltForm d = a;
  d -= b;
  for (int r = 0; r < a.size(); ++r) {
    CHECK(s.comp_at(r) == doctest::Approx(a.comp_at(r) + b.comp_at(r)));
    CHECK(d.comp_at(r) == doctest::Approx(a.comp_at(r) - b.comp_at(r)));
    CHECK((a * 2.0).comp_at(r) == doctest::Approx(2.0 * a.comp_at(r)));
  }
  AltForm m(3, 1);
  m.comp({0}) = -4.0;
  m.comp({2}) = 3.0;
  CHECK(m.max_abs() == doctest::Approx(4.0));

  AltForm wrong(5, 2);
  CHECK_THROWS_AS(s += wrong, Error);
}

TEST_CASE("evaluation is multilinear and alternating") {
  Sampler rng(11);
  AltForm w = random_form(rng, 5, 3);
  Eigen::VectorXd x = rng.gaussian(5), y = rng.gaussian(5), z = rng.gaussian(5);
  CHECK(w.eval({x, y, z}) == doctest::Approx(-w.eval({y, x, z})));
  CHECK(w.eval({x, x, z}) == doctest::Approx(0.0).epsilon(1e-12));
  double a = rng.symmetric(), b = rng.symmetric();
  CHECK(w.eval({a * x + b * y, y, z}) == doctest::Approx(a * w.eval({x, y, z}) + b * w.eval({y, y, z})));
}
