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
#include <vector>

#include "qs3/jet.hpp"
#include "qs3/sampling.hpp"

using namespace qs3;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

// Straight-line program over the jet instruction set, used to compare jet
// derivatives against finite differences of plain evaluations.
struct Instr {
  JetOp op;
  int a = -1, b = -1;
  long n = 0;
};

struct Program {
  int n_vars = 0;
  std::vector<double> consts;
  std::vector<Instr> code;

  Jet2 run(const JetVec& vars) const {
    std::vector<Jet2> slot;
    for (const Jet2& v : vars) slot.push_back(v);
    for (double c : consts) slot.push_back(Jet2(c));
    for (const Instr& in : code) {
      switch (in.op) {
        case JetOp::neg:
        case JetOp::recip:
        case JetOp::sqrt:
          slot.push_back(jet_apply(in.op, slot[in.a]));
          break;
        case JetOp::pow_int:
          slot.push_back(jet_apply(in.op, slot[in.a], in.n));
          break;
        default:
          slot.push_back(jet_apply(in.op, slot[in.a], slot[in.b]));
      }
    }
    return slot.back();
  }

  double run_plain(const Eigen::VectorXd& x) const {
    JetVec vars;
    for (int i = 0; i < n_vars; ++i) vars.push_back(Jet2(x(i)));
    return run(vars).value();
  }

  Jet2 run_jets(const Eigen::VectorXd& x) const {
    JetVec vars;
    for (int i = 0; i < n_vars; ++i) vars.push_back(jet_var(x(i), i, n_vars));
    return run(vars);
  }
};

// Random program whose intermediate values stay away from singular inputs:
// every divisor, reciprocal argument and square-root argument has the shape
// 1 + s^2 >= 1.  Slot layout: 0..2 variables, 3..4 random constants, 5 = 1.
Program random_program(Sampler& rng, int n_ops) {
  Program p;
  p.n_vars = 3;
  p.consts = {rng.symmetric(), rng.symmetric(), 1.0};
  const int one = 5;
  int top = p.n_vars + static_cast<int>(p.consts.size());
  auto pick = [&](int bound) { return static_cast<int>(rng.unit() * bound); };
  auto guard = [&](int s) {  // pushes 1 + s^2, returns its slot
    p.code.push_back({JetOp::mul, s, s});
    p.code.push_back({JetOp::add, top, one});
    top += 2;
    return top - 1;
  };
  for (int i = 0; i < n_ops; ++i) {
    int choice = pick(8);
    int a = pick(top), b = pick(top);
    switch (choice) {
      case 0: p.code.push_back({JetOp::add, a, b}); ++top; break;
      case 1: p.code.push_back({JetOp::sub, a, b}); ++top; break;
      case 2: p.code.push_back({JetOp::mul, a, b}); ++top; break;
      case 3: p.code.push_back({JetOp::div, a, guard(b)}); ++top; break;
      case 4: p.code.push_back({JetOp::recip, guard(b)}); ++top; break;
      case 5: p.code.push_back({JetOp::sqrt, guard(b)}); ++top; break;
      case 6: p.code.push_back({JetOp::neg, a}); ++top; break;
      case 7: {
        long n = static_cast<long>(pick(5)) - 2;  // -2..2, negative bases guarded
        if (n < 0) a = guard(a);
        p.code.push_back({JetOp::pow_int, a, -1, n});
        ++top;
        break;
      }
    }
  }
  // Final: average the last two slots to keep magnitudes tame.
  p.code.push_back({JetOp::add, top - 1, top - 2});
  return p;
}

}  // namespace

TEST_CASE("squaring a coordinate produces the classic first and second derivatives") {
  Jet2 x = jet_var(3.0, 0, 1);
  Jet2 y = x * x;
  CHECK(y.value() == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(y.grad()(0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(y.hess()(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("square root jet at 4") {
  Jet2 r = sqrt(jet_var(4.0, 0, 1));
  CHECK(r.value() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.grad()(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.hess()(0, 0) == doctest::Approx(-0.03125).epsilon(1e-15));
}

TEST_CASE("reciprocal of 1+x^2 at x=1") {
  Jet2 x = jet_var(1.0, 0, 1);
  Jet2 r = recip(1.0 + x * x);
  CHECK(r.value() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.grad()(0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(r.hess()(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("integer powers") {
  Jet2 x = jet_var(2.0, 0, 1);
  Jet2 c = pow_int(x, 3);
  CHECK(c.value() == doctest::Approx(8.0));
  CHECK(c.grad()(0) == doctest::Approx(12.0));
  CHECK(c.hess()(0, 0) == doctest::Approx(12.0));

  Jet2 z = pow_int(x, 0);
  CHECK(z.value() == 1.0);
  CHECK(z.grad()(0) == 0.0);
  CHECK(z.hess()(0, 0) == 0.0);

  Jet2 m = pow_int(x, -2);  // x^-2: value 1/4, d = -2 x^-3 = -1/4, d2 = 6 x^-4 = 3/8
  CHECK(m.value() == doctest::Approx(0.25));
  CHECK(m.grad()(0) == doctest::Approx(-0.25));
  CHECK(m.hess()(0, 0) == doctest::Approx(0.375));
}

TEST_CASE("constants of dimension zero mix with variables of any dimension") {
  Jet2 x = jet_var(2.0, 0, 2);
  Jet2 r = x * Jet2(3.0) + Jet2(1.0);
  CHECK(r.value() == 7.0);
  CHECK(r.dim() == 2);
  CHECK(r.grad()(0) == 3.0);
  CHECK(r.grad()(1) == 0.0);
}

TEST_CASE("mixing distinct nonzero dimensions is an error") {
  Jet2 a = jet_var(1.0, 0, 2);
  Jet2 b = jet_var(1.0, 0, 3);
  CHECK_THROWS_AS(a + b, Error);
  try {
    a* b;
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
}

TEST_CASE("singular evaluations carry the singular_evaluation code") {
  Jet2 z = jet_var(0.0, 0, 1);
  CHECK_THROWS_AS(Jet2(1.0) / z, Error);
  CHECK_THROWS_AS(recip(z), Error);
  CHECK_THROWS_AS(sqrt(-1.0 + z), Error);
  CHECK_THROWS_AS(sqrt(z), Error);
  CHECK_THROWS_AS(pow_int(z, -1), Error);
  try {
    recip(z);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_evaluation);
  }
}

TEST_CASE("product hessians are bitwise symmetric") {
  Sampler rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 4;
    Jet2 a = jet_var(rng.symmetric(), 0, d), b = jet_var(rng.symmetric(), 1, d);
    Jet2 c = jet_var(rng.symmetric(), 2, d), e = jet_var(rng.symmetric(), 3, d);
    Jet2 r = (a + 2.0 * b) * (c - e) * (a * c + 1.5);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) CHECK(r.hess()(i, j) == r.hess()(j, i));
  }
}

TEST_CASE("jet derivatives of random guarded programs match finite differences") {
  Sampler rng(20260815);
  const double h = 1e-4;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Program p = random_program(rng, 8);
    Eigen::VectorXd x = 0.8 * Eigen::VectorXd::NullaryExpr(3, [&](Eigen::Index) { return rng.symmetric(); });
    Jet2 r = p.run_jets(x);
    if (r.dim() == 0) continue;  // the random draw never touched a variable

    double stencil_max = 0.0;
    auto plain = [&](const Eigen::VectorXd& q) {
      double v = p.run_plain(q);
      stencil_max = std::max(stencil_max, std::abs(v));
      return v;
    };

    Eigen::VectorXd grad_fd(3);
    Eigen::MatrixXd hess_fd(3, 3);
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      grad_fd(i) = (plain(xp) - plain(xm)) / (2 * h);
      hess_fd(i, i) = (plain(xp) - 2 * plain(x) + plain(xm)) / (h * h);
      for (int j = i + 1; j < 3; ++j) {
        Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
        xpp(i) += h; xpp(j) += h;
        xpm(i) += h; xpm(j) -= h;
        xmp(i) -= h; xmp(j) += h;
        xmm(i) -= h; xmm(j) -= h;
        hess_fd(i, j) = (plain(xpp) - plain(xpm) - plain(xmp) + plain(xmm)) / (4 * h * h);
        hess_fd(j, i) = hess_fd(i, j);
      }
    }

    // Second-order central differences lose ~|f| * eps / h^2 to roundoff, so
    // only well-scaled programs are informative.
    double mag = std::max({stencil_max, r.grad().cwiseAbs().maxCoeff(), r.hess().cwiseAbs().maxCoeff()});
    if (mag > 1e3) continue;

    for (int i = 0; i < 3; ++i) {
      CHECK(near(r.grad()(i), grad_fd(i), 1e-5));
      for (int j = 0; j < 3; ++j) CHECK(near(r.hess()(i, j), hess_fd(i, j), 1e-4));
    }
    ++checked;
  }
  CHECK(checked >= 70);
}

TEST_CASE("jet_apply dispatch agrees with the operators") {
  Jet2 a = jet_var(1.5, 0, 2), b = jet_var(-0.5, 1, 2);
  CHECK(jet_apply(JetOp::add, a, b).value() == (a + b).value());
  CHECK(jet_apply(JetOp::sub, a, b).grad()(1) == (a - b).grad()(1));
  CHECK(jet_apply(JetOp::mul, a, b).hess()(0, 1) == (a * b).hess()(0, 1));
  CHECK(jet_apply(JetOp::div, a, 1.0 + b * b).value() == (a / (1.0 + b * b)).value());
  CHECK(jet_apply(JetOp::neg, a).value() == -1.5);
  CHECK(jet_apply(JetOp::recip, a).value() == doctest::Approx(1.0 / 1.5));
  CHECK(jet_apply(JetOp::sqrt, a).value() == doctest::Approx(std::sqrt(1.5)));
  CHECK(jet_apply(JetOp::pow_int, a, 2L).value() == doctest::Approx(2.25));
  CHECK_THROWS_AS(jet_apply(JetOp::sqrt, a, b), Error);
  CHECK_THROWS_AS(jet_apply(JetOp::add, a), Error);
  CHECK_THROWS_AS(jet_apply(JetOp::add, a, 2L), Error);
}

TEST_CASE("one-by-one jet solve inverts a coordinate") {
  JetMatrix a(1, 1);
  a(0, 0) = jet_var(2.0, 0, 1);
  JetVec b{Jet2(1.0)};
  JetVec y = jet_solve(a, b);
  REQUIRE(y.size() == 1);
  CHECK(y[0].value() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y[0].grad()(0) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(y[0].hess()(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("three-by-three jet solve matches finite differences of plain solves") {
  const int d = 2;  // two chart variables
  auto build = [&](const JetVec& u) {
    JetMatrix a(3, 3);
    a(0, 0) = 3.0 + u[0] * u[0];
    a(0, 1) = u[0] * u[1];
    a(0, 2) = Jet2(0.25);
    a(1, 0) = u[1];
    a(1, 1) = 4.0 + u[1] * u[1];
    a(1, 2) = u[0] - u[1];
    a(2, 0) = Jet2(-0.5);
    a(2, 1) = u[0] * 0.5;
    a(2, 2) = 5.0 + u[0] * u[1];
    return a;
  };
  auto rhs = [&](const JetVec& u) { return JetVec{u[0] + 1.0, u[0] * u[1], 2.0 - u[1]}; };

  auto solve_plain = [&](const Eigen::VectorXd& x) {
    JetVec u{Jet2(x(0)), Jet2(x(1))};
    JetVec y = jet_solve(build(u), rhs(u));
    Eigen::VectorXd out(3);
    for (int i = 0; i < 3; ++i) out(i) = y[i].value();
    return out;
  };

  Eigen::VectorXd x(d);
  x << 0.3, -0.7;
  JetVec u{jet_var(x(0), 0, d), jet_var(x(1), 1, d)};
  JetVec y = jet_solve(build(u), rhs(u));

  const double h = 1e-4;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      double fd = (solve_plain(xp)(i) - solve_plain(xm)(i)) / (2 * h);
      CHECK(near(y[i].grad()(k), fd, 1e-7));
    }
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        double fd;
        if (k == l) {
          Eigen::VectorXd xp = x, xm = x;
          xp(k) += h;
          xm(k) -= h;
          fd = (solve_plain(xp)(i) - 2 * solve_plain(x)(i) + solve_plain(xm)(i)) / (h * h);
        } else {
          Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
          xpp(k) += h; xpp(l) += h;
          xpm(k) += h; xpm(l) -= h;
          xmp(k) -= h; xmp(l) += h;
          xmm(k) -= h; xmm(l) -= h;
          fd = (solve_plain(xpp)(i) - solve_plain(xpm)(i) - solve_plain(xmp)(i) + solve_plain(xmm)(i)) / (4 * h * h);
        }
        CHECK(near(y[i].hess()(k, l), fd, 1e-4));
      }
  }
}

TEST_CASE("solving against a matrix right-hand side matches columnwise solves") {
  JetMatrix a(2, 2);
  a(0, 0) = jet_var(2.0, 0, 2);
  a(0, 1) = Jet2(0.5);
  a(1, 0) = jet_var(0.25, 1, 2);
  a(1, 1) = Jet2(3.0);
  JetMatrix b(2, 2);
  b(0, 0) = Jet2(1.0);
  b(0, 1) = jet_var(2.0, 0, 2) * jet_var(0.25, 1, 2);
  b(1, 0) = Jet2(0.0);
  b(1, 1) = Jet2(1.0);
  JetMatrix x = jet_solve(a, b);
  for (int col = 0; col < 2; ++col) {
    JetVec bc{b(0, col), b(1, col)};
    JetVec xc = jet_solve(a, bc);
    for (int i = 0; i < 2; ++i) {
      CHECK(x(i, col).value() == doctest::Approx(xc[i].value()).epsilon(1e-14));
      CHECK(x(i, col).grad()(0) == doctest::Approx(xc[i].grad()(0)).epsilon(1e-13));
      CHECK(x(i, col).hess()(0, 1) == doctest::Approx(xc[i].hess()(0, 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("singular systems are rejected") {
  JetMatrix a(2, 2);
  a(0, 0) = jet_var(1.0, 0, 1);
  a(0, 1) = Jet2(2.0);
  a(1, 0) = jet_var(1.0, 0, 1);
  a(1, 1) = Jet2(2.0);
  JetVec b{Jet2(1.0), Jet2(2.0)};
  CHECK_THROWS_AS(jet_solve(a, b), Error);
  try {
    jet_solve(a, b);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_system);
  }
}

TEST_CASE("matrix helpers: product, transpose, identity, scaling") {
  Sampler rng(7);
  Eigen::MatrixXd ma = Eigen::MatrixXd::NullaryExpr(3, 3, [&](Eigen::Index, Eigen::Index) { return rng.symmetric(); });
  Eigen::MatrixXd mb = Eigen::MatrixXd::NullaryExpr(3, 3, [&](Eigen::Index, Eigen::Index) { return rng.symmetric(); });
  JetMatrix a = JetMatrix::constant(ma, 0), b = JetMatrix::constant(mb, 0);
  Eigen::MatrixXd prod = matmul(a, b).values();
  CHECK((prod - ma * mb).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((transpose(a).values() - ma.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((jet_scale(a, 2.0).values() - 2.0 * ma).cwiseAbs().maxCoeff() == 0.0);
  CHECK((JetMatrix::identity(4, 2).values() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  JetVec x{Jet2(1.0), Jet2(-2.0), Jet2(0.5)};
  JetVec y = matvec(a, x);
  Eigen::Vector3d xv(1.0, -2.0, 0.5);
  Eigen::VectorXd yv = ma * xv;
  for (int i = 0; i < 3; ++i) CHECK(y[i].value() == doctest::Approx(yv(i)).epsilon(1e-14));
}
