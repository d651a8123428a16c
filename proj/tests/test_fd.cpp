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

#include "qs3/catalog.hpp"
#include "qs3/fd.hpp"

using namespace qs3;

namespace {

constexpr const char* kMembers[] = {"sphere7", "flat7", "product11", "csasakian7:c=4"};

Eigen::VectorXd sample_point(const ChartedManifold& m, Sampler& s) {
  // Leave room for the difference stencil inside the chart.
  return s.in_ball(m.dim, 0.5 * m.domain_radius);
}

}  // namespace

TEST_CASE("difference-quotient connection matches the jet route") {
  Sampler s(701);
  for (const char* name : kMembers) {
    ChartedManifold m = catalog_open(name);
    for (int trial = 0; trial < 3; ++trial) {
      ResidualStat r = fd_christoffel_residual(m, sample_point(m, s));
      CAPTURE(name);
      CHECK(r.normalized() < 1e-5);
    }
  }
}

TEST_CASE("difference-quotient curvature matches the jet route") {
  Sampler s(702);
  for (const char* name : kMembers) {
    ChartedManifold m = catalog_open(name);
    for (int trial = 0; trial < 2; ++trial) {
      ResidualStat r = fd_riemann_residual(m, sample_point(m, s));
      CAPTURE(name);
      CHECK(r.normalized() < 1e-5);
    }
  }
}

TEST_CASE("the connection is metric") {
  Sampler s(703);
  for (const char* name : kMembers) {
    ChartedManifold m = catalog_open(name);
    for (int trial = 0; trial < 3; ++trial) {
      ResidualStat r = metric_compatibility_residual(m, sample_point(m, s));
      CAPTURE(name);
      CHECK(r.normalized() < 1e-12);
    }
  }
}

TEST_CASE("curvature symmetries hold on every member") {
  Sampler s(704);
  for (const char* name : kMembers) {
    ChartedManifold m = catalog_open(name);
    PointGeometry geo = riemann_at(m, sample_point(m, s));
    CAPTURE(name);
    CHECK(geo.symmetry_residual() < 1e-9);
  }
}

TEST_CASE("a coarse stencil is visibly worse on a curved member") {
  Sampler s(705);
  ChartedManifold m = catalog_open("sphere7");
  const Eigen::VectorXd p = s.in_ball(m.dim, 0.1);
  ResidualStat fine = fd_christoffel_residual(m, p, 1e-4);
  ResidualStat coarse = fd_christoffel_residual(m, p, 0.3);
  CHECK(fine.normalized() < 1e-6);
  CHECK(coarse.normalized() > 1e-4);
  CHECK_THROWS_AS(fd_christoffel(m, p, 0.0), Error);
  CHECK_THROWS_AS(fd_riemann(m, p, -1.0), Error);
}

TEST_CASE("flat member difference quotients vanish identically") {
  Sampler s(706);
  ChartedManifold m = catalog_open("flat7");
  const Eigen::VectorXd p = sample_point(m, s);
  for (const Eigen::MatrixXd& gk : fd_christoffel(m, p))
    CHECK(gk.cwiseAbs().maxCoeff() == 0.0);
  CHECK(fd_riemann(m, p).max_abs() == 0.0);
}
