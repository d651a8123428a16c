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

#include "qs3/sampling.hpp"

#include <cmath>

#include "qs3/errors.hpp"

namespace qs3 {

double Sampler::unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Sampler::symmetric() { return 2.0 * unit() - 1.0; }

Eigen::VectorXd Sampler::gaussian(int d) {
  Eigen::VectorXd v(d);
  int i = 0;
  while (i < d) {
    // Box-Muller; u1 is kept away from zero so the log stays finite.
    double u1 = unit(), u2 = unit();
    u1 = std::max(u1, 0x1.0p-60);
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    v(i++) = r * std::cos(a);
    if (i < d) v(i++) = r * std::sin(a);
  }
  return v;
}

Eigen::VectorXd Sampler::direction(int d) {
  while (true) {
    Eigen::VectorXd v = gaussian(d);
    double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

Eigen::VectorXd Sampler::in_ball(int d, double radius) {
  Eigen::VectorXd dir = direction(d);
  double r = radius * std::pow(unit(), 1.0 / d);
  return r * dir;
}

Eigen::VectorXd Sampler::g_unit(const Eigen::MatrixXd& g) {
  return g_unit_projected(g, Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Eigen::VectorXd Sampler::g_unit_projected(const Eigen::MatrixXd& g, const Eigen::MatrixXd& projector) {
  const int d = static_cast<int>(g.rows());
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::VectorXd v = projector * gaussian(d);
    double n2 = v.dot(g * v);
    if (n2 > 1e-12) return v / std::sqrt(n2);
  }
  fail(Errc::degenerate_input, "g_unit_projected: projector annihilates every draw");
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  // splitmix64 finalizer over the combined words
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qs3
