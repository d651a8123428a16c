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

#ifndef QS3_SAMPLING_HPP
#define QS3_SAMPLING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace qs3 {

// Deterministic sampling built on mt19937_64, whose output sequence is fixed
// by the standard.  The mapping from raw bits to doubles is done by hand so
// identical seeds give identical draws on any platform.
class Sampler {
public:
  explicit Sampler(uint64_t seed) : eng_(seed) {}

  double unit();                       // [0, 1)
  double symmetric();                  // [-1, 1)
  Eigen::VectorXd gaussian(int d);     // componentwise standard normal
  Eigen::VectorXd in_ball(int d, double radius = 1.0);
  Eigen::VectorXd direction(int d);    // euclidean unit vector

  // Unit vector for the metric g, optionally restricted by a projector
  // applied before normalization.  Redraws while the projected vector is
  // negligible.
  Eigen::VectorXd g_unit(const Eigen::MatrixXd& g);
  Eigen::VectorXd g_unit_projected(const Eigen::MatrixXd& g, const Eigen::MatrixXd& projector);

private:
  std::mt19937_64 eng_;
};

// Stream-splitting hash so per-point generators do not depend on scheduling.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

}  // namespace qs3

#endif
