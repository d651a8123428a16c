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

#ifndef QS3_FD_HPP
#define QS3_FD_HPP

#include "qs3/contact.hpp"
#include "qs3/geometry.hpp"

namespace qs3 {

// Finite-difference cross-checks of the jet-propagated geometry.  These
// recompute the same objects from metric values alone (or from one fewer
// derivative order), so agreement rules out systematic errors in the
// derivative bookkeeping rather than just in the formulas.

// Metric values at a point without seeding any derivatives.
Eigen::MatrixXd metric_values(const ChartedManifold& m, const Eigen::VectorXd& p);

// Christoffel symbols from central differences of metric values.
std::vector<Eigen::MatrixXd> fd_christoffel(const ChartedManifold& m, const Eigen::VectorXd& p,
                                            double h = 1e-4);

// Curvature from central differences of the jet-computed Christoffel
// symbols; only the derivative step is approximate.
Tensor4 fd_riemann(const ChartedManifold& m, const Eigen::VectorXd& p, double h = 1e-4);

ResidualStat fd_christoffel_residual(const ChartedManifold& m, const Eigen::VectorXd& p,
                                     double h = 1e-4);
ResidualStat fd_riemann_residual(const ChartedManifold& m, const Eigen::VectorXd& p,
                                 double h = 1e-4);

// nabla g = 0 from jet partials and the computed connection.
ResidualStat metric_compatibility_residual(const ChartedManifold& m, const Eigen::VectorXd& p);

}  // namespace qs3

#endif
