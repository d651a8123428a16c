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

#ifndef QS3_CATALOG_HPP
#define QS3_CATALOG_HPP

#include <string>
#include <vector>

#include "qs3/manifold.hpp"

namespace qs3 {

// Right and left multiplication by the imaginary quaternion units i, j, k
// (alpha = 0, 1, 2) on one quaternionic coordinate block (a, b, c, d).
Eigen::Matrix4d quat_right(int alpha);
Eigen::Matrix4d quat_left(int alpha);

// Rotation generators acting on the three Reeb coordinates of the flat model.
Eigen::Matrix3d reeb_rot(int alpha);

// R^{4n+3} with the euclidean metric, left quaternion multiplication on the
// 4n-dimensional factor and rotation generators on the last three
// coordinates: three commuting cosymplectic structures of rank one.
ChartedManifold flat_cosymplectic(int n);

// Unit sphere S^{4n+3} in quaternionic coordinates, charted by inverse
// stereographic projection; the Reeb fields are right multiplications by
// i, j, k and give the round 3-Sasakian structure with transverse constant 2.
ChartedManifold sphere_3sasakian(int n);

// Constant rescaling g -> a g, xi -> xi / sqrt(a), phi unchanged; maps a
// structure with transverse constant c0 to one with c0 / sqrt(a).
ChartedManifold homothety(const ChartedManifold& base, double factor, const std::string& name);

// Metric product of the sphere S^{4l+3} with flat H^m; the flat factor
// carries left quaternion multiplication, so the rank drops to 4l+3.
ChartedManifold product_3qs(int l, int m);

struct CatalogEntry {
  std::string name;
  int dim;
  std::string summary;
};

// Fixed members; "csasakian7:c=<value>" is listed with its parameter slot.
std::vector<CatalogEntry> catalog_entries();

// Builds a member from a catalog name such as "sphere7" or
// "csasakian7:c=4".  Unknown names raise invalid_argument.
ChartedManifold catalog_open(const std::string& name);

}  // namespace qs3

#endif
