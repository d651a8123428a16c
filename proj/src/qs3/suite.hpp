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

#ifndef QS3_SUITE_HPP_
#define QS3_SUITE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qs3/identities.hpp"
#include "qs3/manifold.hpp"

namespace qs3 {

inline constexpr const char* kVersion = "0.1.0";

// Knobs for one verification run.  Identical configs on the same build
// produce byte-identical reports.
struct RunConfig {
  int points = 16;       // sample points in the chart
  int trials = 8;        // random argument draws per identity per point
  std::uint64_t seed = 42;
  double tol = 1e-8;     // pass bound on normalized residuals
  bool fd_check = true;  // difference-quotient cross-checks of the jets
};

// One line of evidence: the worst normalized residual of a named check over
// every sampled point and argument draw.  alpha 0 marks checks that operate
// on the whole structure rather than a single tensor of the triple.
struct CheckRow {
  std::string id;
  int alpha = 0;
  std::string description;
  double max_abs = 0.0;
  double scale = 0.0;
  double normalized = 0.0;
  int n_trials = 0;
  bool vacuous = false;  // every term stayed below the vacuity floor
  double tol = 0.0;      // bound this row was judged against
  bool pass = false;
  std::string note;      // diagnostic when evaluation aborted early
};

struct SuiteReport {
  std::string name;
  int dim = 0;
  int rank = 0;   // rank of each dEta at the sampled points
  int l = 0;      // factor sizes: dim = 4l + 4m + 3
  int m = 0;
  double c = 0.0;  // transverse constant from the Reeb brackets
  RunConfig config;
  std::vector<CheckRow> checks;  // sorted by (id, alpha)
  bool has_classification = false;
  Classification classification{};
  std::string classification_error;
  bool all_passed = false;
};

// Resolves a catalog name first, then falls back to reading the argument as
// the path of a manifold spec file.
ChartedManifold resolve_manifold(const std::string& name_or_path);

// Runs the full check slate at cfg.points sampled chart points.  Points are
// processed independently (QS3_THREADS caps the worker count) and merged in
// index order, so the report does not depend on scheduling.  A point where
// the structure tensors fail to close into a 3-quasi-Sasakian structure
// contributes a failed EVALUATION row instead of aborting the run.
SuiteReport run_suite(const ChartedManifold& m, const RunConfig& cfg);

// Deterministic serialization; doubles carry 17 significant digits.
std::string report_json(const SuiteReport& r);

const char* verdict_name(ChscVerdict v);

}  // namespace qs3

#endif  // QS3_SUITE_HPP_
