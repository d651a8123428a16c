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

#ifndef QS3_ERRORS_HPP
#define QS3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qs3 {

// Stable error categories, mirrored one-to-one by the C API status codes.
enum class Errc {
  invalid_argument = 1,
  dimension_mismatch,
  singular_evaluation,   // division by zero value, sqrt of nonpositive value
  singular_system,       // pivot underflow in a linear solve
  domain,                // point outside the chart domain
  non_spd_metric,
  degenerate_input,      // zero-norm vector, rank-deficient frame, ...
  structure_defect,      // almost-contact relations violated beyond tolerance
  not_3qs,               // Reeb brackets do not close as required
  indeterminate_rank,    // near-tolerance singular values
  inconsistent_result,   // classification side conditions contradict evidence
  bad_spec,              // malformed manifold description
  io
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qs3

#endif
