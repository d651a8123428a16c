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

#ifndef QS3_EXPRFIELD_HPP
#define QS3_EXPRFIELD_HPP

#include <string>
#include <vector>

#include "qs3/manifold.hpp"

namespace qs3 {

// A scalar chart field compiled from a JSON expression tree.  Expressions
// are numbers, coordinate names "u0".."u<dim-1>", or operator objects
// {"op": <name>, "args": [...]} over the jet instruction set add, sub, mul,
// div, neg, recip, sqrt and pow_int (the last with an integer "exp" key), so
// user-supplied fields run through the same second-order arithmetic as the
// built-in catalog — no host-language evaluation is ever exposed.
class ScalarProgram {
public:
  Jet2 eval(const JetVec& u) const;

private:
  friend struct ExprCompiler;

  enum class Kind { constant, coordinate, unary, binary, power };
  struct Node {
    Kind kind;
    double value = 0.0;  // constant
    int coord = 0;       // coordinate
    JetOp op = JetOp::add;
    int a = -1, b = -1;  // operand slots
    long exponent = 0;   // power
  };
  std::vector<Node> nodes_;  // postorder, root last
};

// Compiles one expression given as standalone JSON; malformed input raises
// bad_spec.  Exposed for tests and tooling.
ScalarProgram compile_scalar_expr(const std::string& json_text, int dim);

// Builds a manifold from a declarative JSON document:
//   {"name": <string, optional>, "dim": <int >= 3>,
//    "domain_radius": <positive number, optional, default 1>,
//    "g": dim x dim matrix of expressions,
//    "phi": [3 matrices of expressions], "xi": [3 vectors of expressions]}
// Unknown keys, shape mismatches, and malformed expressions raise bad_spec.
ChartedManifold manifold_from_spec_json(const std::string& text);

}  // namespace qs3

#endif
