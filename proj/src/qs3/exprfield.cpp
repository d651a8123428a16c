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

#include "qs3/exprfield.hpp"

#include <array>
#include <memory>

#include <json.hpp>

namespace qs3 {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::bad_spec, what); }

int parse_coordinate(const std::string& s, int dim) {
  if (s.size() < 2 || s[0] != 'u') bad("expression: unknown token \"" + s + "\"");
  int idx = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') bad("expression: unknown token \"" + s + "\"");
    idx = idx * 10 + (s[i] - '0');
    if (idx >= 1000) bad("expression: coordinate index overflow in \"" + s + "\"");
  }
  if (s.size() > 2 && s[1] == '0') bad("expression: unknown token \"" + s + "\"");
  if (idx >= dim) bad("expression: coordinate " + s + " outside a dim-" + std::to_string(dim) +
                      " chart");
  return idx;
}

}  // namespace

struct ExprCompiler {
  int dim;
  std::vector<ScalarProgram::Node> nodes;

  static ScalarProgram compile(const json& e, int d) {
    ExprCompiler c{d, {}};
    c.walk(e);
    ScalarProgram p;
    p.nodes_ = std::move(c.nodes);
    return p;
  }

  int walk(const json& e) {
    ScalarProgram::Node n;
    if (e.is_number()) {
      n.kind = ScalarProgram::Kind::constant;
      n.value = e.get<double>();
    } else if (e.is_string()) {
      n.kind = ScalarProgram::Kind::coordinate;
      n.coord = parse_coordinate(e.get<std::string>(), dim);
    } else if (e.is_object()) {
      if (!e.contains("op") || !e["op"].is_string()) bad("expression: object without an op name");
      const std::string op = e["op"].get<std::string>();
      if (!e.contains("args") || !e["args"].is_array())
        bad("expression: op \"" + op + "\" without an args array");
      const json& args = e["args"];
      for (const auto& item : e.items())
        if (item.key() != "op" && item.key() != "args" && item.key() != "exp")
          bad("expression: unknown key \"" + item.key() + "\"");

      if (op == "add" || op == "sub" || op == "mul" || op == "div") {
        if (args.size() != 2) bad("expression: op \"" + op + "\" takes 2 args");
        n.kind = ScalarProgram::Kind::binary;
        n.op = op == "add"   ? JetOp::add
               : op == "sub" ? JetOp::sub
               : op == "mul" ? JetOp::mul
                             : JetOp::div;
        n.a = walk(args[0]);
        n.b = walk(args[1]);
      } else if (op == "neg" || op == "recip" || op == "sqrt") {
        if (args.size() != 1) bad("expression: op \"" + op + "\" takes 1 arg");
        n.kind = ScalarProgram::Kind::unary;
        n.op = op == "neg" ? JetOp::neg : op == "recip" ? JetOp::recip : JetOp::sqrt;
        n.a = walk(args[0]);
      } else if (op == "pow_int") {
        if (args.size() != 1) bad("expression: pow_int takes 1 arg");
        if (!e.contains("exp") || !e["exp"].is_number_integer())
          bad("expression: pow_int needs an integer exp");
        n.kind = ScalarProgram::Kind::power;
        n.exponent = e["exp"].get<long>();
        n.a = walk(args[0]);
      } else {
        bad("expression: unknown op \"" + op + "\"");
      }
      if (op != "pow_int" && e.contains("exp")) bad("expression: exp only belongs to pow_int");
    } else {
      bad("expression: entries must be numbers, coordinate names, or op objects");
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size() - 1);
  }
};

Jet2 ScalarProgram::eval(const JetVec& u) const {
  const int jd = u.empty() ? 0 : u[0].dim();
  std::vector<Jet2> val(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Kind::constant: val[i] = jet_const(n.value, jd); break;
      case Kind::coordinate: val[i] = u[static_cast<size_t>(n.coord)]; break;
      case Kind::unary: val[i] = jet_apply(n.op, val[n.a]); break;
      case Kind::binary: val[i] = jet_apply(n.op, val[n.a], val[n.b]); break;
      case Kind::power: val[i] = jet_apply(JetOp::pow_int, val[n.a], n.exponent); break;
    }
  }
  return val.back();
}

ScalarProgram compile_scalar_expr(const std::string& json_text, int dim) {
  json e;
  try {
    e = json::parse(json_text);
  } catch (const json::parse_error& pe) {
    bad(std::string("expression JSON: ") + pe.what());
  }
  return ExprCompiler::compile(e, dim);
}

namespace {

struct ParsedSpec {
  int dim = 0;
  std::vector<ScalarProgram> g;
  std::array<std::vector<ScalarProgram>, 3> phi;
  std::array<std::vector<ScalarProgram>, 3> xi;
};

}  // namespace

ChartedManifold manifold_from_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& pe) {
    bad(std::string("spec JSON: ") + pe.what());
  }
  if (!doc.is_object()) bad("spec: top level must be an object");
  for (const auto& item : doc.items()) {
    const std::string& k = item.key();
    if (k != "name" && k != "dim" && k != "domain_radius" && k != "g" && k != "phi" && k != "xi")
      bad("spec: unknown key \"" + k + "\"");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) bad("spec: integer dim required");
  const int dim = doc["dim"].get<int>();
  if (dim < 3) bad("spec: dim must be at least 3");

  ChartedManifold m;
  m.name = "spec";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) bad("spec: name must be a string");
    m.name = doc["name"].get<std::string>();
  }
  m.dim = dim;
  m.domain_radius = 1.0;
  if (doc.contains("domain_radius")) {
    if (!doc["domain_radius"].is_number()) bad("spec: domain_radius must be a number");
    m.domain_radius = doc["domain_radius"].get<double>();
    if (!(m.domain_radius > 0.0)) bad("spec: domain_radius must be positive");
  }
  if (!doc.contains("g")) bad("spec: g required");
  if (!doc.contains("phi") || !doc["phi"].is_array() || doc["phi"].size() != 3)
    bad("spec: phi must hold 3 matrices");
  if (!doc.contains("xi") || !doc["xi"].is_array() || doc["xi"].size() != 3)
    bad("spec: xi must hold 3 vectors");

  auto compile_one = [dim](const json& e) { return ExprCompiler::compile(e, dim); };
  auto compile_matrix = [&](const json& rows, const std::string& where) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      bad(where + ": expected " + std::to_string(dim) + " rows");
    std::vector<ScalarProgram> out;
    out.reserve(static_cast<size_t>(dim) * dim);
    for (const json& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        bad(where + ": expected rows of " + std::to_string(dim) + " entries");
      for (const json& e : row) out.push_back(compile_one(e));
    }
    return out;
  };
  auto compile_vector = [&](const json& entries, const std::string& where) {
    if (!entries.is_array() || static_cast<int>(entries.size()) != dim)
      bad(where + ": expected " + std::to_string(dim) + " entries");
    std::vector<ScalarProgram> out;
    out.reserve(static_cast<size_t>(dim));
    for (const json& e : entries) out.push_back(compile_one(e));
    return out;
  };

  auto spec = std::make_shared<ParsedSpec>();
  spec->dim = dim;
  spec->g = compile_matrix(doc["g"], "spec g");
  for (int a = 0; a < 3; ++a) {
    spec->phi[a] = compile_matrix(doc["phi"][a], "spec phi[" + std::to_string(a) + "]");
    spec->xi[a] = compile_vector(doc["xi"][a], "spec xi[" + std::to_string(a) + "]");
  }

  auto eval_matrix = [](const ParsedSpec& s, const std::vector<ScalarProgram>& entries,
                        const JetVec& u) {
    JetMatrix out(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i)
      for (int j = 0; j < s.dim; ++j) out(i, j) = entries[static_cast<size_t>(i) * s.dim + j].eval(u);
    return out;
  };
  m.g = [spec, eval_matrix](const JetVec& u) { return eval_matrix(*spec, spec->g, u); };
  for (int a = 0; a < 3; ++a) {
    m.phi[a] = [spec, eval_matrix, a](const JetVec& u) {
      return eval_matrix(*spec, spec->phi[a], u);
    };
    m.xi[a] = [spec, a](const JetVec& u) {
      JetVec out(static_cast<size_t>(spec->dim));
      for (int i = 0; i < spec->dim; ++i) out[static_cast<size_t>(i)] = spec->xi[a][static_cast<size_t>(i)].eval(u);
      return out;
    };
  }
  return m;
}

}  // namespace qs3
