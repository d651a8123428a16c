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
#include <json.hpp>

#include "qs3/catalog.hpp"
#include "qs3/contact.hpp"
#include "qs3/exprfield.hpp"
#include "qs3/fd.hpp"
#include "qs3/identities.hpp"

using namespace qs3;
using nlohmann::json;

TEST_CASE("compiled expressions reproduce the jet arithmetic") {
  {
    ScalarProgram p = compile_scalar_expr(R"({"op":"mul","args":["u0","u0"]})", 1);
    Jet2 j = p.eval({jet_var(3.0, 0, 1)});
    CHECK(j.value() == 9.0);
    CHECK(j.grad()(0) == 6.0);
    CHECK(j.hess()(0, 0) == 2.0);
  }
  {
    ScalarProgram p = compile_scalar_expr(R"({"op":"sqrt","args":["u0"]})", 1);
    Jet2 j = p.eval({jet_var(4.0, 0, 1)});
    CHECK(j.value() == 2.0);
    CHECK(j.grad()(0) == 0.25);
    CHECK(j.hess()(0, 0) == -0.03125);
  }
  {
    ScalarProgram p = compile_scalar_expr(
        R"({"op":"recip","args":[{"op":"add","args":[1,{"op":"mul","args":["u0","u0"]}]}]})", 1);
    Jet2 j = p.eval({jet_var(1.0, 0, 1)});
    CHECK(j.value() == 0.5);
    CHECK(j.grad()(0) == -0.5);
    CHECK(j.hess()(0, 0) == 0.5);
  }
  {
    ScalarProgram p = compile_scalar_expr(R"({"op":"pow_int","args":["u0"],"exp":-2})", 1);
    Jet2 j = p.eval({jet_var(2.0, 0, 1)});
    CHECK(j.value() == 0.25);
    CHECK(j.grad()(0) == -0.25);
    CHECK(j.hess()(0, 0) == 0.375);
  }
  {
    ScalarProgram p = compile_scalar_expr(R"({"op":"div","args":[1,"u0"]})", 1);
    Jet2 j = p.eval({jet_var(2.0, 0, 1)});
    CHECK(j.value() == 0.5);
    CHECK(j.grad()(0) == -0.25);
    CHECK(j.hess()(0, 0) == 0.25);
  }
  {
    ScalarProgram p = compile_scalar_expr(
        R"({"op":"sub","args":[{"op":"neg","args":["u1"]},"u0"]})", 2);
    Jet2 j = p.eval({jet_var(0.25, 0, 2), jet_var(2.0, 1, 2)});
    CHECK(j.value() == -2.25);
    CHECK(j.grad()(0) == -1.0);
    CHECK(j.grad()(1) == -1.0);
  }
  // Evaluation is deterministic to the bit.
  {
    ScalarProgram p = compile_scalar_expr(
        R"({"op":"sqrt","args":[{"op":"add","args":[4,{"op":"pow_int","args":["u0"],"exp":4}]}]})",
        1);
    Jet2 a = p.eval({jet_var(0.7, 0, 1)});
    Jet2 b = p.eval({jet_var(0.7, 0, 1)});
    CHECK(a.value() == b.value());
    CHECK((a.grad() - b.grad()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.hess() - b.hess()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("malformed expressions raise bad_spec") {
  auto rejects = [](const std::string& text, const char* needle) {
    CHECK_THROWS_WITH_AS(compile_scalar_expr(text, 3), doctest::Contains(needle), Error);
  };
  rejects("not json", "expression JSON");
  rejects(R"({"op":"exp","args":[1]})", "unknown op");
  rejects(R"({"op":"add","args":[1]})", "takes 2 args");
  rejects(R"({"op":"sqrt","args":[1,2]})", "takes 1 arg");
  rejects(R"({"op":"pow_int","args":["u0"],"exp":2.5})", "integer exp");
  rejects(R"({"op":"pow_int","args":["u0"]})", "integer exp");
  rejects(R"({"op":"add","args":[1,2],"exp":3})", "exp only belongs to pow_int");
  rejects(R"({"op":"add","args":[1,2],"weird":1})", "unknown key");
  rejects(R"({"args":[1,2]})", "without an op name");
  rejects(R"({"op":"add"})", "without an args array");
  rejects(R"("x0")", "unknown token");
  rejects(R"("u")", "unknown token");
  rejects(R"("u07")", "unknown token");
  rejects(R"("u3")", "outside a dim-3 chart");
  rejects("[1,2]", "numbers, coordinate names, or op objects");
  rejects("true", "numbers, coordinate names, or op objects");
}

namespace {

// Encodes the flat catalog member as a constant-entry spec document.
std::string flat7_spec_text() {
  ChartedManifold flat = catalog_open("flat7");
  JetVec u = chart_vars(flat, Eigen::VectorXd::Zero(7));
  json doc;
  doc["name"] = "flat7-spec";
  doc["dim"] = 7;
  doc["domain_radius"] = 8.0;
  auto matrix_of = [](const JetMatrix& mj) {
    json rows = json::array();
    for (int i = 0; i < mj.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < mj.cols(); ++j) row.push_back(mj(i, j).value());
      rows.push_back(row);
    }
    return rows;
  };
  doc["g"] = matrix_of(flat.g(u));
  doc["phi"] = json::array();
  doc["xi"] = json::array();
  for (int a = 0; a < 3; ++a) {
    doc["phi"].push_back(matrix_of(flat.phi[a](u)));
    JetVec xi = flat.xi[a](u);
    json v = json::array();
    for (const Jet2& e : xi) v.push_back(e.value());
    doc["xi"].push_back(v);
  }
  return doc.dump();
}

}  // namespace

TEST_CASE("a constant spec document reproduces the flat member") {
  ChartedManifold m = manifold_from_spec_json(flat7_spec_text());
  CHECK(m.name == "flat7-spec");
  CHECK(m.dim == 7);
  CHECK(m.domain_radius == 8.0);

  Sampler s(801);
  ChartedManifold flat = catalog_open("flat7");
  const Eigen::VectorXd p = s.in_ball(7, 2.0);
  ContactPoint a = contact_point(m, p);
  ContactPoint b = contact_point(flat, p);
  CHECK((a.g.v - b.g.v).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK((a.phi[i].v - b.phi[i].v).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.xi[i].v - b.xi[i].v).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.deta[i].v.cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(structure_residual(a).normalized() < 1e-12);

  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(s.in_ball(7, 2.0));
  Classification cls = classify_chsc(m, pts, 802);
  CHECK(cls.verdict == ChscVerdict::three_cosymplectic);
}

TEST_CASE("a curved spec metric agrees with its difference quotients") {
  json doc;
  doc["dim"] = 3;
  doc["domain_radius"] = 0.9;
  json zero_row = json::array({0, 0, 0});
  json zmat = json::array({zero_row, zero_row, zero_row});
  doc["g"] = json::array();
  doc["g"].push_back(json::array(
      {json::parse(R"({"op":"sqrt","args":[{"op":"add","args":[4,{"op":"pow_int","args":["u0"],"exp":4}]}]})"),
       0, 0}));
  doc["g"].push_back(json::array(
      {0, json::parse(R"({"op":"recip","args":[{"op":"add","args":[1,{"op":"mul","args":["u1","u1"]}]}]})"),
       0}));
  doc["g"].push_back(json::array(
      {0, 0,
       json::parse(R"({"op":"add","args":[1,{"op":"mul","args":[0.5,{"op":"mul","args":["u2","u2"]}]}]})")}));
  doc["phi"] = json::array({zmat, zmat, zmat});
  doc["xi"] = json::array(
      {json::array({0, 0, 0}), json::array({0, 0, 0}), json::array({0, 0, 0})});

  ChartedManifold m = manifold_from_spec_json(doc.dump());
  Sampler s(803);
  for (int t = 0; t < 4; ++t) {
    ResidualStat r = fd_christoffel_residual(m, s.in_ball(3, 0.5));
    CHECK(r.normalized() < 1e-6);
  }
  ResidualStat mc = metric_compatibility_residual(m, s.in_ball(3, 0.5));
  CHECK(mc.normalized() < 1e-12);
  CHECK_THROWS_AS(chart_vars(m, Eigen::VectorXd::Constant(3, 0.9)), Error);
}

TEST_CASE("malformed spec documents raise bad_spec") {
  auto rejects = [](const json& doc, const char* needle) {
    try {
      manifold_from_spec_json(doc.dump());
      FAIL_CHECK("expected bad_spec for ", doc.dump());
    } catch (const Error& e) {
      CHECK(e.code() == Errc::bad_spec);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  const json base = json::parse(flat7_spec_text());

  rejects(json::parse("{}"), "dim required");
  {
    json d = base;
    d["dim"] = 2;
    rejects(d, "at least 3");
  }
  {
    json d = base;
    d["extra"] = 1;
    rejects(d, "unknown key");
  }
  {
    json d = base;
    d["domain_radius"] = 0.0;
    rejects(d, "positive");
  }
  {
    json d = base;
    d["g"].erase(3);
    rejects(d, "expected 7 rows");
  }
  {
    json d = base;
    d["g"][2].erase(0);
    rejects(d, "rows of 7 entries");
  }
  {
    json d = base;
    d["phi"].erase(2);
    rejects(d, "3 matrices");
  }
  {
    json d = base;
    d["xi"][1].erase(0);
    rejects(d, "expected 7 entries");
  }
  {
    json d = base;
    d["name"] = 7;
    rejects(d, "name must be a string");
  }
  CHECK_THROWS_AS(manifold_from_spec_json("{"), Error);
}
