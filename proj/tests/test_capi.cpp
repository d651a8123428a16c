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

// The C interface is exercised exactly as an external consumer would use
// it: opaque handles, status codes, strings owned by the library.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>
#include <qs3/qs3.h>

namespace {

struct Manifold {
  qs3_manifold* h = nullptr;
  ~Manifold() { qs3_manifold_close(h); }
};

struct Report {
  qs3_report* h = nullptr;
  ~Report() { qs3_report_free(h); }
};

std::string take_string(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  qs3_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::strcmp(qs3_version(), "0.1.0") == 0);
  qs3_run_config cfg;
  qs3_run_config_init(&cfg);
  CHECK(cfg.points == 16);
  CHECK(cfg.trials == 8);
  CHECK(cfg.seed == 42);
  CHECK(cfg.tol == doctest::Approx(1e-8));
  CHECK(cfg.fd_check == 1);
  qs3_run_config_init(nullptr);  // must be harmless
}

TEST_CASE("catalog listing is valid JSON") {
  char* raw = nullptr;
  REQUIRE(qs3_catalog_json(&raw) == QS3_OK);
  const std::string text = take_string(raw);
  const nlohmann::json j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  CHECK(j.size() >= 5);
  bool has_sphere = false;
  for (const auto& e : j) {
    CHECK(e.contains("name"));
    CHECK(e.contains("dim"));
    CHECK(e.contains("summary"));
    if (e["name"] == "sphere7") has_sphere = true;
  }
  CHECK(has_sphere);
}

TEST_CASE("open, inspect, and close catalog members") {
  Manifold m;
  REQUIRE(qs3_manifold_open("product11", &m.h) == QS3_OK);
  CHECK(qs3_manifold_dim(m.h) == 11);
  CHECK(std::strcmp(qs3_manifold_name(m.h), "product11") == 0);

  qs3_manifold* bad = nullptr;
  CHECK(qs3_manifold_open("no-such-member", &bad) == QS3_ERR_IO);
  CHECK(bad == nullptr);
  CHECK(std::string(qs3_last_error()).find("no-such-member") != std::string::npos);

  CHECK(qs3_manifold_open(nullptr, &bad) == QS3_ERR_NULL_POINTER);
  CHECK(qs3_manifold_open("flat7", nullptr) == QS3_ERR_NULL_POINTER);
}

TEST_CASE("manifolds from spec JSON") {
  const char* spec =
      "{\"name\":\"diag3\",\"dim\":3,\"g\":[[1,0,0],[0,1,0],[0,0,1]],"
      "\"phi\":[[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],"
      "[[0,0,0],[0,0,0],[0,0,0]]],"
      "\"xi\":[[1,0,0],[0,1,0],[0,0,1]]}";
  Manifold m;
  REQUIRE(qs3_manifold_from_spec_json(spec, &m.h) == QS3_OK);
  CHECK(qs3_manifold_dim(m.h) == 3);

  qs3_manifold* bad = nullptr;
  CHECK(qs3_manifold_from_spec_json("{ nope", &bad) == QS3_ERR_BAD_SPEC);
  CHECK(bad == nullptr);
  CHECK(qs3_last_error()[0] != '\0');
}

TEST_CASE("full check through the interface") {
  Manifold m;
  REQUIRE(qs3_manifold_open("flat7", &m.h) == QS3_OK);

  qs3_run_config cfg;
  qs3_run_config_init(&cfg);
  cfg.points = 3;
  cfg.trials = 2;
  cfg.fd_check = 0;

  Report rep;
  REQUIRE(qs3_check(m.h, &cfg, &rep.h) == QS3_OK);
  CHECK(qs3_report_all_passed(rep.h) == 1);
  CHECK(qs3_report_check_count(rep.h) == 54);
  CHECK(qs3_report_failed_count(rep.h) == 0);

  char* raw = nullptr;
  REQUIRE(qs3_report_to_json(rep.h, &raw) == QS3_OK);
  const std::string text = take_string(raw);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["manifold"]["name"] == "flat7");
  CHECK(j["manifold"]["rank"] == 1);
  CHECK(j["classification"]["verdict"] == "three_cosymplectic");
  CHECK(j["all_passed"] == true);
  CHECK(j["checks"].size() == 54);

  // Identical configs must reproduce the bytes exactly.
  Report again;
  REQUIRE(qs3_check(m.h, &cfg, &again.h) == QS3_OK);
  char* raw2 = nullptr;
  REQUIRE(qs3_report_to_json(again.h, &raw2) == QS3_OK);
  CHECK(take_string(raw2) == text);

  cfg.points = 0;
  qs3_report* none = nullptr;
  CHECK(qs3_check(m.h, &cfg, &none) == QS3_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);

  CHECK(qs3_check(nullptr, &cfg, &none) == QS3_ERR_NULL_POINTER);
}

TEST_CASE("classification through the interface") {
  Manifold sphere;
  REQUIRE(qs3_manifold_open("csasakian7:c=4", &sphere.h) == QS3_OK);
  qs3_classification cls;
  REQUIRE(qs3_classify(sphere.h, 8, 7, 0.0, &cls) == QS3_OK);
  CHECK(cls.verdict == QS3_VERDICT_THREE_C_SASAKIAN);
  CHECK(cls.c == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(cls.k_value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(cls.n_planes >= 64);

  Manifold flat;
  REQUIRE(qs3_manifold_open("flat11", &flat.h) == QS3_OK);
  REQUIRE(qs3_classify(flat.h, 2, 7, 0.0, &cls) == QS3_OK);  // topped up to 8 points
  CHECK(cls.verdict == QS3_VERDICT_THREE_COSYMPLECTIC);

  Manifold prod;
  REQUIRE(qs3_manifold_open("product11", &prod.h) == QS3_OK);
  REQUIRE(qs3_classify(prod.h, 8, 7, 0.0, &cls) == QS3_OK);
  CHECK(cls.verdict == QS3_VERDICT_NON_CONSTANT);

  CHECK(qs3_classify(nullptr, 8, 7, 0.0, &cls) == QS3_ERR_NULL_POINTER);
  CHECK(qs3_classify(prod.h, 8, 7, 0.0, nullptr) == QS3_ERR_NULL_POINTER);
}
