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

// Command-line front end.  Talks to the library exclusively through the C
// interface so the binary doubles as a smoke test of the shared object.
// Reports go to stdout (or --out); progress and diagnostics go to stderr.
//
// Exit codes: 0 every check passed, 1 at least one check failed (the report
// is still emitted), 2 configuration or spec errors.

#include <qs3/qs3.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfigError = 2;

// Verification contradictions keep exit code 1; everything else a command
// can hit at setup time (bad names, malformed specs, bad flags) is 2.
int exit_code_for(qs3_status st) {
  switch (st) {
    case QS3_ERR_STRUCTURE_DEFECT:
    case QS3_ERR_NOT_3QS:
    case QS3_ERR_INDETERMINATE_RANK:
    case QS3_ERR_INCONSISTENT_RESULT: return kExitChecksFailed;
    default: return kExitConfigError;
  }
}

struct ManifoldCloser {
  void operator()(qs3_manifold* m) const { qs3_manifold_close(m); }
};
struct ReportCloser {
  void operator()(qs3_report* r) const { qs3_report_free(r); }
};

using ManifoldPtr = std::unique_ptr<qs3_manifold, ManifoldCloser>;
using ReportPtr = std::unique_ptr<qs3_report, ReportCloser>;

int open_manifold(const std::string& name, ManifoldPtr* out) {
  qs3_manifold* raw = nullptr;
  const qs3_status st = qs3_manifold_open(name.c_str(), &raw);
  if (st != QS3_OK) {
    std::cerr << "qs3: cannot open manifold '" << name << "': " << qs3_last_error() << "\n";
    return exit_code_for(st);
  }
  out->reset(raw);
  return 0;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "qs3: cannot open '" << out_path << "' for writing\n";
    return kExitConfigError;
  }
  f << text << "\n";
  if (!f.flush()) {
    std::cerr << "qs3: short write to '" << out_path << "'\n";
    return kExitConfigError;
  }
  return 0;
}

int run_check(const std::string& manifold, const qs3_run_config& cfg, const std::string& out_path) {
  ManifoldPtr m;
  if (int rc = open_manifold(manifold, &m)) return rc;

  std::cerr << "qs3: checking " << qs3_manifold_name(m.get()) << " (dim "
            << qs3_manifold_dim(m.get()) << ") at " << cfg.points << " points, " << cfg.trials
            << " trials, seed " << cfg.seed << "\n";

  qs3_report* raw = nullptr;
  const qs3_status st = qs3_check(m.get(), &cfg, &raw);
  if (st != QS3_OK) {
    std::cerr << "qs3: check failed to run: " << qs3_last_error() << "\n";
    return exit_code_for(st);
  }
  ReportPtr rep(raw);

  char* json = nullptr;
  if (qs3_report_to_json(rep.get(), &json) != QS3_OK) {
    std::cerr << "qs3: cannot serialize report: " << qs3_last_error() << "\n";
    return kExitConfigError;
  }
  const std::string text(json);
  qs3_string_free(json);

  if (int rc = emit(text, out_path)) return rc;

  const int failed = qs3_report_failed_count(rep.get());
  const int total = qs3_report_check_count(rep.get());
  if (qs3_report_all_passed(rep.get())) {
    std::cerr << "qs3: all " << total << " checks passed\n";
    return 0;
  }
  std::cerr << "qs3: " << failed << " of " << total << " checks failed\n";
  return kExitChecksFailed;
}

int run_classify(const std::string& manifold, int points, uint64_t seed, double tol) {
  ManifoldPtr m;
  if (int rc = open_manifold(manifold, &m)) return rc;

  qs3_classification cls;
  const qs3_status st = qs3_classify(m.get(), points, seed, tol, &cls);
  if (st != QS3_OK) {
    std::cerr << "qs3: classification failed: " << qs3_last_error() << "\n";
    return exit_code_for(st);
  }

  const char* verdict = cls.verdict == QS3_VERDICT_THREE_C_SASAKIAN   ? "three_c_sasakian"
                        : cls.verdict == QS3_VERDICT_THREE_COSYMPLECTIC ? "three_cosymplectic"
                                                                        : "non_constant";
  char line[512];
  std::snprintf(line, sizeof(line),
                "{\"manifold\":\"%s\",\"verdict\":\"%s\",\"c\":%.17g,\"k_value\":%.17g,"
                "\"k_min\":%.17g,\"k_max\":%.17g,\"n_planes\":%d}",
                qs3_manifold_name(m.get()), verdict, cls.c, cls.k_value, cls.k_min, cls.k_max,
                cls.n_planes);
  std::cout << line << "\n";
  return 0;
}

int run_list() {
  char* json = nullptr;
  if (qs3_catalog_json(&json) != QS3_OK) {
    std::cerr << "qs3: cannot list catalog: " << qs3_last_error() << "\n";
    return kExitConfigError;
  }
  std::cout << json << "\n";
  qs3_string_free(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of 3-quasi-Sasakian structures and their curvature"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qs3_version()));

  qs3_run_config cfg;
  qs3_run_config_init(&cfg);

  std::string manifold, out_path;
  bool no_fd = false;

  CLI::App* check = app.add_subcommand("check", "run the identity check slate and emit a report");
  check->add_option("--manifold", manifold, "catalog member name or spec file path")->required();
  check->add_option("--points", cfg.points, "sampled chart points")->check(CLI::PositiveNumber);
  check->add_option("--trials", cfg.trials, "argument draws per check per point")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", cfg.seed, "root seed of every random stream");
  check->add_option("--tol", cfg.tol, "pass bound on normalized residuals")
      ->check(CLI::PositiveNumber);
  check->add_flag("--no-fd", no_fd, "skip difference-quotient cross-checks");
  check->add_option("--out", out_path, "write the report here instead of stdout");

  int cls_points = 16;
  uint64_t cls_seed = 42;
  double cls_tol = 1e-6;
  CLI::App* classify =
      app.add_subcommand("classify", "decide the constant horizontal sectional curvature class");
  classify->add_option("--manifold", manifold, "catalog member name or spec file path")
      ->required();
  classify->add_option("--points", cls_points, "sampled chart points")
      ->check(CLI::PositiveNumber);
  classify->add_option("--seed", cls_seed, "root seed of the sampling streams");
  classify->add_option("--tol", cls_tol, "match tolerance on curvature values")
      ->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list", "print the built-in catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  if (check->parsed()) {
    cfg.fd_check = no_fd ? 0 : 1;
    return run_check(manifold, cfg, out_path);
  }
  if (classify->parsed()) return run_classify(manifold, cls_points, cls_seed, cls_tol);
  if (list->parsed()) return run_list();
  return kExitConfigError;
}
