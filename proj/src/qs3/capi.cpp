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

#include "qs3/qs3.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "qs3/catalog.hpp"
#include "qs3/errors.hpp"
#include "qs3/exprfield.hpp"
#include "qs3/jsonwriter.hpp"
#include "qs3/sampling.hpp"
#include "qs3/suite.hpp"

struct qs3_manifold {
  qs3::ChartedManifold m;
};

struct qs3_report {
  qs3::SuiteReport r;
};

namespace {

thread_local std::string g_last_error;

qs3_status to_status(qs3::Errc c) {
  // The numeric values coincide by construction; keep the switch so a new
  // error condition cannot silently alias an existing status.
  switch (c) {
    case qs3::Errc::invalid_argument: return QS3_ERR_INVALID_ARGUMENT;
    case qs3::Errc::dimension_mismatch: return QS3_ERR_DIMENSION_MISMATCH;
    case qs3::Errc::singular_evaluation: return QS3_ERR_SINGULAR_EVALUATION;
    case qs3::Errc::singular_system: return QS3_ERR_SINGULAR_SYSTEM;
    case qs3::Errc::domain: return QS3_ERR_DOMAIN;
    case qs3::Errc::non_spd_metric: return QS3_ERR_NON_SPD_METRIC;
    case qs3::Errc::degenerate_input: return QS3_ERR_DEGENERATE_INPUT;
    case qs3::Errc::structure_defect: return QS3_ERR_STRUCTURE_DEFECT;
    case qs3::Errc::not_3qs: return QS3_ERR_NOT_3QS;
    case qs3::Errc::indeterminate_rank: return QS3_ERR_INDETERMINATE_RANK;
    case qs3::Errc::inconsistent_result: return QS3_ERR_INCONSISTENT_RESULT;
    case qs3::Errc::bad_spec: return QS3_ERR_BAD_SPEC;
    case qs3::Errc::io: return QS3_ERR_IO;
  }
  return QS3_ERR_INTERNAL;
}

template <typename Fn>
qs3_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QS3_OK;
  } catch (const qs3::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QS3_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qs3_status require(bool cond, const char* what) {
  if (cond) return QS3_OK;
  g_last_error = what;
  return QS3_ERR_NULL_POINTER;
}

}  // namespace

extern "C" {

const char* qs3_version(void) { return qs3::kVersion; }

const char* qs3_last_error(void) { return g_last_error.c_str(); }

void qs3_run_config_init(qs3_run_config* cfg) {
  if (cfg == nullptr) return;
  const qs3::RunConfig d;
  cfg->points = d.points;
  cfg->trials = d.trials;
  cfg->seed = d.seed;
  cfg->tol = d.tol;
  cfg->fd_check = d.fd_check ? 1 : 0;
}

qs3_status qs3_manifold_open(const char* name_or_path, qs3_manifold** out) {
  if (auto st = require(name_or_path && out, "qs3_manifold_open: null argument")) return st;
  return guarded([&] { *out = new qs3_manifold{qs3::resolve_manifold(name_or_path)}; });
}

qs3_status qs3_manifold_from_spec_json(const char* json_text, qs3_manifold** out) {
  if (auto st = require(json_text && out, "qs3_manifold_from_spec_json: null argument")) return st;
  return guarded([&] { *out = new qs3_manifold{qs3::manifold_from_spec_json(json_text)}; });
}

void qs3_manifold_close(qs3_manifold* m) { delete m; }

int qs3_manifold_dim(const qs3_manifold* m) { return m != nullptr ? m->m.dim : 0; }

const char* qs3_manifold_name(const qs3_manifold* m) {
  return m != nullptr ? m->m.name.c_str() : "";
}

qs3_status qs3_check(const qs3_manifold* m, const qs3_run_config* cfg, qs3_report** out) {
  if (auto st = require(m && cfg && out, "qs3_check: null argument")) return st;
  return guarded([&] {
    qs3::RunConfig rc;
    rc.points = cfg->points;
    rc.trials = cfg->trials;
    rc.seed = cfg->seed;
    rc.tol = cfg->tol;
    rc.fd_check = cfg->fd_check != 0;
    *out = new qs3_report{qs3::run_suite(m->m, rc)};
  });
}

int qs3_report_all_passed(const qs3_report* r) {
  return (r != nullptr && r->r.all_passed) ? 1 : 0;
}

int qs3_report_check_count(const qs3_report* r) {
  return r != nullptr ? static_cast<int>(r->r.checks.size()) : 0;
}

int qs3_report_failed_count(const qs3_report* r) {
  if (r == nullptr) return 0;
  int n = 0;
  for (const qs3::CheckRow& c : r->r.checks) {
    if (!c.pass) ++n;
  }
  if (!r->r.has_classification) ++n;
  return n;
}

qs3_status qs3_report_to_json(const qs3_report* r, char** out) {
  if (auto st = require(r && out, "qs3_report_to_json: null argument")) return st;
  return guarded([&] {
    char* s = dup_string(qs3::report_json(r->r));
    if (s == nullptr) throw std::bad_alloc();
    *out = s;
  });
}

void qs3_report_free(qs3_report* r) { delete r; }

qs3_status qs3_classify(const qs3_manifold* m, int points, uint64_t seed, double tol,
                        qs3_classification* out) {
  if (auto st = require(m && out, "qs3_classify: null argument")) return st;
  return guarded([&] {
    const int n = points > 8 ? points : 8;
    qs3::Sampler draw(seed);
    std::vector<Eigen::VectorXd> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = draw.in_ball(m->m.dim, 0.6 * m->m.domain_radius);
    const double eff_tol = tol > 0.0 ? tol : 1e-6;
    const qs3::Classification c = qs3::classify_chsc(m->m, pts, qs3::mix_seed(seed, 0xC1A5), eff_tol);
    switch (c.verdict) {
      case qs3::ChscVerdict::three_c_sasakian: out->verdict = QS3_VERDICT_THREE_C_SASAKIAN; break;
      case qs3::ChscVerdict::three_cosymplectic:
        out->verdict = QS3_VERDICT_THREE_COSYMPLECTIC;
        break;
      case qs3::ChscVerdict::non_constant: out->verdict = QS3_VERDICT_NON_CONSTANT; break;
    }
    out->c = c.c;
    out->k_value = c.k_value;
    out->k_min = c.k_min;
    out->k_max = c.k_max;
    out->n_planes = c.n_planes;
  });
}

qs3_status qs3_catalog_json(char** out) {
  if (auto st = require(out != nullptr, "qs3_catalog_json: null argument")) return st;
  return guarded([&] {
    qs3::JsonWriter w;
    w.begin_array();
    for (const qs3::CatalogEntry& e : qs3::catalog_entries()) {
      w.begin_object();
      w.key("name").value(e.name);
      w.key("dim").value(e.dim);
      w.key("summary").value(e.summary);
      w.end_object();
    }
    w.end_array();
    char* s = dup_string(w.take());
    if (s == nullptr) throw std::bad_alloc();
    *out = s;
  });
}

void qs3_string_free(char* s) { std::free(s); }

}  // extern "C"
