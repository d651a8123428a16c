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

#include "qs3/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "qs3/catalog.hpp"
#include "qs3/contact.hpp"
#include "qs3/errors.hpp"
#include "qs3/exprfield.hpp"
#include "qs3/fd.hpp"
#include "qs3/jsonwriter.hpp"
#include "qs3/sampling.hpp"

namespace qs3 {

namespace {

// Difference quotients bottom out near h^2; judging them against the jet
// tolerance would fail honest manifolds on truncation error alone.
constexpr double kFdTol = 1e-5;
// The stencils re-evaluate the chart 4*dim times per point; cap the points.
constexpr int kFdPoints = 10;

constexpr size_t kNumIdentities = std::size(kAllIdentities);

// Everything one chart point contributes, kept per point so the merge is a
// deterministic fold in index order regardless of worker scheduling.
struct PointOutcome {
  bool ok = false;
  std::string error;
  ResidualStat structure;
  std::array<ResidualStat, 3> normality, dphi_closed, sec_xi;
  std::array<int, 3> rank_spec{}, rank_wedge{};
  double c = 0.0;
  int l = 0, m = 0;
  ResidualStat split_proj, split_route, foliation;
  std::array<std::array<ResidualStat, 3>, kNumIdentities> ident;
  ResidualStat cyclic, curv_sym, nabla_g;
  bool fd_done = false;
  ResidualStat fd_gamma, fd_riem;
};

PointOutcome eval_point(const ChartedManifold& man, const Eigen::VectorXd& p,
                        const RunConfig& cfg, uint64_t stream, bool run_fd) {
  PointOutcome out;
  try {
    Sampler s(mix_seed(cfg.seed, stream));
    const IdentityContext cx = identity_context(man, p);
    out.structure = structure_residual(cx.pt);
    for (int a = 0; a < 3; ++a) {
      out.normality[a] = normality_residual(cx.pt, a, s, cfg.trials);
      out.dphi_closed[a] = dfund_closed_residual(cx.pt, a);
      out.rank_spec[a] = rank_at(cx.pt, a);
      out.rank_wedge[a] = rank_via_forms(cx.pt, a);
    }
    out.c = cx.df.c;
    out.l = cx.se.l;
    out.m = cx.se.m;
    out.split_proj = split_projector_residual(cx.pt, cx.se);
    out.split_route = split_route_residual(cx.se, cx.df);
    out.foliation = foliation_residual(cx.pt, cx.df);
    for (size_t k = 0; k < kNumIdentities; ++k) {
      const IdentityId id = kAllIdentities[k];
      if (identity_per_alpha(id)) {
        for (int a = 0; a < 3; ++a) {
          out.ident[k][a] = identity_residual(cx, id, a, s, cfg.trials);
        }
      } else {
        out.ident[k][0] = identity_residual(cx, id, 0, s, cfg.trials);
      }
    }
    out.cyclic = cyclic_curvature_residual(cx, s, cfg.trials);
    for (int a = 0; a < 3; ++a) {
      out.sec_xi[a] = sectional_xi_residual(cx, a, s, cfg.trials);
    }
    out.curv_sym.add(cx.geo.symmetry_residual(), 1.0);
    out.nabla_g = metric_compatibility_residual(man, p);
    if (run_fd) {
      out.fd_done = true;
      out.fd_gamma = fd_christoffel_residual(man, p);
      out.fd_riem = fd_riemann_residual(man, p);
    }
    out.ok = true;
  } catch (const Error& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

int thread_count(int points) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("QS3_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<int>(std::min<long>(v, 1024));
  }
  return std::min(n, points);
}

}  // namespace

ChartedManifold resolve_manifold(const std::string& name_or_path) {
  try {
    return catalog_open(name_or_path);
  } catch (const Error& e) {
    if (e.code() != Errc::invalid_argument) throw;
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io, "resolve_manifold: '" + name_or_path +
                              "' is neither a catalog member nor a readable spec file");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return manifold_from_spec_json(ss.str());
}

SuiteReport run_suite(const ChartedManifold& man, const RunConfig& cfg) {
  if (cfg.points < 1) throw Error(Errc::invalid_argument, "run_suite: points must be >= 1");
  if (cfg.trials < 1) throw Error(Errc::invalid_argument, "run_suite: trials must be >= 1");
  if (!(cfg.tol > 0.0)) throw Error(Errc::invalid_argument, "run_suite: tol must be positive");

  SuiteReport rep;
  rep.name = man.name;
  rep.dim = man.dim;
  rep.config = cfg;

  Sampler point_draw(cfg.seed);
  std::vector<Eigen::VectorXd> pts(cfg.points);
  for (int i = 0; i < cfg.points; ++i) {
    pts[i] = point_draw.in_ball(man.dim, 0.6 * man.domain_radius);
  }
  const int fd_points = cfg.fd_check ? std::min(cfg.points, kFdPoints) : 0;

  std::vector<PointOutcome> out(cfg.points);
  const int workers = thread_count(cfg.points);
  if (workers <= 1) {
    for (int i = 0; i < cfg.points; ++i) {
      out[i] = eval_point(man, pts[i], cfg, static_cast<uint64_t>(i) + 1, i < fd_points);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i; (i = next.fetch_add(1)) < cfg.points;) {
            out[i] = eval_point(man, pts[i], cfg, static_cast<uint64_t>(i) + 1, i < fd_points);
          }
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Fold in index order.
  ResidualStat structure, split_proj, split_route, foliation, cyclic, curv_sym, nabla_g;
  ResidualStat fd_gamma, fd_riem, reeb;
  std::array<ResidualStat, 3> normality, dphi_closed, sec_xi, rank_stat;
  std::array<std::array<ResidualStat, 3>, kNumIdentities> ident;
  std::array<int, 3> rank0{};
  double c0 = 0.0, c_sum = 0.0;
  int n_ok = 0, n_fd = 0, first_bad = -1;
  std::string first_error;
  for (int i = 0; i < cfg.points; ++i) {
    const PointOutcome& o = out[i];
    if (!o.ok) {
      if (first_bad < 0) {
        first_bad = i;
        first_error = o.error;
      }
      continue;
    }
    if (n_ok == 0) {
      rank0 = o.rank_spec;
      c0 = o.c;
      rep.l = o.l;
      rep.m = o.m;
      rep.rank = o.rank_spec[0];
    }
    ++n_ok;
    c_sum += o.c;
    reeb.add(std::abs(o.c - c0), std::max(1.0, std::abs(c0)));
    structure.merge(o.structure);
    split_proj.merge(o.split_proj);
    split_route.merge(o.split_route);
    foliation.merge(o.foliation);
    cyclic.merge(o.cyclic);
    curv_sym.merge(o.curv_sym);
    nabla_g.merge(o.nabla_g);
    for (int a = 0; a < 3; ++a) {
      normality[a].merge(o.normality[a]);
      dphi_closed[a].merge(o.dphi_closed[a]);
      sec_xi[a].merge(o.sec_xi[a]);
      rank_stat[a].add(std::abs(o.rank_spec[a] - o.rank_wedge[a]) +
                           std::abs(o.rank_spec[a] - rank0[a]),
                       static_cast<double>(rank0[a]));
    }
    for (size_t k = 0; k < kNumIdentities; ++k) {
      for (int a = 0; a < 3; ++a) ident[k][a].merge(o.ident[k][a]);
    }
    if (o.fd_done) {
      ++n_fd;
      fd_gamma.merge(o.fd_gamma);
      fd_riem.merge(o.fd_riem);
    }
  }
  if (n_ok > 0) rep.c = c_sum / n_ok;

  std::vector<CheckRow> rows;
  const auto push = [&rows](const char* id, int alpha, const char* desc, const ResidualStat& st,
                            double tol) {
    CheckRow r;
    r.id = id;
    r.alpha = alpha;
    r.description = desc;
    r.max_abs = st.max_abs;
    r.scale = st.scale;
    r.normalized = st.normalized();
    r.n_trials = st.n_trials;
    r.vacuous = st.vacuous();
    r.tol = tol;
    r.pass = r.vacuous || r.normalized <= tol;
    rows.push_back(std::move(r));
  };

  if (first_bad >= 0) {
    CheckRow r;
    r.id = "EVALUATION";
    r.alpha = 0;
    r.description = "every sampled point admits the full evaluation pipeline";
    r.n_trials = cfg.points - n_ok;
    r.tol = cfg.tol;
    r.pass = false;
    r.note = "point " + std::to_string(first_bad) + ": " + first_error;
    rows.push_back(std::move(r));
  }

  if (n_ok > 0) {
    push("STRUCTURE", 0,
         "phi^2 = -1 + eta (x) xi, eta(xi) = delta, the quaternionic relations among "
         "(phi, xi, eta), and g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
         structure, cfg.tol);
    push("REEB_BRACKET", 0, "[xi_a, xi_b] = c xi_c with one constant c across points and pairs",
         reeb, cfg.tol);
    push("SPLIT_PROJECTORS", 0,
         "the splitting yields complementary g-orthogonal projectors commuting with every phi",
         split_proj, cfg.tol);
    push("SPLIT_ROUTE_AGREE", 0,
         "spectral and derived-field routes agree on the E^{4m} projector and on c", split_route,
         cfg.tol);
    push("FOLIATION", 0,
         "E^{4m} and E^{4l+3} are involutive with totally geodesic leaves: brackets and "
         "covariant derivatives of projected fields stay inside each distribution",
         foliation, cfg.tol);
    push("CYCLIC_RELATIONS", 0,
         "-g(R(X, phi_c X) phi_a X, phi_b X) = -H_c(X) + (c^2/4) g(X_l, X_l)^2 for cyclic "
         "(a, b, c), and the three mixed terms sum to zero",
         cyclic, cfg.tol);
    push("CURVATURE_SYMMETRIES", 0,
         "R_{ijkl} antisymmetries, pair symmetry, and the first Bianchi identity", curv_sym,
         cfg.tol);
    push("NABLA_G", 0, "the Levi-Civita connection kills the metric: nabla g = 0", nabla_g,
         cfg.tol);
    for (int a = 1; a <= 3; ++a) {
      push("NORMALITY", a, "vanishing Nijenhuis torsion: [phi, phi] + 2 dEta (x) xi = 0",
           normality[a - 1], cfg.tol);
      push("DPHI_CLOSED", a, "the fundamental two-form is closed: d Phi = 0", dphi_closed[a - 1],
           cfg.tol);
      push("RANK_CONSTANT", a,
           "spectral rank of dEta agrees with the wedge-power probe and is constant across points",
           rank_stat[a - 1], cfg.tol);
      push("SECTIONAL_XI", a, "K(X, xi) = (c^2/4) g(X_l, X_l) for unit horizontal X",
           sec_xi[a - 1], cfg.tol);
    }
    for (size_t k = 0; k < kNumIdentities; ++k) {
      const IdentityId id = kAllIdentities[k];
      if (identity_per_alpha(id)) {
        for (int a = 1; a <= 3; ++a) {
          push(identity_name(id), a, identity_formula(id), ident[k][a - 1], cfg.tol);
        }
      } else {
        push(identity_name(id), 0, identity_formula(id), ident[k][0], cfg.tol);
      }
    }
    if (n_fd > 0) {
      const double fd_tol = std::max(cfg.tol, kFdTol);
      push("FD_CHRISTOFFEL", 0,
           "jet-computed Christoffel symbols match central difference quotients of the metric",
           fd_gamma, fd_tol);
      push("FD_RIEMANN", 0,
           "jet-computed curvature matches central difference quotients of the Christoffel "
           "symbols",
           fd_riem, fd_tol);
    }
  }

  std::sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.alpha < b.alpha;
  });
  rep.checks = std::move(rows);

  // Classification wants at least 8 points; extend the same draw stream.
  std::vector<Eigen::VectorXd> cls_pts = pts;
  while (cls_pts.size() < 8) {
    cls_pts.push_back(point_draw.in_ball(man.dim, 0.6 * man.domain_radius));
  }
  try {
    rep.classification = classify_chsc(man, cls_pts, mix_seed(cfg.seed, 0xC1A5));
    rep.has_classification = true;
  } catch (const Error& e) {
    rep.classification_error = e.what();
  }

  rep.all_passed = rep.has_classification && n_ok == cfg.points;
  for (const CheckRow& r : rep.checks) {
    if (!r.pass) rep.all_passed = false;
  }
  return rep;
}

const char* verdict_name(ChscVerdict v) {
  switch (v) {
    case ChscVerdict::three_c_sasakian: return "three_c_sasakian";
    case ChscVerdict::three_cosymplectic: return "three_cosymplectic";
    case ChscVerdict::non_constant: return "non_constant";
  }
  throw Error(Errc::invalid_argument, "verdict_name: unknown verdict");
}

std::string report_json(const SuiteReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("qs3-report/1");
  w.key("version").value(kVersion);
  w.key("manifold").begin_object();
  w.key("name").value(r.name);
  w.key("dim").value(r.dim);
  w.key("rank").value(r.rank);
  w.key("l").value(r.l);
  w.key("m").value(r.m);
  w.key("c").value(r.c);
  w.end_object();
  w.key("config").begin_object();
  w.key("points").value(r.config.points);
  w.key("trials").value(r.config.trials);
  w.key("seed").value(static_cast<std::uint64_t>(r.config.seed));
  w.key("tol").value(r.config.tol);
  w.key("fd_check").value(r.config.fd_check);
  w.end_object();
  w.key("checks").begin_array();
  for (const CheckRow& c : r.checks) {
    w.begin_object();
    w.key("id").value(c.id);
    w.key("alpha").value(c.alpha);
    w.key("description").value(c.description);
    w.key("max_abs").value(c.max_abs);
    w.key("scale").value(c.scale);
    w.key("normalized").value(c.normalized);
    w.key("n_trials").value(c.n_trials);
    w.key("vacuous").value(c.vacuous);
    w.key("tol").value(c.tol);
    w.key("pass").value(c.pass);
    w.key("note").value(c.note);
    w.end_object();
  }
  w.end_array();
  w.key("classification");
  w.begin_object();
  if (r.has_classification) {
    w.key("verdict").value(verdict_name(r.classification.verdict));
    w.key("c").value(r.classification.c);
    w.key("k_value").value(r.classification.k_value);
    w.key("k_min").value(r.classification.k_min);
    w.key("k_max").value(r.classification.k_max);
    w.key("n_planes").value(r.classification.n_planes);
  } else {
    w.key("error").value(r.classification_error);
  }
  w.end_object();
  w.key("all_passed").value(r.all_passed);
  w.end_object();
  return w.take();
}

}  // namespace qs3
