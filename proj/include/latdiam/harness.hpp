#pragma once

// Experiment runner behind `latdiam verify`: generates every instance of a
// suite, recomputes its diameter twice, checks the diameter bounds, builds a
// certified path for every (or a sampled set of) vertex pair, and checks the
// walk inequalities on random objectives.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "latdiam/bound_path.hpp"
#include "latdiam/errors.hpp"
#include "latdiam/generators.hpp"
#include "latdiam/io.hpp"
#include "latdiam/polytope.hpp"
#include "latdiam/skeleton.hpp"

namespace latdiam {

struct FamilySweep {
  Family family = Family::HexagonPower;
  std::vector<std::int64_t> d{1}, n{2}, k{1}, budget{8};
  std::vector<std::vector<Edge>> graphs;
  std::int64_t trials = 1;
};

struct SuiteSpec {
  std::uint64_t seed = 1;
  std::vector<FamilySweep> families;
  std::size_t pair_threshold = 2000;
  std::size_t objective_draws = 20;
  std::size_t product_pairs = 0;
  std::size_t max_vertices = 400;
  std::int64_t max_dim = 6;
  std::int64_t max_k = 4;
};

inline SuiteSpec default_suite() {
  SuiteSpec s;
  FamilySweep h;
  h.family = Family::HexagonPower;
  h.d = {1, 2, 3, 4, 5};
  s.families.push_back(h);
  return s;
}

struct InstanceRow {
  std::string spec;
  std::string family;
  std::size_t n = 0;
  Coord k = 0;
  std::size_t d = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t diameter = 0;
  std::int64_t bound = 0;
  std::int64_t ko_bound = 0;
  std::optional<std::size_t> path_length;  // for the first diameter-realizing pair
  std::vector<ProofCase> trace;
  std::size_t pairs_checked = 0;
  std::size_t max_path_length = 0;
  std::size_t objective_draws = 0;
  bool paths_ok = true;
  bool walk_ok = true;
  bool route_ok = true;
  bool coordinate_route_ok = true;
  std::optional<bool> product_ok;
};

struct Violation {
  std::string instance;
  std::string kind;
  std::string detail;
  Json polytope;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::vector<InstanceRow> rows;
  std::vector<Violation> violations;

  [[nodiscard]] std::int64_t max_gap() const {
    std::int64_t gap = 0;
    for (const auto& r : rows) gap = std::max(gap, r.bound - static_cast<std::int64_t>(r.diameter));
    return gap;
  }
};

namespace detail {

inline std::vector<std::int64_t> int_list(const Json& j, const char* key, std::vector<std::int64_t> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<std::int64_t>>();
  return {v.get<std::int64_t>()};
}

struct Job {
  GeneratorSpec spec;
  std::uint64_t draw_seed = 0;
};

// Products are their own jobs: two small random hulls.
struct ProductJob {
  GeneratorSpec left, right;
};

inline std::string join_trace(const std::vector<ProofCase>& t, char sep) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += sep;
    s += to_string(t[i]);
  }
  return s;
}

class InstanceRunner {
 public:
  InstanceRunner(const SuiteSpec& suite, const Job& job) : suite_(suite), job_(job), rng_(job.draw_seed) {}

  InstanceRow run(std::vector<Violation>& out) {
    row_.spec = job_.spec.label();
    row_.family = to_string(job_.spec.family);
    LatticePolytope p;
    try {
      p = generate(job_.spec);
    } catch (const InternalError& e) {
      fail(out, {}, "generator", std::string(e.what()) + "\n" + e.dump());
      return row_;
    }
    if (p.size() > suite_.max_vertices) {
      throw InputError(row_.spec + " has " + std::to_string(p.size()) + " vertices, above the limit " +
                       std::to_string(suite_.max_vertices));
    }
    try {
      check(p, out);
    } catch (const InternalError& e) {
      fail(out, p, "internal", std::string(e.what()) + "\n" + e.dump());
    }
    return row_;
  }

 private:
  void check(const LatticePolytope& p, std::vector<Violation>& out) {
    row_.n = p.ambient_dim();
    row_.k = p.grid_bound();
    row_.d = affine_rank(p);
    row_.vertices = p.size();
    const auto di = static_cast<std::int64_t>(row_.d);
    row_.bound = diameter_bound(di, row_.k);
    row_.ko_bound = ko_bound(di, row_.k);

    // (k+1)^d vertex bound.
    std::int64_t cap = 1;
    for (std::size_t i = 0; i < row_.d && cap <= static_cast<std::int64_t>(p.size()); ++i) cap *= row_.k + 1;
    if (static_cast<std::int64_t>(p.size()) > cap) {
      fail(out, p, "vertex-count", std::to_string(p.size()) + " > (k+1)^d = " + std::to_string(cap));
    }

    const Skeleton s = build_skeleton(p);
    row_.edges = s.edge_count();
    const auto info = diameter_info(s);
    row_.diameter = info.diameter;

    // Independent second pass: other edge-test route, no midpoint filter.
    const Skeleton again = build_skeleton(p, SkeletonOptions{EdgeTest::Combination, false, 1});
    if (!(again == s) || diameter(again) != info.diameter) {
      fail(out, p, "diameter-recheck", "second skeleton pass disagrees");
    }
    if (static_cast<std::int64_t>(info.diameter) > row_.bound) {
      fail(out, p, "diameter-bound", "diameter " + std::to_string(info.diameter) + " > " + std::to_string(row_.bound));
    }
    if (row_.k >= 1 && static_cast<std::int64_t>(info.diameter) > row_.ko_bound) {
      fail(out, p, "ko-bound", "diameter " + std::to_string(info.diameter) + " > kd");
    }
    if (p.size() < 2 || row_.k < 1) return;

    check_paths(p, s, info, out);
    check_walks(p, s, out);
  }

  void check_paths(const LatticePolytope& p, const Skeleton& s, const DiameterInfo& info,
                   std::vector<Violation>& out) {
    const std::size_t m = p.size();
    std::vector<std::vector<std::size_t>> dist(m);
    for (std::size_t u = 0; u < m; ++u) dist[u] = bfs_distances(s, u);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t total = m * (m - 1) / 2;
    if (total <= suite_.pair_threshold) {
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = u + 1; v < m; ++v) pairs.emplace_back(u, v);
      }
    } else {
      std::set<std::pair<std::size_t, std::size_t>> chosen(info.extremal_pairs.begin(), info.extremal_pairs.end());
      while (chosen.size() < std::max(suite_.pair_threshold, info.extremal_pairs.size())) {
        auto u = rng_.below(m), v = rng_.below(m);
        if (u != v) chosen.emplace(std::min(u, v), std::max(u, v));
      }
      pairs.assign(chosen.begin(), chosen.end());
    }

    for (auto [u, v] : pairs) {
      auto res = construct_path(p, s, u, v);
      ++row_.pairs_checked;
      row_.max_path_length = std::max(row_.max_path_length, res.path.length());
      bool ok = verify_certificate(res.path, res.certificate, s) && res.path.length() >= dist[u][v];
      if (!ok) {
        row_.paths_ok = false;
        fail(out, p, "path", "invalid path of length " + std::to_string(res.path.length()), {{u, v}});
      }
      if (!row_.path_length && !info.extremal_pairs.empty() && info.extremal_pairs.front() == std::pair{u, v}) {
        row_.path_length = res.path.length();
        row_.trace = res.certificate.case_trace;
      }
    }
  }

  void check_walks(const LatticePolytope& p, const Skeleton& s, std::vector<Violation>& out) {
    const std::size_t m = p.size(), n = p.ambient_dim();
    for (std::size_t t = 0; t < suite_.objective_draws; ++t) {
      ++row_.objective_draws;
      auto u = rng_.below(m), v = rng_.below(m);
      Point c(n);
      for (auto& x : c) x = rng_.between(-3, 3);

      auto walk = monotone_walk(p, s, u, c);
      auto mf = min_face(p, c);
      if (!monotone_walk_ok(p, walk, c, mf)) {
        row_.walk_ok = false;
        fail(out, p, "monotone-walk", "monotone walk violates c.u - gamma", {{u, v}});
      }
      auto fr = face_route(p, s, u, v, c);
      if (static_cast<Coord>(fr.walk_u.length() + fr.walk_v.length()) >
          dot(c, p.point(u)) + dot(c, p.point(v)) - 2 * fr.gamma) {
        row_.route_ok = false;
        fail(out, p, "face-route", "face route exceeds c.u + c.v - 2 gamma", {{u, v}});
      }

      auto i = rng_.below(n);
      Coord lo = p.point(0)[i], hi = lo;
      for (const auto& q : p.points()) {
        lo = std::min(lo, q[i]);
        hi = std::max(hi, q[i]);
      }
      Point e(n, 0);
      e[i] = p.point(u)[i] + p.point(v)[i] <= lo + hi ? 1 : -1;
      auto side = face_route(p, s, u, v, e);
      if (static_cast<Coord>(side.walk_u.length() + side.walk_v.length()) > hi - lo) {
        row_.coordinate_route_ok = false;
        fail(out, p, "coordinate-route", "coordinate route exceeds h - l", {{u, v}});
      }
    }
  }

 public:
  static bool monotone_walk_ok(const LatticePolytope& p, const Walk& w, const Point& c, const MinFace& mf) {
    const auto& vs = w.path.vertices;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (dot(c, p.point(vs[i + 1])) > dot(c, p.point(vs[i])) - 1) return false;
    }
    if (dot(c, p.point(w.landing)) != mf.gamma) return false;
    return static_cast<Coord>(w.path.length()) <= dot(c, p.point(vs.front())) - mf.gamma;
  }

 private:
  void fail(std::vector<Violation>& out, const LatticePolytope& p, std::string kind, std::string detail,
            std::optional<std::pair<std::size_t, std::size_t>> pair = std::nullopt) {
    out.push_back({row_.spec, std::move(kind), std::move(detail), polytope_to_json(p), pair});
  }

  const SuiteSpec& suite_;
  const Job& job_;
  Rng rng_;
  InstanceRow row_;
};

inline InstanceRow run_product(const ProductJob& job, std::vector<Violation>& out) {
  InstanceRow row;
  row.family = "product";
  row.spec = "product[" + job.left.label() + " x " + job.right.label() + "]";
  auto a = generate(job.left), b = generate(job.right);
  auto prod = cartesian_product(a, b);
  row.n = prod.ambient_dim();
  row.k = prod.grid_bound();
  row.d = affine_rank(prod);
  row.vertices = prod.size();
  row.bound = diameter_bound(static_cast<std::int64_t>(row.d), row.k);
  row.ko_bound = ko_bound(static_cast<std::int64_t>(row.d), row.k);
  auto sp = build_skeleton(prod);
  row.edges = sp.edge_count();
  row.diameter = diameter(sp);
  auto da = diameter(build_skeleton(a)), db = diameter(build_skeleton(b));
  row.product_ok = row.diameter == da + db;
  if (!*row.product_ok) {
    out.push_back({row.spec, "product-law",
                   std::to_string(row.diameter) + " != " + std::to_string(da) + " + " + std::to_string(db),
                   polytope_to_json(prod), std::nullopt});
  }
  return row;
}

}  // namespace detail

inline SuiteSpec suite_from_json(const Json& j) {
  return detail::field_guard("suite spec", [&] {
    if (!j.is_object()) throw InputError("suite spec: expected a JSON object");
    SuiteSpec s;
    s.seed = j.value("seed", std::uint64_t{1});
    s.pair_threshold = j.value("pair_threshold", s.pair_threshold);
    s.objective_draws = j.value("objective_draws", s.objective_draws);
    s.product_pairs = j.value("product_pairs", s.product_pairs);
    for (const auto& f : j.at("families")) {
      FamilySweep sw;
      sw.family = parse_family(f.at("family").get<std::string>());
      sw.d = detail::int_list(f, "d", sw.d);
      sw.n = detail::int_list(f, "n", sw.n);
      sw.k = detail::int_list(f, "k", sw.k);
      sw.budget = detail::int_list(f, "budget", sw.budget);
      sw.trials = f.value("trials", std::int64_t{1});
      if (f.contains("graphs")) {
        for (const auto& g : f.at("graphs")) {
          std::vector<Edge> edges;
          for (const auto& e : g) {
            auto pr = e.get<std::vector<std::size_t>>();
            if (pr.size() != 2) throw InputError("suite spec: edges are pairs of node ids");
            edges.emplace_back(pr[0], pr[1]);
          }
          sw.graphs.push_back(std::move(edges));
        }
      }
      s.families.push_back(std::move(sw));
    }
    return s;
  });
}

/// Expands the sweeps, checks desk-scale limits and runs every instance.
/// Instances may run on `jobs` threads; rows are merged in suite order.
inline ExperimentReport run_suite(const SuiteSpec& suite, unsigned jobs = 1) {
  Rng seeds(suite.seed);
  std::vector<detail::Job> work;
  auto within = [&](const GeneratorSpec& g) {
    if (g.d > suite.max_dim || g.n > suite.max_dim) throw InputError(g.label() + " exceeds the dimension limit");
    if (g.k > suite.max_k) throw InputError(g.label() + " exceeds the grid-bound limit");
  };
  for (const auto& f : suite.families) {
    GeneratorSpec g;
    g.family = f.family;
    switch (f.family) {
      case Family::Hypercube:
        for (auto d : f.d) {
          for (auto k : f.k) {
            g.d = d;
            g.k = k;
            g.n = d;
            within(g);
            work.push_back({g, seeds.next()});
          }
        }
        break;
      case Family::HexagonPower:
        for (auto d : f.d) {
          g.d = d;
          g.n = d;
          g.k = 2;
          within(g);
          work.push_back({g, seeds.next()});
        }
        break;
      case Family::Octagon3:
        g.k = 3;
        g.n = 2;
        work.push_back({g, seeds.next()});
        break;
      case Family::RandomHull:
        for (auto n : f.n) {
          for (auto k : f.k) {
            for (auto b : f.budget) {
              for (std::int64_t t = 0; t < f.trials; ++t) {
                g.n = n;
                g.d = n;
                g.k = k;
                g.budget = b;
                g.seed = seeds.next();
                within(g);
                work.push_back({g, seeds.next()});
              }
            }
          }
        }
        break;
      case Family::FractionalMatching:
        for (const auto& edges : f.graphs) {
          g.edges = edges;
          g.k = 2;
          g.n = static_cast<std::int64_t>(edges.size());
          g.d = g.n;
          within(g);
          work.push_back({g, seeds.next()});
        }
        break;
    }
  }
  std::vector<detail::ProductJob> products;
  for (std::size_t t = 0; t < suite.product_pairs; ++t) {
    auto factor = [&] {
      GeneratorSpec g;
      g.family = Family::RandomHull;
      g.n = seeds.between(1, 2);
      g.k = seeds.between(1, 3);
      g.budget = seeds.between(2, 6);
      g.seed = seeds.next();
      return g;
    };
    auto left = factor();
    products.push_back({left, factor()});
  }

  const std::size_t total = work.size() + products.size();
  std::vector<InstanceRow> rows(total);
  std::vector<std::vector<Violation>> found(total);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::optional<InputError> input_error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < total;) {
      try {
        if (i < work.size()) {
          rows[i] = detail::InstanceRunner(suite, work[i]).run(found[i]);
        } else {
          rows[i] = detail::run_product(products[i - work.size()], found[i]);
        }
      } catch (const InputError& e) {
        std::lock_guard lock(err_mu);
        if (!input_error) input_error = e;
      }
    }
  };
  const unsigned threads = std::max(1u, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (input_error) throw *input_error;

  ExperimentReport report;
  report.seed = suite.seed;
  report.rows = std::move(rows);
  for (auto& f : found) {
    for (auto& v : f) report.violations.push_back(std::move(v));
  }
  return report;
}

inline Json report_to_json(const ExperimentReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"spec", row.spec},
           {"family", row.family},
           {"n", row.n},
           {"k", row.k},
           {"d", row.d},
           {"vertices", row.vertices},
           {"edges", row.edges},
           {"diameter", row.diameter},
           {"bound", row.bound},
           {"ko_bound", row.ko_bound}};
    j["path_length"] = row.path_length ? Json(*row.path_length) : Json(nullptr);
    Json trace = Json::array();
    for (auto t : row.trace) trace.push_back(to_string(t));
    j["trace"] = std::move(trace);
    j["pairs_checked"] = row.pairs_checked;
    j["max_path_length"] = row.max_path_length;
    j["objective_draws"] = row.objective_draws;
    j["paths_ok"] = row.paths_ok;
    j["walk_ok"] = row.walk_ok;
    j["route_ok"] = row.route_ok;
    j["coordinate_route_ok"] = row.coordinate_route_ok;
    j["product_ok"] = row.product_ok ? Json(*row.product_ok) : Json(nullptr);
    rows.push_back(std::move(j));
  }
  return Json{{"rng", Rng::kAlgorithm},
              {"seed", r.seed},
              {"rows", std::move(rows)},
              {"summary", {{"instances", r.rows.size()}, {"max_gap", r.max_gap()}, {"violations", r.violations.size()}}}};
}

inline std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "spec,family,n,k,d,vertices,edges,diameter,bound,ko_bound,path_length,trace,pairs_checked,"
        "max_path_length,objective_draws,paths_ok,walk_ok,route_ok,coordinate_route_ok,product_ok\n";
  for (const auto& row : r.rows) {
    os << '"' << row.spec << "\"," << row.family << ',' << row.n << ',' << row.k << ',' << row.d << ','
       << row.vertices << ',' << row.edges << ',' << row.diameter << ',' << row.bound << ',' << row.ko_bound << ','
       << (row.path_length ? std::to_string(*row.path_length) : "") << ',' << detail::join_trace(row.trace, '|')
       << ',' << row.pairs_checked << ',' << row.max_path_length << ',' << row.objective_draws << ',' << row.paths_ok
       << ',' << row.walk_ok << ',' << row.route_ok << ',' << row.coordinate_route_ok << ','
       << (row.product_ok ? std::to_string(*row.product_ok) : "") << '\n';
  }
  return os.str();
}

inline Json violations_to_json(const ExperimentReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) {
    Json j{{"instance", v.instance}, {"kind", v.kind}, {"detail", v.detail}, {"polytope", v.polytope}};
    j["pair"] = v.pair ? Json{v.pair->first, v.pair->second} : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace latdiam
