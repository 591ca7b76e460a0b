// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "latdiam/latdiam.hpp"
#include "oracles.hpp"

using namespace latdiam;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, double seconds) {
  std::printf("[%s] AC%-2d %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void criterion(int id, const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string what;
  bool ok = false;
  try {
    ok = body(what);
  } catch (const std::exception& e) {
    what += std::string(" exception: ") + e.what();
  }
  report(id, ok, what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::size_t power(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

struct Instance {
  LatticePolytope p;
  Skeleton s;
  std::size_t d;
};

// Seeded random (0,k)-polytopes of affine rank 2 or 3.
std::vector<Instance> random_corpus(std::size_t count) {
  Rng rng(20240601);
  std::vector<Instance> out;
  while (out.size() < count) {
    const auto n = rng.between(2, 3);
    const auto k = rng.between(2, 4);
    auto p = gen_random_hull(n, k, rng.between(5, 24), rng.next());
    const auto d = affine_rank(p);
    if (d < 2) continue;
    auto s = build_skeleton(p);
    out.push_back({std::move(p), std::move(s), d});
  }
  return out;
}

}  // namespace

int main() {
  std::vector<Instance> corpus;

  criterion(1, [](std::string& what) {
    const std::size_t expect[] = {1, 3, 4, 6, 7};
    bool ok = true;
    what = "diameter(H_d), d=1..5:";
    for (std::int64_t d = 1; d <= 5; ++d) {
      auto diam = diameter(build_skeleton(gen_hexagon_power(d)));
      what += " " + std::to_string(diam);
      ok &= diam == expect[d - 1] && static_cast<std::int64_t>(diam) == (3 * d) / 2;
    }
    return ok;
  });

  criterion(2, [](std::string& what) {
    bool ok = true;
    what = "diameter([0,1]^d), d=1..6:";
    for (std::int64_t d = 1; d <= 6; ++d) {
      auto diam = diameter(build_skeleton(gen_hypercube(d, 1)));
      what += " " + std::to_string(diam);
      ok &= diam == static_cast<std::size_t>(d);
    }
    return ok;
  });

  criterion(3, [](std::string& what) {
    auto o = gen_octagon3();
    bool convex = o.size() == 8;
    for (std::size_t i = 0; i < o.size(); ++i) convex &= is_vertex(o.points(), i);
    auto diam = diameter(build_skeleton(o));
    what = "octagon in [0,3]^2: vertices " + std::to_string(o.size()) + ", diameter " + std::to_string(diam) +
           ", bound(2,3) " + std::to_string(diameter_bound(2, 3));
    return convex && diam == 4 && diameter_bound(2, 3) == 5;
  });

  criterion(4, [&](std::string& what) {
    corpus = random_corpus(500);
    std::size_t violations = 0, rechecked = 0;
    std::set<std::pair<std::size_t, Coord>> shapes;
    for (const auto& in : corpus) {
      const auto k = in.p.grid_bound();
      const auto di = static_cast<std::int64_t>(in.d);
      auto diam = static_cast<std::int64_t>(diameter(in.s));
      auto fw = oracle::floyd_warshall(in.s.adjacency());
      std::size_t fw_diam = 0;
      for (const auto& row : fw) {
        for (auto x : row) fw_diam = std::max(fw_diam, x);
      }
      rechecked += fw_diam == static_cast<std::size_t>(diam);
      violations += diam > diameter_bound(di, k) || diam > ko_bound(di, k);
      shapes.emplace(in.d, k);
    }
    what = std::to_string(corpus.size()) + " random polytopes over " + std::to_string(shapes.size()) +
           " (d,k) classes, " + std::to_string(violations) + " bound violations";
    return corpus.size() >= 500 && shapes.size() == 6 && violations == 0 && rechecked == corpus.size();
  });

  criterion(5, [&](std::string& what) {
    std::size_t pairs = 0, violations = 0;
    for (const auto& in : corpus) {
      const auto bound = diameter_bound(static_cast<std::int64_t>(in.d), in.p.grid_bound());
      for (std::size_t u = 0; u < in.p.size(); ++u) {
        auto dist = bfs_distances(in.s, u);
        for (std::size_t v = 0; v < in.p.size(); ++v) {
          if (u == v) continue;
          auto r = construct_path(in.p, in.s, u, v);
          ++pairs;
          const auto& vs = r.path.vertices;
          bool ok = vs.front() == u && vs.back() == v;
          for (std::size_t i = 0; i + 1 < vs.size(); ++i) ok &= in.s.adjacent(vs[i], vs[i + 1]);
          ok &= static_cast<std::int64_t>(r.path.length()) <= bound && r.path.length() >= dist[v];
          ok &= verify_certificate(r.path, r.certificate, in.s);
          violations += !ok;
        }
      }
    }
    what = std::to_string(pairs) + " ordered pairs on " + std::to_string(corpus.size()) + " instances, " +
           std::to_string(violations) + " violations";
    return pairs > 0 && violations == 0;
  });

  struct Draw {
    const Instance* in;
    std::size_t u, v;
    Point c;
  };
  std::vector<Draw> draws;
  {
    Rng rng(77);
    for (const auto& in : corpus) {
      for (int t = 0; t < 2; ++t) {
        Point c(in.p.ambient_dim());
        for (auto& x : c) x = rng.between(-3, 3);
        draws.push_back({&in, rng.below(in.p.size()), rng.below(in.p.size()), c});
      }
    }
  }

  criterion(6, [&](std::string& what) {
    std::size_t violations = 0;
    for (const auto& dr : draws) {
      const auto& p = dr.in->p;
      auto w = monotone_walk(p, dr.in->s, dr.u, dr.c);
      auto mf = min_face(p, dr.c);
      const auto& vs = w.path.vertices;
      bool ok = dot(dr.c, p.point(w.landing)) == mf.gamma;
      ok &= static_cast<Coord>(w.path.length()) <= dot(dr.c, p.point(dr.u)) - mf.gamma;
      for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        ok &= dr.in->s.adjacent(vs[i], vs[i + 1]);
        ok &= dot(dr.c, p.point(vs[i + 1])) <= dot(dr.c, p.point(vs[i])) - 1;
      }
      violations += !ok;
    }
    what = std::to_string(draws.size()) + " monotone walk draws, " + std::to_string(violations) + " violations";
    return draws.size() >= 1000 && violations == 0;
  });

  criterion(7, [&](std::string& what) {
    std::size_t violations = 0;
    for (const auto& dr : draws) {
      const auto& p = dr.in->p;
      auto r = face_route(p, dr.in->s, dr.u, dr.v, dr.c);
      bool ok = static_cast<Coord>(r.walk_u.length() + r.walk_v.length()) <=
                dot(dr.c, p.point(dr.u)) + dot(dr.c, p.point(dr.v)) - 2 * r.gamma;
      for (std::size_t i = 0; i < p.ambient_dim(); ++i) {
        Coord lo = p.grid_bound(), hi = 0;
        for (const auto& q : p.points()) {
          lo = std::min(lo, q[i]);
          hi = std::max(hi, q[i]);
        }
        Point e(p.ambient_dim(), 0);
        e[i] = p.point(dr.u)[i] + p.point(dr.v)[i] <= lo + hi ? 1 : -1;
        auto side = face_route(p, dr.in->s, dr.u, dr.v, e);
        ok &= static_cast<Coord>(side.walk_u.length() + side.walk_v.length()) <= hi - lo;
      }
      violations += !ok;
    }
    what = std::to_string(draws.size()) + " face route draws (general c and every +-e^i), " +
           std::to_string(violations) + " violations";
    return draws.size() >= 1000 && violations == 0;
  });

  criterion(8, [](std::string& what) {
    Rng rng(88);
    std::size_t pairs = 0, violations = 0;
    while (pairs < 100) {
      auto factor = [&] {
        return gen_random_hull(rng.between(1, 2), rng.between(1, 3), rng.between(2, 7), rng.next());
      };
      auto a = factor(), b = factor();
      auto prod = cartesian_product(a, b);
      auto lhs = diameter(build_skeleton(prod));
      auto rhs = diameter(build_skeleton(a)) + diameter(build_skeleton(b));
      violations += lhs != rhs;
      ++pairs;
    }
    what = std::to_string(pairs) + " product pairs, " + std::to_string(violations) + " violations";
    return violations == 0;
  });

  criterion(9, [&](std::string& what) {
    std::size_t checked = 0, violations = 0;
    auto check = [&](const LatticePolytope& p) {
      ++checked;
      violations += p.size() > power(static_cast<std::size_t>(p.grid_bound()) + 1, affine_rank(p));
    };
    for (const auto& in : corpus) check(in.p);
    for (std::int64_t d = 1; d <= 5; ++d) check(gen_hexagon_power(d));
    for (std::int64_t d = 1; d <= 6; ++d) check(gen_hypercube(d, 1));
    check(gen_octagon3());
    check(gen_fractional_matching({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    what = std::to_string(checked) + " canonical instances, " + std::to_string(violations) + " above (k+1)^d";
    return violations == 0;
  });

  criterion(10, [](std::string& what) {
    Rng rng(1010);
    std::size_t polygons = 0, pairs = 0, mismatches = 0;
    while (polygons < 100) {
      const auto k = rng.between(2, 6);
      std::set<Point> raw;
      for (std::int64_t i = rng.between(3, 10); i > 0; --i) raw.insert({rng.between(0, k), rng.between(0, k)});
      auto p = canonicalize_vertices(LatticePolytope(2, k, {raw.begin(), raw.end()}));
      if (affine_rank(p) < 2) continue;
      ++polygons;
      auto edges = oracle::hull_edges2d(p.points());
      for (std::size_t u = 0; u < p.size(); ++u) {
        for (std::size_t v = u + 1; v < p.size(); ++v) {
          ++pairs;
          mismatches += are_adjacent(p, u, v) != (edges.count({p.point(u), p.point(v)}) > 0);
        }
      }
    }
    for (std::int64_t d = 1; d <= 5; ++d) {
      auto c = gen_hypercube(d, 1);
      for (std::size_t u = 0; u < c.size(); ++u) {
        for (std::size_t v = u + 1; v < c.size(); ++v) {
          ++pairs;
          mismatches += are_adjacent(c, u, v) != (oracle::hamming(c.point(u), c.point(v)) == 1);
        }
      }
    }
    what = std::to_string(polygons) + " polygons + hypercubes d<=5, " + std::to_string(pairs) + " pairs, " +
           std::to_string(mismatches) + " mismatches";
    return polygons == 100 && mismatches == 0;
  });

  criterion(11, [](std::string& what) {
    const std::vector<Edge> c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    auto expect = oracle::matching_vertices(c5);
    auto p = gen_fractional_matching(c5);
    const auto d = affine_rank(p);
    const auto diam = diameter(build_skeleton(p));
    const auto bound = diameter_bound(static_cast<std::int64_t>(d), 2);
    what = "C5: oracle " + std::to_string(expect.size()) + " vertices, generator " + std::to_string(p.size()) +
           ", rank " + std::to_string(d) + ", diameter " + std::to_string(diam) + " <= " + std::to_string(bound);
    return expect.size() == 12 && p.points() == expect && d == 5 && bound == 7 &&
           static_cast<std::int64_t>(diam) <= bound;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
