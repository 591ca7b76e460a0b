#pragma once

// Instance families: hypercubes, products of hexagons, the [0,3]^2 octagon,
// seeded random hulls, and fractional matching polytopes.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/polytope.hpp"

namespace latdiam {

/// Seeded 64-bit generator. Bounded draws use rejection sampling on raw
/// engine output.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, range).
  std::uint64_t below(std::uint64_t range) {
    if (range == 0) throw InputError("empty sampling range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    for (;;) {
      std::uint64_t x = engine_();
      if (x < limit) return x % range;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

enum class Family { Hypercube, HexagonPower, Octagon3, RandomHull, FractionalMatching };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Hypercube: return "hypercube";
    case Family::HexagonPower: return "hexagon_power";
    case Family::Octagon3: return "octagon3";
    case Family::RandomHull: return "random_hull";
    case Family::FractionalMatching: return "fractional_matching";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (auto f : {Family::Hypercube, Family::HexagonPower, Family::Octagon3, Family::RandomHull,
                 Family::FractionalMatching}) {
    if (s == to_string(f)) return f;
  }
  throw InputError("unknown generator family '" + s + "'");
}

using Edge = std::pair<std::size_t, std::size_t>;

struct GeneratorSpec {
  Family family = Family::Hypercube;
  std::int64_t d = 1;       // hypercube, hexagon_power
  std::int64_t n = 2;       // random_hull ambient dimension
  std::int64_t k = 1;       // hypercube, random_hull
  std::int64_t budget = 1;  // random_hull sample count
  std::vector<Edge> edges;  // fractional_matching
  std::uint64_t seed = 0;

  [[nodiscard]] std::string label() const {
    switch (family) {
      case Family::Hypercube:
        return "hypercube(d=" + std::to_string(d) + ",k=" + std::to_string(k) + ")";
      case Family::HexagonPower: return "hexagon_power(d=" + std::to_string(d) + ")";
      case Family::Octagon3: return "octagon3";
      case Family::RandomHull:
        return "random_hull(n=" + std::to_string(n) + ",k=" + std::to_string(k) +
               ",budget=" + std::to_string(budget) + ",seed=" + std::to_string(seed) + ")";
      case Family::FractionalMatching: {
        std::string s = "fractional_matching(";
        for (std::size_t i = 0; i < edges.size(); ++i) {
          if (i) s += ";";
          s += std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
        }
        return s + ")";
      }
    }
    return "?";
  }
};

/// {0,k}^d.
inline LatticePolytope gen_hypercube(std::int64_t d, std::int64_t k) {
  if (d < 0) throw InputError("hypercube dimension must be >= 0");
  if (k < 1) throw InputError("hypercube needs k >= 1");
  if (d > 20) throw InputError("hypercube dimension too large");
  std::vector<Point> pts;
  for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
    Point p(static_cast<std::size_t>(d));
    for (std::int64_t b = 0; b < d; ++b) p[static_cast<std::size_t>(b)] = ((mask >> b) & 1u) ? k : 0;
    pts.push_back(std::move(p));
  }
  return LatticePolytope(static_cast<std::size_t>(d), k, std::move(pts), true);
}

/// H_1 = [0,2], H_2 = conv{(0,0),(1,0),(0,1),(2,1),(1,2),(2,2)},
/// H_d = H_2^{d/2} for even d and H_{d-1} x H_1 for odd d.
inline LatticePolytope gen_hexagon_power(std::int64_t d) {
  if (d < 1) throw InputError("hexagon_power needs d >= 1");
  if (d > 12) throw InputError("hexagon_power dimension too large");
  const LatticePolytope h1(1, 2, {{0}, {2}}, true);
  const LatticePolytope h2(2, 2, {{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}}, true);
  if (d == 1) return h1;
  LatticePolytope out = h2;
  for (std::int64_t i = 1; i < d / 2; ++i) out = cartesian_product(out, h2);
  if (d % 2 == 1) out = cartesian_product(out, h1);
  return out;
}

/// The symmetric octagon inscribed in [0,3]^2.
inline LatticePolytope gen_octagon3() {
  return LatticePolytope(2, 3, {{1, 0}, {2, 0}, {3, 1}, {3, 2}, {2, 3}, {1, 3}, {0, 2}, {0, 1}}, true);
}

/// `budget` uniform samples from [0,k]^n, deduplicated and reduced to the
/// hull vertices.
inline LatticePolytope gen_random_hull(std::int64_t n, std::int64_t k, std::int64_t budget,
                                       std::uint64_t seed) {
  if (n < 1 || k < 1 || budget < 1) throw InputError("random_hull needs n, k, budget >= 1");
  if (n > 8 || budget > 4096) throw InputError("random_hull parameters beyond desk scale");
  Rng rng(seed);
  std::set<Point> pts;
  for (std::int64_t s = 0; s < budget; ++s) {
    Point p(static_cast<std::size_t>(n));
    for (auto& x : p) x = rng.between(0, k);
    pts.insert(std::move(p));
  }
  return canonicalize_vertices(
      LatticePolytope(static_cast<std::size_t>(n), k, {pts.begin(), pts.end()}));
}

/// {x in [0,1]^E : x(delta(v)) <= 1 for all v}, enumerated over {0,1/2,1}^E
/// (the polytope is half-integral), reduced to vertices and scaled by 2.
inline LatticePolytope gen_fractional_matching(const std::vector<Edge>& edges) {
  if (edges.empty()) throw InputError("fractional_matching needs at least one edge");
  if (edges.size() > 12) throw InputError("fractional_matching supports at most 12 edges");
  std::set<Edge> seen;
  std::size_t nodes = 0;
  for (auto [a, b] : edges) {
    if (a == b) throw InputError("graph has a loop at node " + std::to_string(a));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw InputError("graph has a parallel edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    nodes = std::max(nodes, std::max(a, b) + 1);
  }

  const std::size_t m = edges.size();
  const Rational half(1, 2);
  const Rational levels[] = {Rational(0), half, Rational(1)};
  std::vector<RationalVector> feasible;
  std::vector<std::size_t> digit(m, 0);
  for (;;) {
    std::vector<Rational> load(nodes);
    RationalVector x(m);
    for (std::size_t e = 0; e < m; ++e) {
      x[e] = levels[digit[e]];
      load[edges[e].first] += x[e];
      load[edges[e].second] += x[e];
    }
    if (std::all_of(load.begin(), load.end(), [](const Rational& l) { return l <= Rational(1); })) {
      feasible.push_back(std::move(x));
    }
    std::size_t e = 0;
    while (e < m && digit[e] == 2) digit[e++] = 0;
    if (e == m) break;
    ++digit[e];
  }
  return canonicalize_vertices(scale_to_0k(feasible));
}

inline LatticePolytope generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Hypercube: return gen_hypercube(spec.d, spec.k);
    case Family::HexagonPower: return gen_hexagon_power(spec.d);
    case Family::Octagon3: return gen_octagon3();
    case Family::RandomHull: return gen_random_hull(spec.n, spec.k, spec.budget, spec.seed);
    case Family::FractionalMatching: return gen_fractional_matching(spec.edges);
  }
  throw InputError("unknown generator family");
}

}  // namespace latdiam
