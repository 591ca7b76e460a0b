#pragma once

// LP-backed predicates on V-represented point sets: vertex membership and
// edge (1-face) membership. Points are integer vectors; every test is exact.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/lp.hpp"

namespace latdiam {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

inline Coord dot(std::span<const Coord> c, std::span<const Coord> x) {
  Coord acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * x[i];
  return acc;
}

inline std::string format_point(std::span<const Coord> p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

namespace detail {

inline void check_index(std::span<const Point> points, std::size_t i, const char* what) {
  if (i >= points.size()) {
    throw InputError(std::string(what) + " index " + std::to_string(i) + " out of range (" +
                     std::to_string(points.size()) + " points)");
  }
}

// Feasibility of  sum_w lambda_w * scale * w = target,  sum lambda = 1,
// lambda >= 0, over the points not listed in `skip`.
inline bool in_hull_of(std::span<const Point> points, std::span<const std::size_t> skip,
                       const Point& target, Coord scale) {
  std::vector<std::size_t> cols;
  for (std::size_t w = 0; w < points.size(); ++w) {
    bool skipped = false;
    for (auto s : skip) skipped |= (s == w);
    if (!skipped) cols.push_back(w);
  }
  if (cols.empty()) return false;
  const std::size_t n = target.size();
  LinProgram lp(cols.size());
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) row[c] = Rational(scale * points[cols[c]][j]);
    lp.add(std::move(row), Relation::Equal, Rational(target[j]));
  }
  lp.add(RationalVector(cols.size(), Rational(1)), Relation::Equal, Rational(1));
  return lp_solve(lp).status == LpStatus::Feasible;
}

}  // namespace detail

/// True iff points[index] is not a convex combination of the other points.
inline bool is_vertex(std::span<const Point> points, std::size_t index) {
  detail::check_index(points, index, "vertex");
  std::size_t skip[] = {index};
  return !detail::in_hull_of(points, skip, points[index], 1);
}

/// Overload taking the point itself; it must occur in `points`.
inline bool is_vertex(std::span<const Point> points, const Point& p) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == p) return is_vertex(points, i);
  }
  throw InputError("point " + format_point(p) + " is not in the list");
}

/// Solves for an integral-scaled separating functional: c with
/// c.(v-u) = 0 and c.(w-u) >= 1 for every other point w. Such a c exists
/// exactly when conv{u, v} is an edge of conv(points). `points` must be the
/// vertex set.
inline std::optional<RationalVector> edge_certificate(std::span<const Point> points,
                                                      std::size_t u, std::size_t v) {
  detail::check_index(points, u, "vertex");
  detail::check_index(points, v, "vertex");
  if (u == v) throw InputError("edge test needs two distinct vertices");
  const auto& pu = points[u];
  const std::size_t n = pu.size();
  LinProgram lp(n, VarSign::Free);
  RationalVector along(n);
  for (std::size_t j = 0; j < n; ++j) along[j] = Rational(points[v][j] - pu[j]);
  lp.add(std::move(along), Relation::Equal, Rational(0));
  for (std::size_t w = 0; w < points.size(); ++w) {
    if (w == u || w == v) continue;
    RationalVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = Rational(points[w][j] - pu[j]);
    lp.add(std::move(row), Relation::GreaterEqual, Rational(1));
  }
  auto out = lp_solve(lp);
  if (out.status != LpStatus::Feasible) return std::nullopt;
  return std::move(out.point);
}

inline bool are_adjacent(std::span<const Point> points, std::size_t u, std::size_t v) {
  return edge_certificate(points, u, v).has_value();
}

/// Second route to the same relation: conv{u, v} is an edge iff no convex
/// representation of the midpoint puts positive weight outside {u, v}.
inline bool adjacent_by_combination(std::span<const Point> points, std::size_t u,
                                    std::size_t v) {
  detail::check_index(points, u, "vertex");
  detail::check_index(points, v, "vertex");
  if (u == v) throw InputError("edge test needs two distinct vertices");
  const std::size_t n = points[u].size();
  const std::size_t m = points.size();
  LinProgram lp(m);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(m);
    for (std::size_t w = 0; w < m; ++w) row[w] = Rational(2 * points[w][j]);
    lp.add(std::move(row), Relation::Equal, Rational(points[u][j] + points[v][j]));
  }
  lp.add(RationalVector(m, Rational(1)), Relation::Equal, Rational(1));
  RationalVector weight(m, Rational(1));
  weight[u] = Rational(0);
  weight[v] = Rational(0);
  lp.maximize(std::move(weight));
  auto out = lp_solve(lp);
  return out.status == LpStatus::Optimal && out.value->is_zero();
}

/// Whether (u+v)/2 lies in the convex hull of the points other than u, v.
inline bool midpoint_in_hull_of_others(std::span<const Point> points, std::size_t u,
                                       std::size_t v) {
  detail::check_index(points, u, "vertex");
  detail::check_index(points, v, "vertex");
  Point sum(points[u].size());
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = points[u][j] + points[v][j];
  std::size_t skip[] = {u, v};
  return detail::in_hull_of(points, skip, sum, 2);
}

}  // namespace latdiam
