#pragma once

// Lattice polytopes in V-representation and the affine maps the diameter
// arguments apply to them. Points are kept sorted lexicographically after
// every transform so vertex indices are reproducible.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/lp.hpp"
#include "latdiam/rational.hpp"
#include "latdiam/vertex_tests.hpp"

namespace latdiam {

class LatticePolytope {
 public:
  LatticePolytope() = default;

  /// Points are sorted on construction. Throws InputError on duplicates,
  /// mixed dimensions, or coordinates outside [0, k].
  LatticePolytope(std::size_t ambient_dim, Coord grid_bound, std::vector<Point> points,
                  bool vertices_confirmed = false)
      : n_(ambient_dim), k_(grid_bound), points_(std::move(points)), confirmed_(vertices_confirmed) {
    if (k_ < 0) throw InputError("grid bound must be nonnegative");
    for (const auto& p : points_) {
      if (p.size() != n_) {
        throw InputError("point " + format_point(p) + " does not have dimension " +
                         std::to_string(n_));
      }
      for (auto x : p) {
        if (x < 0 || x > k_) {
          throw InputError("point " + format_point(p) + " leaves [0," + std::to_string(k_) +
                           "]^" + std::to_string(n_));
        }
      }
    }
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
      throw InputError("duplicate point in polytope");
    }
  }

  [[nodiscard]] std::size_t ambient_dim() const { return n_; }
  [[nodiscard]] Coord grid_bound() const { return k_; }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] const Point& point(std::size_t i) const { return points_.at(i); }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] bool vertices_confirmed() const { return confirmed_; }

  [[nodiscard]] std::optional<std::size_t> index_of(const Point& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  /// FNV-1a over (n, k, points); identifies the polytope in paths/skeletons.
  [[nodiscard]] std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
      for (int b = 0; b < 8; ++b) {
        h ^= (x >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    };
    mix(n_);
    mix(static_cast<std::uint64_t>(k_));
    mix(points_.size());
    for (const auto& p : points_) {
      for (auto x : p) mix(static_cast<std::uint64_t>(x));
    }
    return h;
  }

  friend bool operator==(const LatticePolytope&, const LatticePolytope&) = default;

 private:
  std::size_t n_ = 0;
  Coord k_ = 0;
  std::vector<Point> points_;
  bool confirmed_ = false;
};

/// Smallest k with every coordinate in [0, k].
inline Coord infer_grid_bound(std::span<const Point> points) {
  Coord k = 0;
  for (const auto& p : points) {
    for (auto x : p) k = std::max(k, x);
  }
  return k;
}

inline std::size_t affine_rank(const LatticePolytope& p) { return affine_rank(p.points()); }

enum class TransformKind { Identity, Flip, Drop, Scale, Translate, Product, Restrict };

inline const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::Identity: return "identity";
    case TransformKind::Flip: return "flip";
    case TransformKind::Drop: return "drop";
    case TransformKind::Scale: return "scale";
    case TransformKind::Translate: return "translate";
    case TransformKind::Product: return "product";
    case TransformKind::Restrict: return "restrict";
  }
  return "?";
}

struct Transform {
  TransformKind kind = TransformKind::Identity;
  std::size_t coordinate = 0;    // flip / drop (0-based)
  std::vector<Coord> parameters;  // scale factor, translation vector, or factor sizes
};

/// forward[i] is the source index of result point i.
struct VertexMap {
  std::vector<std::size_t> forward;
  bool bijective = true;
  Transform transform;
};

namespace detail {

// Applies `f` to every point, sorts, and records where each result came from.
// Colliding images are merged (first source wins) and mark the map
// non-bijective.
template <class F>
std::pair<std::vector<Point>, VertexMap> map_points(const std::vector<Point>& src, F f,
                                                    Transform t) {
  std::vector<std::pair<Point, std::size_t>> img;
  img.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) img.emplace_back(f(src[i]), i);
  std::sort(img.begin(), img.end());
  VertexMap map{{}, true, std::move(t)};
  std::vector<Point> out;
  for (auto& [p, i] : img) {
    if (!out.empty() && out.back() == p) {
      map.bijective = false;
      continue;
    }
    out.push_back(std::move(p));
    map.forward.push_back(i);
  }
  return {std::move(out), std::move(map)};
}

inline void check_coordinate(const LatticePolytope& p, std::size_t i) {
  if (i >= p.ambient_dim()) {
    throw InputError("coordinate " + std::to_string(i) + " out of range for dimension " +
                     std::to_string(p.ambient_dim()));
  }
}

}  // namespace detail

/// Keeps exactly the points that are vertices of the hull. Non-vertices are
/// removed one at a time.
inline LatticePolytope canonicalize_vertices(const LatticePolytope& p) {
  if (p.empty()) throw InputError("cannot canonicalize an empty polytope");
  if (p.vertices_confirmed()) return p;
  std::vector<Point> pts;
  // A point with both axis neighbours p +- e_j in the set is their midpoint.
  for (const auto& x : p.points()) {
    bool interior = false;
    for (std::size_t j = 0; j < x.size() && !interior; ++j) {
      Point lo = x, hi = x;
      --lo[j];
      ++hi[j];
      interior = std::binary_search(p.points().begin(), p.points().end(), lo) &&
                 std::binary_search(p.points().begin(), p.points().end(), hi);
    }
    if (!interior) pts.push_back(x);
  }
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (pts.size() > 1 && !is_vertex(pts, i)) pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return LatticePolytope(p.ambient_dim(), p.grid_bound(), std::move(pts), true);
}

/// Replaces x_i by k - x_i.
inline std::pair<LatticePolytope, VertexMap> flip_coordinate(const LatticePolytope& p,
                                                             std::size_t i) {
  detail::check_coordinate(p, i);
  const Coord k = p.grid_bound();
  auto [pts, map] = detail::map_points(
      p.points(),
      [&](Point x) {
        x[i] = k - x[i];
        return x;
      },
      Transform{TransformKind::Flip, i, {}});
  return {LatticePolytope(p.ambient_dim(), k, std::move(pts), p.vertices_confirmed()),
          std::move(map)};
}

/// Projects onto the i-th coordinate hyperplane. When two points collide the
/// map is flagged non-bijective; vertex status is only carried over when the
/// projection is injective on the affine hull.
inline std::pair<LatticePolytope, VertexMap> drop_coordinate(const LatticePolytope& p,
                                                             std::size_t i) {
  detail::check_coordinate(p, i);
  auto [pts, map] = detail::map_points(
      p.points(),
      [&](Point x) {
        x.erase(x.begin() + static_cast<std::ptrdiff_t>(i));
        return x;
      },
      Transform{TransformKind::Drop, i, {}});
  bool confirmed = false;
  if (p.vertices_confirmed() && map.bijective && !pts.empty()) {
    confirmed = affine_rank(pts) == affine_rank(p.points());
  }
  return {LatticePolytope(p.ambient_dim() - 1, p.grid_bound(), std::move(pts), confirmed),
          std::move(map)};
}

/// Adds `shift` to every point. The image must stay inside [0, k]^n.
inline std::pair<LatticePolytope, VertexMap> translate(const LatticePolytope& p,
                                                       std::span<const Coord> shift) {
  if (shift.size() != p.ambient_dim()) throw InputError("translation has wrong dimension");
  auto [pts, map] = detail::map_points(
      p.points(),
      [&](Point x) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += shift[j];
        return x;
      },
      Transform{TransformKind::Translate, 0, {shift.begin(), shift.end()}});
  return {LatticePolytope(p.ambient_dim(), p.grid_bound(), std::move(pts), p.vertices_confirmed()),
          std::move(map)};
}

/// Sub-polytope on the listed indices (a face, when the indices are one).
inline std::pair<LatticePolytope, VertexMap> restrict_to(const LatticePolytope& p,
                                                         std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (auto i : indices) pts.push_back(p.point(i));
  VertexMap map{std::move(indices), true, Transform{TransformKind::Restrict, 0, {}}};
  return {LatticePolytope(p.ambient_dim(), p.grid_bound(), std::move(pts), p.vertices_confirmed()),
          std::move(map)};
}

/// P x Q with points u (+) v. Unequal grid bounds take the maximum.
inline LatticePolytope cartesian_product(const LatticePolytope& p, const LatticePolytope& q) {
  std::vector<Point> pts;
  pts.reserve(p.size() * q.size());
  for (const auto& u : p.points()) {
    for (const auto& v : q.points()) {
      Point w = u;
      w.insert(w.end(), v.begin(), v.end());
      pts.push_back(std::move(w));
    }
  }
  return LatticePolytope(p.ambient_dim() + q.ambient_dim(), std::max(p.grid_bound(), q.grid_bound()),
                         std::move(pts), p.vertices_confirmed() && q.vertices_confirmed());
}

/// Doubles a half-integral point list into a (0,2)-polytope.
inline LatticePolytope scale_to_0k(std::span<const RationalVector> points) {
  if (points.empty()) throw InputError("scale_to_0k needs at least one point");
  const std::size_t n = points.front().size();
  const Rational half(1, 2);
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("points of mixed dimension");
    Point q(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] == Rational(0)) {
        q[j] = 0;
      } else if (p[j] == half) {
        q[j] = 1;
      } else if (p[j] == Rational(1)) {
        q[j] = 2;
      } else {
        throw InputError("coordinate " + p[j].to_string() + " is not in {0, 1/2, 1}");
      }
    }
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return LatticePolytope(n, 2, std::move(out));
}

}  // namespace latdiam
