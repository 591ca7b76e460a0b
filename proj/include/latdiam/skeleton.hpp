#pragma once

// 1-skeleton construction and exact graph distances.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/polytope.hpp"
#include "latdiam/vertex_tests.hpp"

namespace latdiam {

inline constexpr std::size_t kUnreachable = SIZE_MAX;

class Skeleton {
 public:
  Skeleton() = default;
  Skeleton(std::vector<std::vector<std::size_t>> adjacency, std::uint64_t fingerprint = 0)
      : adj_(std::move(adjacency)), fingerprint_(fingerprint) {
    for (auto& row : adj_) std::sort(row.begin(), row.end());
  }

  [[nodiscard]] std::size_t vertex_count() const { return adj_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_.at(i); }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& adjacency() const { return adj_; }
  [[nodiscard]] std::uint64_t fingerprint() const { return fingerprint_; }

  [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const {
    const auto& row = adj_.at(i);
    return std::binary_search(row.begin(), row.end(), j);
  }

  [[nodiscard]] std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adj_) twice += row.size();
    return twice / 2;
  }

  /// Symmetric and irreflexive.
  [[nodiscard]] bool well_formed() const {
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      for (auto j : adj_[i]) {
        if (j == i || j >= adj_.size() || !adjacent(j, i)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Skeleton& a, const Skeleton& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::uint64_t fingerprint_ = 0;
};

enum class EdgeTest {
  Certificate,  // separating functional c, margin normalized to 1
  Combination,  // midpoint convex-combination weight
};

struct SkeletonOptions {
  EdgeTest edge_test = EdgeTest::Certificate;
  // Pairs whose midpoint is also the midpoint of a disjoint pair are
  // rejected without an LP.
  bool midpoint_filter = true;
  unsigned jobs = 1;
};

inline bool are_adjacent(const LatticePolytope& p, std::size_t u, std::size_t v) {
  return are_adjacent(std::span<const Point>(p.points()), u, v);
}

inline Skeleton build_skeleton(const LatticePolytope& p, const SkeletonOptions& opt = {}) {
  if (!p.vertices_confirmed()) {
    throw InputError("build_skeleton needs a vertex-confirmed polytope; canonicalize first");
  }
  const auto& pts = p.points();
  const std::size_t m = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }

  std::vector<char> rejected(pairs.size(), 0);
  if (opt.midpoint_filter) {
    std::map<Point, std::size_t> seen;
    std::vector<Point> sums(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      auto [i, j] = pairs[e];
      Point s(p.ambient_dim());
      for (std::size_t c = 0; c < s.size(); ++c) s[c] = pts[i][c] + pts[j][c];
      ++seen[s];
      sums[e] = std::move(s);
    }
    for (std::size_t e = 0; e < pairs.size(); ++e) rejected[e] = seen[sums[e]] > 1;
  }

  std::vector<char> edge(pairs.size(), 0);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t e = begin; e < pairs.size(); e += stride) {
      if (rejected[e]) continue;
      auto [i, j] = pairs[e];
      edge[e] = opt.edge_test == EdgeTest::Certificate ? are_adjacent(pts, i, j)
                                                       : adjacent_by_combination(pts, i, j);
    }
  };
  const unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    if (!edge[e]) continue;
    adj[pairs[e].first].push_back(pairs[e].second);
    adj[pairs[e].second].push_back(pairs[e].first);
  }
  Skeleton s(std::move(adj), p.fingerprint());

  // Polytope graphs are connected.
  if (m > 1) {
    std::vector<char> seen(m, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto y : s.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          queue.push_back(y);
        }
      }
    }
    if (reached != m) {
      std::string dump;
      for (const auto& q : pts) dump += format_point(q) + "\n";
      throw InternalError("skeleton is disconnected", dump);
    }
  }
  return s;
}

/// Single-source BFS; unreachable vertices get kUnreachable.
inline std::vector<std::size_t> bfs_distances(const Skeleton& s, std::size_t source) {
  std::vector<std::size_t> dist(s.vertex_count(), kUnreachable);
  if (source >= s.vertex_count()) throw InputError("vertex index out of range");
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto y : s.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

struct DistanceResult {
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<std::size_t> distance;  // nullopt when unreachable
};

inline DistanceResult bfs_distance(const Skeleton& s, std::size_t u, std::size_t v) {
  if (v >= s.vertex_count()) throw InputError("vertex index out of range");
  auto d = bfs_distances(s, u)[v];
  return {u, v, d == kUnreachable ? std::nullopt : std::optional<std::size_t>(d)};
}

struct DiameterInfo {
  std::size_t diameter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> extremal_pairs;  // u < v
};

inline DiameterInfo diameter_info(const Skeleton& s) {
  DiameterInfo info;
  for (std::size_t u = 0; u < s.vertex_count(); ++u) {
    auto dist = bfs_distances(s, u);
    for (std::size_t v = u + 1; v < dist.size(); ++v) {
      if (dist[v] == kUnreachable) {
        throw InternalError("diameter of a disconnected skeleton (" + std::to_string(u) + " vs " +
                            std::to_string(v) + ")");
      }
      if (dist[v] > info.diameter) {
        info.diameter = dist[v];
        info.extremal_pairs.clear();
      }
      if (dist[v] == info.diameter && info.diameter > 0) info.extremal_pairs.emplace_back(u, v);
    }
  }
  return info;
}

inline std::size_t diameter(const Skeleton& s) { return diameter_info(s).diameter; }

inline std::size_t distance_to_face(const Skeleton& s, std::size_t u,
                                    std::span<const std::size_t> face) {
  if (face.empty()) throw InputError("distance to an empty face");
  auto dist = bfs_distances(s, u);
  std::size_t best = kUnreachable;
  for (auto f : face) {
    if (f >= dist.size()) throw InputError("face index out of range");
    best = std::min(best, dist[f]);
  }
  return best;
}

/// Write-once map from point lists to skeletons, shared across threads.
class SkeletonCache {
 public:
  explicit SkeletonCache(SkeletonOptions opt = {}) : opt_(opt) {}

  std::shared_ptr<const Skeleton> get(const LatticePolytope& p) {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(p.points());
      if (it != map_.end()) return it->second;
    }
    auto built = std::make_shared<const Skeleton>(build_skeleton(p, opt_));
    std::lock_guard lock(mu_);
    return map_.emplace(p.points(), std::move(built)).first->second;
  }

  [[nodiscard]] std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

 private:
  SkeletonOptions opt_;
  mutable std::mutex mu_;
  std::map<std::vector<Point>, std::shared_ptr<const Skeleton>> map_;
};

}  // namespace latdiam
