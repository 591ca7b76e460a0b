#pragma once

// Test-side reference implementations, independent of the LP code.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pt = std::vector<std::int64_t>;

inline std::int64_t cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Strict convex hull of planar points (collinear points dropped), in
/// counter-clockwise order starting from the lexicographic minimum.
inline std::vector<Pt> hull2d(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Edges of conv(pts) for planar pts as pairs of points (first < second).
inline std::set<std::pair<Pt, Pt>> hull_edges2d(const std::vector<Pt>& pts) {
  auto h = hull2d(pts);
  std::set<std::pair<Pt, Pt>> out;
  if (h.size() == 2) {
    out.emplace(std::min(h[0], h[1]), std::max(h[0], h[1]));
  } else if (h.size() > 2) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      out.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return out;
}

inline int hamming(const Pt& a, const Pt& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

/// All-pairs shortest paths on an adjacency list.
inline std::vector<std::vector<std::size_t>> floyd_warshall(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size(), inf = SIZE_MAX / 4;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (auto j : adj[i]) d[i][j] = 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  return d;
}

}  // namespace oracle

namespace oracle {

/// Vertices of the fractional matching polytope of a graph, scaled by 2:
/// x_e in {0,1,2} with the 2-edges a matching, the 1-edges a disjoint union
/// of odd cycles, and no node touched by both.
inline std::vector<Pt> matching_vertices(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::size_t nodes = 0;
  for (auto [a, b] : edges) nodes = std::max(nodes, std::max(a, b) + 1);
  const std::size_t m = edges.size();
  std::vector<Pt> out;
  Pt x(m, 0);
  for (;;) {
    std::vector<int> full(nodes, 0), half(nodes, 0);
    for (std::size_t e = 0; e < m; ++e) {
      auto& deg = x[e] == 2 ? full : half;
      if (x[e] == 0) continue;
      ++deg[edges[e].first];
      ++deg[edges[e].second];
    }
    bool ok = true;
    for (std::size_t v = 0; v < nodes && ok; ++v) {
      ok = full[v] <= 1 && (half[v] == 0 || half[v] == 2) && !(full[v] && half[v]);
    }
    if (ok) {
      // Each half-component is a cycle (all degrees 2); require odd length.
      std::vector<bool> seen(nodes, false);
      for (std::size_t s = 0; s < nodes && ok; ++s) {
        if (half[s] == 0 || seen[s]) continue;
        std::size_t len = 0;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          ++len;
          for (std::size_t e = 0; e < m; ++e) {
            if (x[e] != 1) continue;
            std::size_t w;
            if (edges[e].first == v) {
              w = edges[e].second;
            } else if (edges[e].second == v) {
              w = edges[e].first;
            } else {
              continue;
            }
            if (!seen[w]) {
              seen[w] = true;
              stack.push_back(w);
            }
          }
        }
        ok = len % 2 == 1;
      }
    }
    if (ok) out.push_back(x);
    std::size_t e = 0;
    while (e < m && x[e] == 2) x[e++] = 0;
    if (e == m) break;
    ++x[e];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
