#pragma once

// Constructive diameter bound for (0,k)-polytopes.
//
// construct_path builds a vertex walk between two vertices whose length is at
// most floor((k - 1/2) d) for k >= 2 (d for k = 1). The recursion works on
// "frames": a working copy of a face of the input, with coordinates possibly
// flipped or projected, that remembers which input vertex each of its points
// came from. Adjacency inside a frame is the input skeleton restricted to
// the frame's vertices.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/polytope.hpp"
#include "latdiam/skeleton.hpp"

namespace latdiam {

struct VertexPath {
  std::uint64_t polytope = 0;  // LatticePolytope::fingerprint
  std::vector<std::size_t> vertices;

  [[nodiscard]] std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

enum class ProofCase { Base, Claim1, Claim2, Claim3, Claim4, EdgeCase, WalkCase };

inline const char* to_string(ProofCase c) {
  switch (c) {
    case ProofCase::Base: return "base";
    case ProofCase::Claim1: return "claim1";
    case ProofCase::Claim2: return "claim2";
    case ProofCase::Claim3: return "claim3";
    case ProofCase::Claim4: return "claim4";
    case ProofCase::EdgeCase: return "edge-case";
    case ProofCase::WalkCase: return "walk-case";
  }
  return "?";
}

inline std::optional<ProofCase> parse_proof_case(std::string_view s) {
  for (auto c : {ProofCase::Base, ProofCase::Claim1, ProofCase::Claim2, ProofCase::Claim3,
                 ProofCase::Claim4, ProofCase::EdgeCase, ProofCase::WalkCase}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

struct BoundCertificate {
  std::size_t d = 0;
  Coord k = 0;
  std::int64_t bound_value = 0;
  std::size_t path_length = 0;
  std::vector<ProofCase> case_trace;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// floor((2k - 1) d / 2) for k >= 2, d for k = 1, 0 when k = 0 or d = 0.
inline std::int64_t diameter_bound(std::int64_t d, std::int64_t k) {
  if (d < 0 || k < 0) throw InputError("diameter_bound needs d >= 0 and k >= 0");
  if (d == 0 || k == 0) return 0;
  if (k == 1) return d;
  return (2 * k - 1) * d / 2;
}

/// The coarser bound k d.
inline std::int64_t ko_bound(std::int64_t d, std::int64_t k) { return k * d; }

struct MinFace {
  Coord gamma = 0;
  std::vector<std::size_t> face;
};

inline MinFace min_face(const LatticePolytope& p, std::span<const Coord> c) {
  if (c.size() != p.ambient_dim()) throw InputError("objective has wrong dimension");
  if (p.empty()) throw InputError("min_face of an empty polytope");
  MinFace out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Coord v = dot(c, p.point(i));
    if (out.face.empty() || v < out.gamma) {
      out.gamma = v;
      out.face.assign(1, i);
    } else if (v == out.gamma) {
      out.face.push_back(i);
    }
  }
  return out;
}

struct Walk {
  VertexPath path;
  std::size_t landing = 0;
};

struct FaceRoute {
  VertexPath walk_u;
  VertexPath walk_v;
  std::vector<std::size_t> face;
  Coord gamma = 0;
};

struct FullDimOptions {
  // Recompute the skeleton of every candidate projection and compare it with
  // the source skeleton.
  bool verify_skeleton = true;
};

struct FullDimResult {
  LatticePolytope polytope;
  std::vector<VertexMap> chain;
  std::vector<std::size_t> origin;  // result index -> source index
};

namespace detail {

inline std::string dump_points(const LatticePolytope& p) {
  std::ostringstream os;
  os << "n=" << p.ambient_dim() << " k=" << p.grid_bound() << " points:";
  for (std::size_t i = 0; i < p.size(); ++i) os << " " << i << ":" << format_point(p.point(i));
  return os.str();
}

// A working copy of a face of the root polytope.
class Frame {
 public:
  Frame(LatticePolytope poly, std::vector<std::size_t> origin, const Skeleton& root)
      : poly_(std::move(poly)), origin_(std::move(origin)), root_(&root),
        local_(root.vertex_count(), SIZE_MAX) {
    for (std::size_t i = 0; i < origin_.size(); ++i) local_[origin_[i]] = i;
  }

  static Frame identity(const LatticePolytope& p, const Skeleton& s) {
    std::vector<std::size_t> id(p.size());
    std::iota(id.begin(), id.end(), 0);
    return Frame(p, std::move(id), s);
  }

  [[nodiscard]] const LatticePolytope& poly() const { return poly_; }
  [[nodiscard]] const Point& point(std::size_t i) const { return poly_.point(i); }
  [[nodiscard]] std::size_t root_id(std::size_t i) const { return origin_[i]; }
  [[nodiscard]] std::size_t local(std::size_t root_id) const { return local_.at(root_id); }

  [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const {
    return root_->adjacent(origin_[i], origin_[j]);
  }

  [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (auto r : root_->neighbors(origin_[i])) {
      if (local_[r] != SIZE_MAX) out.push_back(local_[r]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  [[nodiscard]] Frame after(const LatticePolytope& q, std::span<const std::size_t> forward) const {
    std::vector<std::size_t> origin(forward.size());
    for (std::size_t i = 0; i < forward.size(); ++i) origin[i] = origin_[forward[i]];
    return Frame(q, std::move(origin), *root_);
  }

  [[nodiscard]] Frame flipped(std::size_t coord) const {
    auto [q, map] = flip_coordinate(poly_, coord);
    return after(q, map.forward);
  }

  [[nodiscard]] Frame restricted(std::vector<std::size_t> indices) const {
    auto [q, map] = restrict_to(poly_, std::move(indices));
    return after(q, map.forward);
  }

  [[nodiscard]] std::vector<std::size_t> to_root(std::span<const std::size_t> local_path) const {
    std::vector<std::size_t> out;
    out.reserve(local_path.size());
    for (auto i : local_path) out.push_back(origin_[i]);
    return out;
  }

 private:
  LatticePolytope poly_;
  std::vector<std::size_t> origin_;
  const Skeleton* root_;
  std::vector<std::size_t> local_;
};

struct LocalWalk {
  std::vector<std::size_t> path;  // local indices, starts at the start vertex
  std::size_t landing = 0;
  Coord gamma = 0;
};

// Strictly improving walk toward the c-minimal face. Among improving
// neighbors the one with the smallest c-value wins, then the lexicographically
// smallest point (= smallest index, points are sorted).
inline LocalWalk walk_within(const Frame& f, std::size_t start, std::span<const Coord> c) {
  auto mf = min_face(f.poly(), c);
  LocalWalk out{{start}, start, mf.gamma};
  std::size_t cur = start;
  Coord value = dot(c, f.point(cur));
  while (value > mf.gamma) {
    std::optional<std::size_t> best;
    Coord best_value = value;
    for (auto w : f.neighbors(cur)) {
      Coord wv = dot(c, f.point(w));
      if (wv < best_value) {
        best = w;
        best_value = wv;
      }
    }
    if (!best) {
      throw InternalError("vertex " + format_point(f.point(cur)) +
                              " has no improving neighbor although it is not c-minimal",
                          dump_points(f.poly()));
    }
    cur = *best;
    value = best_value;
    out.path.push_back(cur);
  }
  out.landing = cur;
  return out;
}

struct LocalRoute {
  LocalWalk from_u;
  LocalWalk from_v;
  std::vector<std::size_t> face;
  Coord gamma = 0;
};

inline LocalRoute route_within(const Frame& f, std::size_t u, std::size_t v,
                               std::span<const Coord> c) {
  LocalRoute r{walk_within(f, u, c), walk_within(f, v, c), {}, 0};
  auto mf = min_face(f.poly(), c);
  r.face = std::move(mf.face);
  r.gamma = mf.gamma;
  return r;
}

inline Point unit(std::size_t n, std::size_t i, Coord sign = 1) {
  Point e(n, 0);
  e[i] = sign;
  return e;
}

// a + b + ... where consecutive pieces share their joining vertex.
inline void append(std::vector<std::size_t>& path, std::span<const std::size_t> piece) {
  if (piece.empty()) return;
  std::size_t skip = (!path.empty() && path.back() == piece.front()) ? 1 : 0;
  path.insert(path.end(), piece.begin() + static_cast<std::ptrdiff_t>(skip), piece.end());
}

inline std::vector<std::size_t> reversed(std::vector<std::size_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace detail

inline Walk monotone_walk(const LatticePolytope& p, const Skeleton& s, std::size_t u,
                          std::span<const Coord> c) {
  if (u >= p.size()) throw InputError("vertex index out of range");
  if (c.size() != p.ambient_dim()) throw InputError("objective has wrong dimension");
  auto frame = detail::Frame::identity(p, s);
  auto w = detail::walk_within(frame, u, c);
  return {VertexPath{p.fingerprint(), std::move(w.path)}, w.landing};
}

inline FaceRoute face_route(const LatticePolytope& p, const Skeleton& s, std::size_t u,
                            std::size_t v, std::span<const Coord> c) {
  if (u >= p.size() || v >= p.size()) throw InputError("vertex index out of range");
  if (c.size() != p.ambient_dim()) throw InputError("objective has wrong dimension");
  auto frame = detail::Frame::identity(p, s);
  auto r = detail::route_within(frame, u, v, c);
  return {VertexPath{p.fingerprint(), std::move(r.from_u.path)},
          VertexPath{p.fingerprint(), std::move(r.from_v.path)}, std::move(r.face), r.gamma};
}

/// Drops coordinates one at a time until the ambient dimension equals the
/// affine rank. A coordinate is accepted when the drop is injective on the
/// vertices, keeps the rank, and (optionally) reproduces the source skeleton.
inline FullDimResult full_dimensionalize(const LatticePolytope& p, const FullDimOptions& opt = {}) {
  if (!p.vertices_confirmed()) throw InputError("full_dimensionalize needs confirmed vertices");
  if (p.empty()) throw InputError("full_dimensionalize of an empty polytope");
  const std::size_t d = affine_rank(p);
  if (d < 1) throw InputError("full_dimensionalize needs affine rank >= 1");

  FullDimResult out{p, {}, {}};
  out.origin.resize(p.size());
  std::iota(out.origin.begin(), out.origin.end(), 0);
  std::optional<Skeleton> reference;
  if (opt.verify_skeleton && p.ambient_dim() > d) reference = build_skeleton(p);

  while (out.polytope.ambient_dim() > d) {
    bool found = false;
    for (std::size_t i = 0; i < out.polytope.ambient_dim() && !found; ++i) {
      auto [q, map] = drop_coordinate(out.polytope, i);
      if (!map.bijective || affine_rank(q) != d) continue;
      std::vector<std::size_t> origin(q.size());
      for (std::size_t x = 0; x < q.size(); ++x) origin[x] = out.origin[map.forward[x]];
      if (reference) {
        auto sq = build_skeleton(q);
        bool same = true;
        for (std::size_t x = 0; x < q.size() && same; ++x) {
          for (std::size_t y = x + 1; y < q.size() && same; ++y) {
            same = sq.adjacent(x, y) == reference->adjacent(origin[x], origin[y]);
          }
        }
        if (!same) continue;
      }
      out.polytope = std::move(q);
      out.origin = std::move(origin);
      out.chain.push_back(std::move(map));
      found = true;
    }
    if (!found) {
      throw InternalError("no coordinate can be dropped while preserving the skeleton",
                          detail::dump_points(out.polytope));
    }
  }
  return out;
}

struct PathOptions {
  // Recompute skeletons when the recursion projects a face to full
  // dimension.
  bool verify_projections = false;
};

struct PathResult {
  VertexPath path;
  BoundCertificate certificate;
};

namespace detail {

class PathBuilder {
 public:
  PathBuilder(const PathOptions& opt, std::vector<ProofCase>& trace) : opt_(opt), trace_(trace) {}

  // Returns a walk of root vertex ids from a to b (local indices of f).
  std::vector<std::size_t> route(const Frame& f0, std::size_t a, std::size_t b) {
    if (a == b) return {f0.root_id(a)};
    const std::size_t d = affine_rank(f0.poly());
    const Coord k = f0.poly().grid_bound();
    if (d <= 1) {
      if (!f0.adjacent(a, b)) fail("the two vertices of a segment are not adjacent", f0, a, b);
      trace_.push_back(ProofCase::Base);
      return {f0.root_id(a), f0.root_id(b)};
    }

    std::size_t ra = f0.root_id(a), rb = f0.root_id(b);
    Frame f = f0;
    if (f.poly().ambient_dim() > d) {
      auto fd = full_dimensionalize(f.poly(), FullDimOptions{opt_.verify_projections});
      f = f.after(fd.polytope, fd.origin);
      trace_.push_back(ProofCase::Claim1);
    }

    auto path = dispatch(f, ra, rb, k);
    if (static_cast<std::int64_t>(path.size() - 1) > diameter_bound(static_cast<std::int64_t>(d), k)) {
      fail("constructed walk of length " + std::to_string(path.size() - 1) + " exceeds bound " +
               std::to_string(diameter_bound(static_cast<std::int64_t>(d), k)),
           f, f.local(ra), f.local(rb));
    }
    return path;
  }

 private:
  std::vector<std::size_t> dispatch(Frame f, std::size_t ra, std::size_t rb, Coord k) {
    const std::size_t n = f.poly().ambient_dim();

    // The polytope misses a facet of [0,k]^d: some coordinate spans at most
    // k - 1. Route into the nearer extreme face along that coordinate.
    for (std::size_t i = 0; i < n; ++i) {
      auto [lo, hi] = coordinate_range(f, i);
      if (hi - lo > k - 1) continue;
      trace_.push_back(ProofCase::Claim2);
      if (f.point(f.local(ra))[i] + f.point(f.local(rb))[i] > lo + hi) f = f.flipped(i);
      return descend(f, ra, rb, unit(n, i), hi - lo);
    }

    // u + v != k^d: some coordinate sums to at most k - 1 after a flip.
    for (std::size_t i = 0; i < n; ++i) {
      Coord sum = f.point(f.local(ra))[i] + f.point(f.local(rb))[i];
      if (sum == k) continue;
      trace_.push_back(ProofCase::Claim3);
      if (sum > k) f = f.flipped(i);
      return descend(f, ra, rb, unit(n, i), k - 1);
    }

    // u has an intermediate coordinate.
    for (std::size_t i = 0; i < n; ++i) {
      Coord ui = f.point(f.local(ra))[i];
      if (ui <= 0 || ui >= k) continue;
      trace_.push_back(ProofCase::Claim4);
      return intermediate(f, ra, rb, i, k);
    }

    return terminal(f, ra, rb, k);
  }

  static std::pair<Coord, Coord> coordinate_range(const Frame& f, std::size_t i) {
    Coord lo = f.point(0)[i], hi = lo;
    for (const auto& p : f.poly().points()) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    return {lo, hi};
  }

  // Walk both endpoints into the c-minimal face (combined length at most
  // `budget`) and recurse inside it.
  std::vector<std::size_t> descend(const Frame& f, std::size_t ra, std::size_t rb,
                                   const Point& c, Coord budget) {
    auto r = route_within(f, f.local(ra), f.local(rb), c);
    check_walks(f, r, c, budget);
    Frame face = f.restricted(r.face);
    std::vector<std::size_t> path = f.to_root(r.from_u.path);
    append(path, route(face, face.local(f.root_id(r.from_u.landing)),
                       face.local(f.root_id(r.from_v.landing))));
    append(path, reversed(f.to_root(r.from_v.path)));
    return path;
  }

  std::vector<std::size_t> intermediate(Frame f, std::size_t ra, std::size_t rb, std::size_t i,
                                        Coord k) {
    const std::size_t n = f.poly().ambient_dim();
    const std::size_t a = f.local(ra);
    const Point& pa = f.point(a);

    // A neighbor moving both coordinate i and some other coordinate j.
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (auto w : f.neighbors(a)) {
      const Point& pw = f.point(w);
      if (pw[i] == pa[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && pw[j] != pa[j]) {
          pick = {w, j};
          break;
        }
      }
      if (pick) break;
    }
    if (!pick) fail("no neighbor changes the intermediate coordinate and another one", f, a, f.local(rb));
    auto [w, j] = *pick;
    const std::size_t rw = f.root_id(w);
    if (f.point(w)[i] > pa[i]) f = f.flipped(i);
    if (f.point(f.local(rw))[j] > f.point(f.local(ra))[j]) f = f.flipped(j);

    Point c(n, 0);
    c[i] = 1;
    c[j] = 1;
    auto first = route_within(f, f.local(rw), f.local(rb), c);
    check_walks(f, first, c, 2 * k - 2 - 2 * first.gamma);

    // Walk both endpoints to the nearer x_i-extreme face of F.
    Frame face = f.restricted(first.face);
    const std::size_t wl = face.local(f.root_id(first.from_u.landing));
    const std::size_t bl = face.local(f.root_id(first.from_v.landing));
    auto [lo, hi] = coordinate_range(face, i);
    if (hi > first.gamma) fail("x_i exceeds gamma on the face x_i + x_j = gamma", face, wl, bl);
    Coord sign = face.point(wl)[i] + face.point(bl)[i] <= lo + hi ? 1 : -1;
    Point ci = unit(n, i, sign);
    auto second = route_within(face, wl, bl, ci);
    check_walks(face, second, ci, hi - lo);
    Frame sub = face.restricted(second.face);

    std::vector<std::size_t> path{ra};
    append(path, f.to_root(first.from_u.path));
    append(path, face.to_root(second.from_u.path));
    append(path, route(sub, sub.local(face.root_id(second.from_u.landing)),
                       sub.local(face.root_id(second.from_v.landing))));
    append(path, reversed(face.to_root(second.from_v.path)));
    append(path, reversed(f.to_root(first.from_v.path)));
    return path;
  }

  // u in {0,k}^d and v = k^d - u.
  std::vector<std::size_t> terminal(Frame f, std::size_t ra, std::size_t rb, Coord k) {
    const std::size_t n = f.poly().ambient_dim();
    if (f.point(f.local(ra))[0] == 0) f = f.flipped(0);
    std::vector<std::size_t> facet;
    for (std::size_t x = 0; x < f.poly().size(); ++x) {
      if (f.point(x)[0] == 0) facet.push_back(x);
    }

    Point across = f.point(f.local(ra));
    across[0] = 0;
    if (auto hit = f.poly().index_of(across)) {
      // u' is adjacent to u.
      trace_.push_back(ProofCase::EdgeCase);
      if (!f.adjacent(f.local(ra), *hit)) fail("hypercube edge of P is not a skeleton edge", f, f.local(ra), *hit);
      Frame face = f.restricted(facet);
      std::vector<std::size_t> path{ra};
      append(path, route(face, face.local(f.root_id(*hit)), face.local(rb)));
      return path;
    }

    trace_.push_back(ProofCase::WalkCase);
    auto down = walk_within(f, f.local(ra), unit(n, 0));
    if (static_cast<Coord>(down.path.size() - 1) > k) fail("walk onto x_1 = 0 is longer than k", f, f.local(ra), f.local(rb));
    Frame face = f.restricted(facet);
    const std::size_t rl = f.root_id(down.landing);

    std::optional<std::size_t> pick;
    for (std::size_t i = 1; i < n && !pick; ++i) {
      if (face.point(face.local(rl))[i] + face.point(face.local(rb))[i] != k) pick = i;
    }
    if (!pick) fail("landing vertex is antipodal to v on every coordinate", face, face.local(rl), face.local(rb));
    const std::size_t i = *pick;
    if (face.point(face.local(rl))[i] + face.point(face.local(rb))[i] > k) face = face.flipped(i);

    auto ci = unit(n, i);
    auto second = route_within(face, face.local(rl), face.local(rb), ci);
    check_walks(face, second, ci, k - 1);
    Frame sub = face.restricted(second.face);

    std::vector<std::size_t> path = f.to_root(down.path);
    append(path, face.to_root(second.from_u.path));
    append(path, route(sub, sub.local(face.root_id(second.from_u.landing)),
                       sub.local(face.root_id(second.from_v.landing))));
    append(path, reversed(face.to_root(second.from_v.path)));
    return path;
  }

  // Walk lengths must fit c.x - gamma and the budget.
  void check_walks(const Frame& f, const LocalRoute& r, const Point& c, Coord budget) const {
    const std::size_t u = r.from_u.path.front(), v = r.from_v.path.front();
    Coord lu = static_cast<Coord>(r.from_u.path.size() - 1);
    Coord lv = static_cast<Coord>(r.from_v.path.size() - 1);
    if (lu > dot(c, f.point(u)) - r.gamma || lv > dot(c, f.point(v)) - r.gamma || lu + lv > budget) {
      fail("face walks of lengths " + std::to_string(lu) + "+" + std::to_string(lv) +
               " exceed budget " + std::to_string(budget),
           f, u, v);
    }
  }

  [[noreturn]] void fail(const std::string& what, const Frame& f, std::size_t a, std::size_t b) const {
    std::ostringstream os;
    os << dump_points(f.poly()) << "\nu=" << format_point(f.point(a)) << " v=" << format_point(f.point(b))
       << "\ntrace:";
    for (auto c : trace_) os << " " << to_string(c);
    throw InternalError(what, os.str());
  }

  const PathOptions& opt_;
  std::vector<ProofCase>& trace_;
};

}  // namespace detail

inline PathResult construct_path(const LatticePolytope& p, const Skeleton& s, std::size_t u,
                                 std::size_t v, const PathOptions& opt = {}) {
  if (!p.vertices_confirmed()) throw InputError("construct_path needs confirmed vertices");
  if (p.grid_bound() < 1) throw InputError("construct_path needs k >= 1");
  if (u >= p.size() || v >= p.size()) throw InputError("vertex index out of range");
  if (u == v) throw InputError("construct_path needs two distinct vertices");
  if (s.fingerprint() != p.fingerprint() || s.vertex_count() != p.size()) {
    throw InputError("skeleton does not belong to this polytope");
  }

  PathResult out;
  auto& cert = out.certificate;
  cert.d = affine_rank(p);
  cert.k = p.grid_bound();
  cert.bound_value = diameter_bound(static_cast<std::int64_t>(cert.d), cert.k);
  cert.source = u;
  cert.target = v;

  detail::PathBuilder builder(opt, cert.case_trace);
  out.path = VertexPath{p.fingerprint(), builder.route(detail::Frame::identity(p, s), u, v)};
  cert.path_length = out.path.length();
  return out;
}

inline PathResult construct_path(const LatticePolytope& p, std::size_t u, std::size_t v,
                                 const PathOptions& opt = {}) {
  return construct_path(p, build_skeleton(p), u, v, opt);
}

/// Checks adjacency of consecutive vertices, endpoints, recorded length and
/// the bound itself.
inline bool verify_certificate(const VertexPath& path, const BoundCertificate& cert, const Skeleton& s) {
  if (path.polytope != s.fingerprint()) throw InputError("path and skeleton refer to different polytopes");
  const auto& vs = path.vertices;
  if (vs.empty()) return false;
  for (auto x : vs) {
    if (x >= s.vertex_count()) return false;
  }
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (!s.adjacent(vs[i], vs[i + 1])) return false;
  }
  if (vs.front() != cert.source || vs.back() != cert.target) return false;
  if (path.length() != cert.path_length) return false;
  if (cert.bound_value != diameter_bound(static_cast<std::int64_t>(cert.d), cert.k)) return false;
  return static_cast<std::int64_t>(path.length()) <= cert.bound_value;
}

}  // namespace latdiam
