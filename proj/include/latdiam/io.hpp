#pragma once

// File formats: Polytope JSON, Certificate JSON, Skeleton JSON/DOT and
// GeneratorSpec JSON.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "latdiam/bound_path.hpp"
#include "latdiam/errors.hpp"
#include "latdiam/generators.hpp"
#include "latdiam/polytope.hpp"
#include "latdiam/skeleton.hpp"

namespace latdiam {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

namespace detail {

template <class F>
auto field_guard(const std::string& what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace detail

// Polytope JSON: {"ambient_dim": n, "k": k, "points": [[...], ...]} on one
// line followed by a newline. Keys and point order are fixed.

inline Json polytope_to_json(const LatticePolytope& p) {
  Json pts = Json::array();
  for (const auto& q : p.points()) pts.push_back(q);
  return Json{{"ambient_dim", p.ambient_dim()}, {"k", p.grid_bound()}, {"points", std::move(pts)}};
}

inline std::string format_polytope(const LatticePolytope& p) { return polytope_to_json(p).dump() + "\n"; }

/// Accepts integer coordinates, or the half-integral variant whose
/// coordinates are the strings "0", "1/2", "1" (scaled to a (0,2)-polytope).
inline LatticePolytope polytope_from_json(const Json& j) {
  return detail::field_guard("polytope", [&] {
    if (!j.is_object()) throw InputError("polytope: expected a JSON object");
    const auto n = j.at("ambient_dim").get<std::int64_t>();
    if (n < 0) throw InputError("polytope: ambient_dim must be nonnegative");
    const auto& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw InputError("polytope: points must be a nonempty array");
    bool half = false;
    for (const auto& p : pts) {
      if (!p.is_array()) throw InputError("polytope: each point must be an array");
      for (const auto& x : p) half |= x.is_string();
    }
    if (half) {
      std::vector<RationalVector> rows;
      for (const auto& p : pts) {
        RationalVector row;
        for (const auto& x : p) {
          row.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<std::int64_t>()));
        }
        if (static_cast<std::int64_t>(row.size()) != n) throw InputError("polytope: point has wrong dimension");
        rows.push_back(std::move(row));
      }
      return scale_to_0k(rows);
    }
    const auto k = j.at("k").get<std::int64_t>();
    std::vector<Point> points;
    for (const auto& p : pts) {
      Point q;
      for (const auto& x : p) {
        if (!x.is_number_integer()) throw InputError("polytope: coordinates must be integers");
        q.push_back(x.get<Coord>());
      }
      points.push_back(std::move(q));
    }
    return LatticePolytope(static_cast<std::size_t>(n), k, std::move(points));
  });
}

inline LatticePolytope read_polytope(const std::string& path) {
  return polytope_from_json(parse_json(read_file(path), path));
}

// Certificate JSON: {"d", "k", "bound", "length", "path", "trace"}.

inline Json certificate_to_json(const VertexPath& path, const BoundCertificate& c) {
  Json trace = Json::array();
  for (auto t : c.case_trace) trace.push_back(to_string(t));
  return Json{{"d", c.d},           {"k", c.k},
              {"bound", c.bound_value}, {"length", c.path_length},
              {"path", path.vertices},  {"trace", std::move(trace)}};
}

struct CertificateFile {
  std::vector<std::size_t> path;
  BoundCertificate certificate;
};

inline CertificateFile certificate_from_json(const Json& j) {
  return detail::field_guard("certificate", [&] {
    CertificateFile out;
    auto& c = out.certificate;
    c.d = j.at("d").get<std::size_t>();
    c.k = j.at("k").get<Coord>();
    c.bound_value = j.at("bound").get<std::int64_t>();
    c.path_length = j.at("length").get<std::size_t>();
    out.path = j.at("path").get<std::vector<std::size_t>>();
    for (const auto& t : j.at("trace")) {
      auto pc = parse_proof_case(t.get<std::string>());
      if (!pc) throw InputError("certificate: unknown trace label '" + t.get<std::string>() + "'");
      c.case_trace.push_back(*pc);
    }
    if (!out.path.empty()) {
      c.source = out.path.front();
      c.target = out.path.back();
    }
    return out;
  });
}

// Skeleton exports.

inline Json skeleton_to_json(const LatticePolytope& p, const Skeleton& s) {
  Json pts = Json::array();
  for (const auto& q : p.points()) pts.push_back(q);
  return Json{{"vertex_count", s.vertex_count()},
              {"edge_count", s.edge_count()},
              {"points", std::move(pts)},
              {"adjacency", s.adjacency()}};
}

inline std::string skeleton_to_dot(const LatticePolytope& p, const Skeleton& s) {
  std::ostringstream os;
  os << "graph skeleton {\n";
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    os << "  " << i << " [label=\"" << format_point(p.point(i)) << "\"];\n";
  }
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    for (auto j : s.neighbors(i)) {
      if (i < j) os << "  " << i << " -- " << j << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

// GeneratorSpec JSON: {"family": ..., plus family parameters, "seed"}.

inline GeneratorSpec generator_spec_from_json(const Json& j) {
  return detail::field_guard("generator spec", [&] {
    if (!j.is_object()) throw InputError("generator spec: expected a JSON object");
    GeneratorSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.seed = j.value("seed", std::uint64_t{0});
    switch (s.family) {
      case Family::Hypercube:
        s.d = j.at("d").get<std::int64_t>();
        s.k = j.value("k", std::int64_t{1});
        break;
      case Family::HexagonPower:
        s.d = j.at("d").get<std::int64_t>();
        s.k = 2;
        break;
      case Family::Octagon3:
        s.k = 3;
        break;
      case Family::RandomHull:
        s.n = j.at("n").get<std::int64_t>();
        s.k = j.at("k").get<std::int64_t>();
        s.budget = j.at("budget").get<std::int64_t>();
        break;
      case Family::FractionalMatching:
        for (const auto& e : j.at("edges")) {
          auto pair = e.get<std::vector<std::size_t>>();
          if (pair.size() != 2) throw InputError("generator spec: edges are pairs of node ids");
          s.edges.emplace_back(pair[0], pair[1]);
        }
        s.k = 2;
        break;
    }
    return s;
  });
}

inline Json generator_spec_to_json(const GeneratorSpec& s) {
  Json j{{"family", to_string(s.family)}};
  switch (s.family) {
    case Family::Hypercube:
      j["d"] = s.d;
      j["k"] = s.k;
      break;
    case Family::HexagonPower: j["d"] = s.d; break;
    case Family::Octagon3: break;
    case Family::RandomHull:
      j["n"] = s.n;
      j["k"] = s.k;
      j["budget"] = s.budget;
      break;
    case Family::FractionalMatching: {
      Json edges = Json::array();
      for (auto [a, b] : s.edges) edges.push_back({a, b});
      j["edges"] = std::move(edges);
      break;
    }
  }
  j["seed"] = s.seed;
  return j;
}

}  // namespace latdiam
