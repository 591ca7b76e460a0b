#pragma once

// `latdiam` subcommands. Exit codes: 0 clean, 2 input error, 3 internal
// invariant violation.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latdiam/bound_path.hpp"
#include "latdiam/errors.hpp"
#include "latdiam/generators.hpp"
#include "latdiam/harness.hpp"
#include "latdiam/io.hpp"
#include "latdiam/skeleton.hpp"

namespace latdiam {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

namespace detail {

inline void emit(const std::optional<std::string>& out_path, const std::string& text, std::ostream& out) {
  if (out_path) {
    write_file(*out_path, text);
  } else {
    out << text;
  }
}

inline LatticePolytope load_vertices(const std::string& path) {
  return canonicalize_vertices(read_polytope(path));
}

struct CliState {
  std::string input;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::string format;
  unsigned jobs = 1;
  std::size_t u = 0, v = 0;
};

inline int cmd_gen(const CliState& st, std::ostream& out) {
  auto spec = generator_spec_from_json(parse_json(read_file(st.input), st.input));
  if (st.seed) spec.seed = *st.seed;
  emit(st.out_path, format_polytope(generate(spec)), out);
  return kExitOk;
}

inline int cmd_skeleton(const CliState& st, std::ostream& out) {
  auto p = load_vertices(st.input);
  auto s = build_skeleton(p, SkeletonOptions{EdgeTest::Certificate, true, st.jobs});
  if (st.format == "dot") {
    emit(st.out_path, skeleton_to_dot(p, s), out);
  } else if (st.format == "json" || st.format.empty()) {
    emit(st.out_path, skeleton_to_json(p, s).dump() + "\n", out);
  } else {
    throw InputError("skeleton supports --format json|dot");
  }
  return kExitOk;
}

inline int cmd_diameter(const CliState& st, std::ostream& out) {
  auto p = load_vertices(st.input);
  auto s = build_skeleton(p, SkeletonOptions{EdgeTest::Certificate, true, st.jobs});
  const auto d = static_cast<std::int64_t>(affine_rank(p));
  const auto diam = static_cast<std::int64_t>(diameter(s));
  const auto bound = diameter_bound(d, p.grid_bound());
  const auto ko = ko_bound(d, p.grid_bound());
  const auto slack = bound - diam;
  std::string text;
  if (st.format == "json") {
    Json j{{"d", d},         {"k", p.grid_bound()}, {"vertices", p.size()}, {"diameter", diam},
           {"bound", bound}, {"ko_bound", ko},      {"slack", slack},       {"tight", slack == 0}};
    text = j.dump() + "\n";
  } else if (st.format == "csv") {
    text = "d,k,vertices,diameter,bound,ko_bound,slack,tight\n" + std::to_string(d) + "," +
           std::to_string(p.grid_bound()) + "," + std::to_string(p.size()) + "," + std::to_string(diam) + "," +
           std::to_string(bound) + "," + std::to_string(ko) + "," + std::to_string(slack) + "," +
           (slack == 0 ? "1" : "0") + "\n";
  } else if (st.format.empty() || st.format == "text") {
    text = "d=" + std::to_string(d) + " k=" + std::to_string(p.grid_bound()) + " vertices=" +
           std::to_string(p.size()) + " diameter=" + std::to_string(diam) + " bound=" + std::to_string(bound) +
           " ko_bound=" + std::to_string(ko) + (slack == 0 ? " tight" : " slack=" + std::to_string(slack)) + "\n";
  } else {
    throw InputError("diameter supports --format text|json|csv");
  }
  emit(st.out_path, text, out);
  if (slack < 0) return kExitInternal;
  return kExitOk;
}

inline int cmd_path(const CliState& st, std::ostream& out, std::ostream& err) {
  auto p = load_vertices(st.input);
  if (st.u >= p.size() || st.v >= p.size()) {
    throw InputError("vertex index out of range (polytope has " + std::to_string(p.size()) + " vertices)");
  }
  if (st.u == st.v) throw InputError("path needs two distinct vertices");
  auto s = build_skeleton(p, SkeletonOptions{EdgeTest::Certificate, true, st.jobs});
  auto res = construct_path(p, s, st.u, st.v);
  emit(st.out_path, certificate_to_json(res.path, res.certificate).dump() + "\n", out);
  if (!verify_certificate(res.path, res.certificate, s)) {
    err << "certificate failed verification\n";
    return kExitInternal;
  }
  return kExitOk;
}

inline int cmd_verify(const CliState& st, std::ostream& out, std::ostream& err) {
  SuiteSpec suite = st.input.empty() ? default_suite() : suite_from_json(parse_json(read_file(st.input), st.input));
  if (st.seed) suite.seed = *st.seed;
  auto report = run_suite(suite, st.jobs);
  const auto json = report_to_json(report).dump(2) + "\n";
  const auto csv = report_to_csv(report);
  if (st.out_path) {
    write_file(*st.out_path + ".json", json);
    write_file(*st.out_path + ".csv", csv);
  }
  out << (st.format == "csv" ? csv : json);
  if (!report.violations.empty()) {
    const std::string repro = (st.out_path ? *st.out_path : std::string("latdiam")) + ".repro.json";
    write_file(repro, violations_to_json(report).dump(2) + "\n");
    err << report.violations.size() << " violation(s); reproducer written to " << repro << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace detail

/// Runs the CLI on `args` (args[0] is the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Exact 1-skeletons, diameters and certified paths for lattice polytopes", "latdiam"};
  app.require_subcommand(1);
  detail::CliState st;

  auto* gen = app.add_subcommand("gen", "Generate a polytope from a GeneratorSpec JSON file");
  gen->add_option("spec", st.input, "GeneratorSpec JSON")->required();
  gen->add_option("--seed", st.seed, "Override the spec seed");
  gen->add_option("--out", st.out_path, "Output file (default stdout)");

  auto* skel = app.add_subcommand("skeleton", "Export the 1-skeleton");
  skel->add_option("polytope", st.input, "Polytope JSON")->required();
  skel->add_option("--format", st.format, "json|dot");
  skel->add_option("--out", st.out_path, "Output file (default stdout)");
  skel->add_option("--jobs", st.jobs, "Worker threads for edge tests");

  auto* diam = app.add_subcommand("diameter", "Exact diameter and bounds");
  diam->add_option("polytope", st.input, "Polytope JSON")->required();
  diam->add_option("--format", st.format, "text|json|csv");
  diam->add_option("--out", st.out_path, "Output file (default stdout)");
  diam->add_option("--jobs", st.jobs, "Worker threads for edge tests");

  auto* path = app.add_subcommand("path", "Certified path between two vertices");
  path->add_option("polytope", st.input, "Polytope JSON")->required();
  path->add_option("u", st.u, "Source vertex index")->required();
  path->add_option("v", st.v, "Target vertex index")->required();
  path->add_option("--out", st.out_path, "Certificate file (default stdout)");
  path->add_option("--jobs", st.jobs, "Worker threads for edge tests");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", st.input, "Suite JSON (default: hexagon powers d=1..5)");
  verify->add_option("--seed", st.seed, "Override the suite seed");
  verify->add_option("--out", st.out_path, "Write <out>.json and <out>.csv");
  verify->add_option("--format", st.format, "json|csv for stdout");
  verify->add_option("--jobs", st.jobs, "Parallel instances");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*gen) return detail::cmd_gen(st, out);
    if (*skel) return detail::cmd_skeleton(st, out);
    if (*diam) return detail::cmd_diameter(st, out);
    if (*path) return detail::cmd_path(st, out, err);
    if (*verify) return detail::cmd_verify(st, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n" << e.dump() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace latdiam
