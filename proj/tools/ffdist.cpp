// Command-line front end: field inspection, counting, distance sets,
// the verification battery and seeded sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 I/O or format error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/experiments.hpp"
#include "ffdist/group_tables.hpp"
#include "ffdist/parallel.hpp"
#include "ffdist/verify.hpp"

using namespace ffdist;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct FieldArgs {
  std::optional<std::uint64_t> p;
  unsigned n = 1;
  std::optional<std::uint64_t> q;
  std::string modulus;

  void attach(CLI::App* cmd) {
    auto* p_opt = cmd->add_option("--p", p, "characteristic (odd prime)");
    auto* n_opt = cmd->add_option("--n", n, "extension degree")->needs(p_opt);
    auto* q_opt = cmd->add_option("--q", q, "field order p^n")->excludes(p_opt)->excludes(n_opt);
    cmd->add_option("--modulus", modulus, "monic modulus, low-to-high coefficients, e.g. 1,0,2,1")->needs(p_opt);
    (void)q_opt;
  }

  FieldPtr make() const {
    if (q) {
      const auto shape = odd_prime_power(*q);
      if (!shape) throw Error(ErrorKind::InvalidArgument, std::to_string(*q) + " is not an odd prime power");
      return Field::make(shape->first, shape->second);
    }
    if (!p) throw Error(ErrorKind::InvalidArgument, "select a field with --p [--n] or --q");
    if (modulus.empty()) return Field::make(*p, n);
    std::vector<Code> coeffs;
    std::stringstream in(modulus);
    for (std::string item; std::getline(in, item, ',');) {
      try {
        coeffs.push_back(static_cast<Code>(std::stoul(item)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad modulus coefficient '" + item + "'");
      }
    }
    return Field::make(*p, n, coeffs);
  }
};

json count_value(const u128& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

PointSet load_points(const std::string& path, const PlanePtr& plane) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open point file '" + path + "'");
  return read_points(in, plane);
}

ConfigGraph load_graph(const std::string& name, const std::string& file) {
  if (file.empty()) return ConfigGraph::builtin(name);
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open graph file '" + file + "'");
  return read_graph(in, name.empty() ? "custom" : name);
}

std::vector<Code> parse_codes(const std::string& text) {
  std::vector<Code> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::InvalidArgument, "bad value '" + item + "'");
    out.push_back(static_cast<Code>(v));
  }
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Io: return kExitIo;
    default: return kExitUsage;
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int run_field(const FieldArgs& args) {
  const FieldPtr field = args.make();
  json out{{"schema", "ffdist.field/1"},
           {"p", field->p()},
           {"n", field->n()},
           {"q", field->q()},
           {"modulus", field->modulus()},
           {"hypothesis", field->hypothesis_ok()}};
  if (field->q() <= 128) {
    const Plane plane(field);
    out["orth_group_order"] = plane.group_order();
    std::vector<std::size_t> sizes;
    for (Code t = 0; t < field->q(); ++t) sizes.push_back(plane.sphere_indices(t).size());
    out["sphere_sizes"] = sizes;
  } else {
    out["orth_group_order"] = nullptr;
    out["sphere_sizes"] = nullptr;
  }
  print_json(out);
  return 0;
}

struct CountArgs {
  std::string set_file;
  std::string graph = "triangle";
  std::string graph_file;
  std::string t;
  std::string dump_mask;
};

int run_count(const FieldArgs& fa, const CountArgs& args) {
  const auto plane = std::make_shared<const Plane>(fa.make());
  const PointSet set = load_points(args.set_file, plane);
  const ConfigGraph graph = load_graph(args.graph, args.graph_file);
  json out{{"schema", "ffdist.count/1"}, {"graph", graph.name()}, {"q", plane->q()}, {"set_size", set.size()}};
  if (!args.t.empty()) {
    const auto t = parse_codes(args.t);
    for (Code c : t)
      if (c >= plane->q()) throw Error(ErrorKind::InvalidArgument, "distance code out of range");
    out["t"] = t;
    out["nu"] = nu(set, graph, t);
    print_json(out);
    return 0;
  }
  out["delta_size"] = delta(set, graph).size;
  out["nu_sq_sum"] = count_value(nu_squared_sum(set, graph));
  const LambdaTable lambda(set);
  const auto iv = interpolation_values(*plane, lambda);
  out["psi22"] = count_value(iv.psi22);
  out["psi31"] = count_value(iv.psi31);
  print_json(out);
  return 0;
}

int run_delta(const FieldArgs& fa, const CountArgs& args) {
  const auto plane = std::make_shared<const Plane>(fa.make());
  const PointSet set = load_points(args.set_file, plane);
  const ConfigGraph graph = load_graph(args.graph, args.graph_file);
  const DeltaSet d = delta(set, graph);
  json out{{"schema", "ffdist.delta/1"}, {"graph", graph.name()}, {"q", plane->q()},
           {"set_size", set.size()},     {"delta_size", d.size}};
  if (!args.dump_mask.empty()) {
    std::ofstream mask(args.dump_mask);
    if (!mask) throw Error(ErrorKind::Io, "cannot write '" + args.dump_mask + "'");
    const std::uint64_t space = distance_space_size(plane->q(), graph.edge_count());
    for (std::uint64_t i = 0; i < space; ++i) {
      if (!d.contains(i)) continue;
      const auto t = decode_distances(i, plane->q(), graph.edge_count());
      for (std::size_t k = 0; k < t.size(); ++k) mask << (k ? "," : "") << t[k];
      mask << '\n';
    }
    if (!mask) throw Error(ErrorKind::Io, "failed writing '" + args.dump_mask + "'");
    out["mask_file"] = args.dump_mask;
  }
  print_json(out);
  return 0;
}

struct VerifyArgs {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t max_set_size = VerifyOptions{}.max_set_size;
  bool inject_fault = false;
  bool timings = false;
};

int run_verify(const FieldArgs& fa, const VerifyArgs& args) {
  const auto plane = std::make_shared<const Plane>(fa.make());
  VerifyOptions options;
  options.max_set_size = args.max_set_size;
  options.inject_lambda_fault = args.inject_fault;
  const VerifyReport report = verify_suite(plane, args.trials, args.seed, options);
  print_json(report.to_json());
  std::cerr << "verify q=" << report.q << " trials=" << report.trials << " elapsed_ms=" << report.elapsed_ms << '\n';
  for (const auto& r : report.properties) {
    if (args.timings) std::cerr << "  " << r.name << " " << r.elapsed_ms << " ms\n";
    if (!r.passed()) std::cerr << "FAILED " << r.name << ": " << r.counterexample << '\n';
  }
  return report.passed() ? 0 : kExitVerifyFailed;
}

struct SweepArgs {
  std::string config;
  std::string q_list;
  std::string exponent;
  std::string coefficient;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string graph;
  std::string kind;
  std::optional<Code> radius;
  bool no_lemmas = false;
  bool allow_any_field = false;
  std::string output;
};

int run_sweep_cmd(const SweepArgs& args) {
  ExperimentConfig cfg;
  bool seeded = false;
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw Error(ErrorKind::Io, "cannot open config '" + args.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
    }
    cfg = config_from_json(j);
    seeded = j.contains("seed");
  }
  if (!args.q_list.empty()) {
    cfg.q_list.clear();
    for (Code q : parse_codes(args.q_list)) cfg.q_list.push_back(q);
  }
  if (!args.exponent.empty()) cfg.exponent = parse_rational(args.exponent);
  if (!args.coefficient.empty()) cfg.coefficient = parse_rational(args.coefficient);
  if (args.trials) cfg.trials = *args.trials;
  if (args.seed) {
    cfg.seed = *args.seed;
    seeded = true;
  }
  if (!args.graph.empty()) cfg.graph = args.graph;
  if (!args.kind.empty()) {
    const auto kind = parse_sample_kind(args.kind);
    if (!kind) throw Error(ErrorKind::InvalidArgument, "unknown sample kind '" + args.kind + "'");
    cfg.kind = *kind;
  }
  if (args.radius) cfg.radius = *args.radius;
  if (args.no_lemmas) cfg.lemma_columns = false;
  if (args.allow_any_field) cfg.allow_any_field = true;
  if (!args.output.empty()) cfg.output = args.output;
  if (!seeded) throw Error(ErrorKind::InvalidArgument, "sweep needs a seed (--seed or \"seed\" in the config)");
  cfg.validate();

  if (cfg.output.empty() || cfg.output == "-") {
    run_sweep(cfg, std::cout);
    return 0;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorKind::Io, "cannot write '" + cfg.output + "'");
  const auto rows = run_sweep(cfg, file);
  print_json({{"schema", "ffdist.sweep/1"}, {"output", cfg.output}, {"trial_rows", rows.size()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance sets and configuration counts in GF(q)^2", "ffdist"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = all cores)");

  FieldArgs field_args;
  CountArgs count_args;
  VerifyArgs verify_args;
  SweepArgs sweep_args;

  auto* field_cmd = app.add_subcommand("field", "describe GF(p^n) and its plane geometry");
  field_args.attach(field_cmd);

  auto* count_cmd = app.add_subcommand("count", "nu_G(t), or the full count summary without --t");
  field_args.attach(count_cmd);
  count_cmd->add_option("--set", count_args.set_file, "point file (c1,c2 per line)")->required();
  count_cmd->add_option("--graph", count_args.graph, "edge|path2|triangle|bowtie|kite, or a name for --graph-file");
  count_cmd->add_option("--graph-file", count_args.graph_file, "custom graph file");
  count_cmd->add_option("--t", count_args.t, "distance vector v1,v2,...");

  auto* delta_cmd = app.add_subcommand("delta", "size of the generalized distance set");
  field_args.attach(delta_cmd);
  delta_cmd->add_option("--set", count_args.set_file, "point file (c1,c2 per line)")->required();
  delta_cmd->add_option("--graph", count_args.graph, "edge|path2|triangle|bowtie|kite, or a name for --graph-file");
  delta_cmd->add_option("--graph-file", count_args.graph_file, "custom graph file");
  delta_cmd->add_option("--dump-mask", count_args.dump_mask, "write every realized distance vector to FILE");

  auto* verify_cmd = app.add_subcommand("verify", "randomized battery of exact identities");
  field_args.attach(verify_cmd);
  verify_cmd->add_option("--trials", verify_args.trials, "random sets to test")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_args.seed, "64-bit seed")->required();
  verify_cmd->add_option("--max-set-size", verify_args.max_set_size, "largest random set");
  verify_cmd->add_flag("--timings", verify_args.timings, "per-property wall time on stderr");
  verify_cmd->add_flag("--inject-fault", verify_args.inject_fault, "corrupt one lambda entry (harness self-test)");

  auto* sweep_cmd = app.add_subcommand("sweep", "seeded experiment sweep, CSV output");
  sweep_cmd->add_option("--config", sweep_args.config, "JSON config file; flags override it");
  sweep_cmd->add_option("--q-list", sweep_args.q_list, "comma-separated field orders");
  sweep_cmd->add_option("--exponent", sweep_args.exponent, "s in |E| = ceil(C q^s), e.g. 12/7");
  sweep_cmd->add_option("--coefficient", sweep_args.coefficient, "C in |E| = ceil(C q^s)");
  sweep_cmd->add_option("--trials", sweep_args.trials, "trials per q");
  sweep_cmd->add_option("--seed", sweep_args.seed, "64-bit seed");
  sweep_cmd->add_option("--graph", sweep_args.graph, "built-in graph name");
  sweep_cmd->add_option("--kind", sweep_args.kind, "uniform|sphere-union|grid");
  sweep_cmd->add_option("--radius", sweep_args.radius, "radius a for the alpha tables");
  sweep_cmd->add_flag("--no-lemmas", sweep_args.no_lemmas, "skip psi and lemma ratio columns");
  sweep_cmd->add_flag("--allow-any-field", sweep_args.allow_any_field, "admit fields with isotropic vectors");
  sweep_cmd->add_option("--output", sweep_args.output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  set_thread_limit(threads);
  try {
    if (*field_cmd) return run_field(field_args);
    if (*count_cmd) return run_count(field_args, count_args);
    if (*delta_cmd) return run_delta(field_args, count_args);
    if (*verify_cmd) return run_verify(field_args, verify_args);
    if (*sweep_cmd) return run_sweep_cmd(sweep_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
