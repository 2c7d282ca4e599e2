#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "m2wis/kernelizer.hpp"
#include "m2wis/metis_io.hpp"
#include "m2wis/oracle.hpp"
#include "m2wis/simd/kernels.hpp"
#include "m2wis/solver.hpp"

namespace m2wis::cli {
namespace {

using Json = nlohmann::ordered_json;

// Reports a usage problem that CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string instance;
  SolverConfig config;
  std::string selection = "hybrid";
  std::optional<double> fraction;
  std::string output;
  std::string result;
  bool quiet = false;
};

struct ReduceArgs {
  std::string instance;
  std::string ordering = "baseline";
  std::string output;
  std::string result;
};

struct VerifyArgs {
  std::string instance;
  std::string solution;
};

struct ExactArgs {
  std::string instance;
  std::size_t max_vertices = 30;
  std::string output;
};

struct BenchArgs {
  std::string instance;
  std::string mode = "disable-one";
  std::string result;
};

WeightedGraph load_instance(const std::string& path) { return read_metis_file(path); }

void emit(std::ostream& out, const Json& record, const std::string& path) {
  const std::string text = record.dump() + "\n";
  out << text;
  if (!path.empty()) write_file_atomic(path, text);
}

int do_solve(SolveArgs& a, std::ostream& out, std::ostream& err) {
  a.config.strategy.kind = selection_from_name(a.selection);
  if (a.fraction) {
    if (a.config.strategy.kind == SelectionKind::SolutionParticipation) {
      throw UsageError("--selection-fraction conflicts with --selection participation");
    }
    a.config.strategy.fraction = a.fraction;
  }
  validate(a.config);
  const WeightedGraph g = load_instance(a.instance);
  if (!a.quiet) {
    err << "instance " << a.instance << ": n=" << g.live_count() << " m=" << g.live_edges()
        << " simd=" << simd::isa_name(simd::active_kernels().isa) << "\n";
    a.config.on_round = [&err](std::size_t round, const RoundTrace& t) {
      err << "round " << round << ": kernel=" << t.live_vertices << " offset=" << t.offset
          << " best=" << t.best_evolve_weight << "\n";
    };
  }
  const SolveResult r = solve(g, a.config);
  if (!a.output.empty()) write_file_atomic(a.output, write_solution(r.solution));

  Json record;
  record["instance"] = a.instance;
  record["n"] = g.original_size();
  record["m"] = g.live_edges();
  record["seed"] = r.seed;
  record["weight"] = r.weight;
  record["elapsed_seconds"] = r.elapsed;
  record["rounds"] = r.rounds;
  record["ordering"] = a.config.ordering;
  record["strategy"] = std::string(selection_name(a.config.strategy.kind));
  emit(out, record, a.result);
  return kExitOk;
}

int do_reduce(const ReduceArgs& a, std::ostream& out) {
  const ReductionOrdering ordering = ordering_preset(a.ordering);
  const WeightedGraph g = load_instance(a.instance);
  const Kernel k = exact_reduce(g, ordering);
  if (!a.output.empty()) write_file_atomic(a.output, write_metis(k.graph));
  Json record;
  record["instance"] = a.instance;
  record["n"] = g.original_size();
  record["m"] = g.live_edges();
  record["ordering"] = a.ordering;
  record["kernel_n"] = k.graph.live_count();
  record["kernel_m"] = k.graph.live_edges();
  record["offset"] = k.offset;
  record["events"] = k.events.size();
  emit(out, record, a.result);
  return kExitOk;
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = load_instance(a.instance);
  std::vector<VertexId> ids;
  try {
    ids = read_solution_file(a.solution);
  } catch (const FormatError& e) {
    err << "solution: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  const VerifyReport report = verify_solution(g, ids);
  (report.ok ? out : err) << report.summary() << "\n";
  return report.ok ? kExitOk : kExitVerifyFailed;
}

int do_exact(const ExactArgs& a, std::ostream& out) {
  const WeightedGraph g = load_instance(a.instance);
  OracleLimits limits;
  limits.max_vertices = a.max_vertices;
  const OracleResult r = brute_force(g, limits);
  if (!a.output.empty()) write_file_atomic(a.output, write_solution(r.witness));
  Json record;
  record["instance"] = a.instance;
  record["n"] = g.original_size();
  record["m"] = g.live_edges();
  record["weight"] = r.alpha_w;
  record["nodes"] = r.nodes;
  out << record.dump() << "\n";
  return kExitOk;
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  ExperimentMode mode;
  if (a.mode == "disable-one") {
    mode = ExperimentMode::DisableOne;
  } else if (a.mode == "presets") {
    mode = ExperimentMode::PresetSweep;
  } else {
    throw UsageError("--mode must be disable-one or presets, got '" + a.mode + "'");
  }
  const WeightedGraph g = load_instance(a.instance);
  const auto rows = run_ordering_experiment(g, mode);
  out << "label\tkernel_n\tkernel_m\tratio\toffset\tseconds\tevents\n";
  Json all = Json::array();
  for (const auto& row : rows) {
    out << row.label << '\t' << row.kernel_vertices << '\t' << row.kernel_edges << '\t'
        << std::fixed << std::setprecision(4) << row.kernel_ratio << '\t' << row.offset << '\t'
        << std::setprecision(6) << row.seconds << '\t' << row.events << '\n';
    out.unsetf(std::ios::floatfield);
    all.push_back({{"label", row.label},
                   {"kernel_n", row.kernel_vertices},
                   {"kernel_m", row.kernel_edges},
                   {"kernel_ratio", row.kernel_ratio},
                   {"offset", row.offset},
                   {"seconds", row.seconds},
                   {"events", row.events}});
  }
  if (!a.result.empty()) write_file_atomic(a.result, all.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memetic maximum weight independent set solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a heavy independent set");
  {
    auto& c = solve_args.config;
    solve_cmd->add_option("instance", solve_args.instance, "METIS graph")->required();
    solve_cmd->add_option("--time-limit", c.time_limit, "Seconds")->capture_default_str();
    solve_cmd->add_option("--seed", c.seed)->capture_default_str();
    solve_cmd->add_option("--population-size", c.population_size)->capture_default_str();
    solve_cmd->add_option("--pool-size", c.pool_size)->capture_default_str();
    solve_cmd->add_option("--ls-iterations", c.ls_iterations)->capture_default_str();
    solve_cmd->add_option("--max-blocks", c.max_blocks)->capture_default_str();
    solve_cmd->add_option("--mutation-prob", c.mutation_prob)->capture_default_str();
    solve_cmd->add_option("--unsuccessful-limit", c.unsuccessful_limit)->capture_default_str();
    solve_cmd->add_option("--ordering", c.ordering)->capture_default_str();
    solve_cmd->add_option("--selection", solve_args.selection)->capture_default_str();
    solve_cmd->add_option("--selection-fraction", solve_args.fraction,
                          "Share of the fittest solution to force; default one vertex");
    solve_cmd->add_option("--output", solve_args.output, "Solution file");
    solve_cmd->add_option("--result", solve_args.result, "Result record file");
    solve_cmd->add_flag("--quiet", solve_args.quiet, "No progress on stderr");
  }

  ReduceArgs reduce_args;
  auto* reduce_cmd = app.add_subcommand("reduce", "Exhaustive exact reduction");
  reduce_cmd->add_option("instance", reduce_args.instance)->required();
  reduce_cmd->add_option("--ordering", reduce_args.ordering)->capture_default_str();
  reduce_cmd->add_option("--output", reduce_args.output, "Kernel as METIS");
  reduce_cmd->add_option("--result", reduce_args.result);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against a graph");
  verify_cmd->add_option("instance", verify_args.instance)->required();
  verify_cmd->add_option("solution", verify_args.solution)->required();

  ExactArgs exact_args;
  auto* exact_cmd = app.add_subcommand("exact", "Branch and bound for small graphs");
  exact_cmd->add_option("instance", exact_args.instance)->required();
  exact_cmd->add_option("--max-vertices", exact_args.max_vertices)->capture_default_str();
  exact_cmd->add_option("--output", exact_args.output);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("ordering-bench", "Reduction ordering experiments");
  bench_cmd->add_option("instance", bench_args.instance)->required();
  bench_cmd->add_option("--mode", bench_args.mode, "disable-one or presets")->capture_default_str();
  bench_cmd->add_option("--result", bench_args.result);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return do_solve(solve_args, out, err);
    if (*reduce_cmd) return do_reduce(reduce_args, out);
    if (*verify_cmd) return do_verify(verify_args, out, err);
    if (*exact_cmd) return do_exact(exact_args, out);
    if (*bench_cmd) return do_bench(bench_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "malformed instance: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const GraphError& e) {
    err << "malformed instance: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace m2wis::cli
