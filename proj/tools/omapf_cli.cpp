#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omapf/bench.hpp"

namespace {

using namespace omapf;

constexpr int kExitUnsolvable = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitIoError = 4;

HeuristicKind parse_heuristic(const std::string& s)
{
  return s == "exact" ? HeuristicKind::Exact : HeuristicKind::Manhattan;
}

int status_exit_code(RunStatus s)
{
  switch (s) {
    case RunStatus::Success: return 0;
    case RunStatus::Unsolvable: return kExitUnsolvable;
    default: return kExitTimeout;
  }
}

bool write_text_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write file: " << path << "\n";
    return false;
  }
  return true;
}

struct GenOptions
{
  std::string map_path;
  std::string out_prefix;
  int width = 0;
  int height = 0;
  int k = 10;
  int instances = 1;
  Time t_min = 1;
  Time t_max = 100;
  uint64_t seed = 0;
};

int run_gen(const GenOptions& opt)
{
  GridMap map;
  if (!opt.map_path.empty()) {
    map = load_map(opt.map_path);
  } else {
    if (opt.width <= 0 || opt.height <= 0) {
      std::cerr << "error: gen needs --map or both --width and --height\n";
      return kExitIoError;
    }
    map = make_open_grid(opt.width, opt.height);
    std::ostringstream text;
    write_map(text, map);
    const std::string path = opt.out_prefix + ".map";
    if (!write_text_file(path, text.str())) return kExitIoError;
    std::cout << path << "\n";
  }

  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.instances; ++i) {
    const auto entries = gen_instance(map, opt.k, opt.t_min, opt.t_max, rng);
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%03d.scen", i);
    std::ostringstream text;
    write_scenario(text, entries);
    const std::string path = opt.out_prefix + suffix;
    if (!write_text_file(path, text.str())) return kExitIoError;
    std::cout << path << "\n";
  }
  return 0;
}

struct SolveOptions
{
  std::string map_path;
  std::string scen_path;
  std::string solver = "a4";
  std::string heuristic = "manhattan";
  std::string out_path;
  std::string dump_path;
  double time_limit_s = 30.0;
  uint64_t seed = 0;
};

int run_solve(const SolveOptions& opt)
{
  const GridMap map = load_map(opt.map_path);
  const auto entries = load_scenario(opt.scen_path);
  const auto agents = agents_from_scenario(map, entries);
  const Graph graph = map.to_graph();

  SolverConfig cfg;
  cfg.variant = *parse_variant(opt.solver);
  cfg.heuristic = parse_heuristic(opt.heuristic);
  cfg.time_limit_s = opt.time_limit_s;
  cfg.seed = opt.seed;

  RunOutcome out = run_online(graph, agents, cfg);
  if (out.status == RunStatus::Timeout) out.total_time_s = cfg.time_limit_s;

  const std::string report = run_report_json(opt.scen_path, cfg, out).dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << report;
  } else if (!write_text_file(opt.out_path, report)) {
    return kExitIoError;
  }
  if (!opt.dump_path.empty() &&
      !write_text_file(opt.dump_path, plan_dump_json(out).dump(2) + "\n")) {
    return kExitIoError;
  }
  return status_exit_code(out.status);
}

struct BenchOptions
{
  BenchSpec spec;
  std::vector<std::string> solvers = {"a1", "a2", "a3", "a4"};
  std::string heuristic = "manhattan";
  std::string out_path;
  std::string json_path;
};

int run_bench_cmd(const BenchOptions& opt)
{
  BenchSpec spec = opt.spec;
  spec.heuristic = parse_heuristic(opt.heuristic);
  spec.solvers.clear();
  for (const std::string& s : opt.solvers) spec.solvers.push_back(*parse_variant(s));

  const BenchOutput out = run_bench(spec);
  if (opt.out_path.empty()) {
    std::cout << out.csv;
  } else if (!write_text_file(opt.out_path, out.csv)) {
    return kExitIoError;
  }
  if (!opt.json_path.empty()) {
    json arr = json::array();
    for (const InstanceRecord& r : out.records) {
      arr.push_back({{"k", r.k},
                     {"index", r.index},
                     {"solver", variant_name(r.solver)},
                     {"status", run_status_name(r.status)},
                     {"time_s", r.time_s},
                     {"ll_expansions", r.ll_expansions},
                     {"ctx_hits", r.ctx_hits},
                     {"ctx_misses", r.ctx_misses},
                     {"soc_sum", r.soc_sum}});
    }
    if (!write_text_file(opt.json_path, arr.dump(2) + "\n")) return kExitIoError;
  }
  std::cerr << out.summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"online multi-agent path finding: solvers and benchmarks"};
  app.require_subcommand(1);

  const std::vector<std::string> solver_names = {"a1", "a2", "a3", "a4", "A1", "A2", "A3", "A4"};
  const std::vector<std::string> heuristic_names = {"manhattan", "exact"};

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate maps and scenario files");
  gen_cmd->add_option("--map", gen.map_path, "existing map file to place agents on");
  gen_cmd->add_option("--width", gen.width, "width of a generated open grid");
  gen_cmd->add_option("--height", gen.height, "height of a generated open grid");
  gen_cmd->add_option("--k", gen.k, "agents per instance")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--instances", gen.instances, "number of scenario files")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--t-min", gen.t_min, "earliest possible start time");
  gen_cmd->add_option("--t-max", gen.t_max, "latest possible start time");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out_prefix, "output path prefix")->required();

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one scenario and print a JSON report");
  solve_cmd->add_option("--map", solve.map_path, "map file")->required();
  solve_cmd->add_option("--scen", solve.scen_path, "scenario file")->required();
  solve_cmd->add_option("--solver", solve.solver, "solver variant")
      ->check(CLI::IsMember(solver_names));
  solve_cmd->add_option("--heuristic", solve.heuristic, "low-level heuristic")
      ->check(CLI::IsMember(heuristic_names));
  solve_cmd->add_option("--time-limit", solve.time_limit_s, "run time limit in seconds");
  solve_cmd->add_option("--seed", solve.seed, "random seed");
  solve_cmd->add_option("--out", solve.out_path, "write the report here instead of stdout");
  solve_cmd->add_option("--dump-plans", solve.dump_path, "write per-iteration plans as JSON");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run the benchmark matrix and emit CSV");
  bench_cmd->add_option("--width", bench.spec.width, "grid width");
  bench_cmd->add_option("--height", bench.spec.height, "grid height");
  bench_cmd->add_option("--k", bench.spec.agent_counts, "agent counts to sweep");
  bench_cmd->add_option("--instances", bench.spec.instances_per_count, "instances per count");
  bench_cmd->add_option("--t-min", bench.spec.t_min, "earliest possible start time");
  bench_cmd->add_option("--t-max", bench.spec.t_max, "latest possible start time");
  bench_cmd->add_option("--time-limit", bench.spec.time_limit_s, "per-run limit in seconds");
  bench_cmd->add_option("--seed", bench.spec.seed, "random seed");
  bench_cmd->add_option("--solvers", bench.solvers, "solver variants to compare")
      ->check(CLI::IsMember(solver_names));
  bench_cmd->add_option("--heuristic", bench.heuristic, "low-level heuristic")
      ->check(CLI::IsMember(heuristic_names));
  bench_cmd->add_option("--jobs", bench.spec.jobs, "parallel workers")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out_path, "write the CSV here instead of stdout");
  bench_cmd->add_option("--json", bench.json_path, "write per-instance records as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    return run_bench_cmd(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
}
