#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "omapf/report.hpp"

namespace omapf {

// Bounded draw via modulo: bias is negligible at these ranges and the
// stream is identical across standard libraries, which the determinism
// guarantees depend on.
inline int rng_below(std::mt19937_64& rng, int n)
{
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

struct BenchSpec
{
  int width = 32;
  int height = 32;
  std::vector<int> agent_counts{40, 60};
  int instances_per_count = 30;
  Time t_min = 1;
  Time t_max = 100;
  double time_limit_s = 30.0;
  HeuristicKind heuristic = HeuristicKind::Manhattan;
  uint64_t seed = 0;
  std::vector<Variant> solvers{Variant::A1, Variant::A2, Variant::A3, Variant::A4};
  int jobs = 1;
};

inline GridMap make_open_grid(int w, int h)
{
  GridMap m;
  m.width = w;
  m.height = h;
  m.blocked.assign(static_cast<size_t>(w) * h, 0);
  return m;
}

// Starts on the west border, goals on the east border, start cells distinct
// within each arrival time.
inline std::vector<ScenarioEntry> gen_instance(const GridMap& map, int k, Time t_min, Time t_max,
                                               std::mt19937_64& rng)
{
  std::vector<std::pair<int, int>> west, east;
  for (int y = 0; y < map.height; ++y) {
    if (!map.blocked[map.vertex(0, y)]) west.push_back({0, y});
    if (!map.blocked[map.vertex(map.width - 1, y)]) east.push_back({map.width - 1, y});
  }
  if (west.empty() || east.empty())
    throw std::runtime_error("scenario generation: no free cells on the opposing borders");

  std::vector<ScenarioEntry> out;
  std::set<std::pair<Time, int>> used;  // (start time, west row)
  for (int i = 0; i < k; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const Time t = t_min + rng_below(rng, static_cast<int>(t_max - t_min + 1));
      const int si = rng_below(rng, static_cast<int>(west.size()));
      if (!used.insert({t, si}).second) continue;
      const int gi = rng_below(rng, static_cast<int>(east.size()));
      ScenarioEntry e;
      e.start_time = t;
      e.sx = west[si].first;
      e.sy = west[si].second;
      e.gx = east[gi].first;
      e.gy = east[gi].second;
      out.push_back(e);
      placed = true;
    }
    if (!placed)
      throw std::runtime_error("scenario generation: not enough free start slots for k agents");
  }
  return out;
}

struct InstanceRecord
{
  int k = 0;
  int index = 0;
  Variant solver = Variant::A1;
  RunStatus status = RunStatus::Success;
  double time_s = 0.0;
  long long ll_expansions = 0;
  long long ctx_hits = 0;
  long long ctx_misses = 0;
  size_t ctx_entries = 0;
  size_t ctx_resident_states = 0;
  Cost soc_sum = 0;  // summed per-iteration SOC, solver-equality probe
};

struct BenchOutput
{
  std::vector<InstanceRecord> records;
  std::string csv;
  std::string summary;
};

namespace bench_detail {

inline std::string fmt(const char* spec, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace bench_detail

inline BenchOutput run_bench(const BenchSpec& spec)
{
  const GridMap map = make_open_grid(spec.width, spec.height);
  const Graph graph = map.to_graph();

  // All scenarios come from one sequential draw so the set is reproducible
  // regardless of how the runs are scheduled.
  std::mt19937_64 rng(spec.seed);
  struct Task
  {
    int k, index;
    std::vector<Agent> agents;
    Variant solver;
  };
  std::vector<Task> tasks;
  for (int k : spec.agent_counts) {
    for (int i = 0; i < spec.instances_per_count; ++i) {
      const auto entries = gen_instance(map, k, spec.t_min, spec.t_max, rng);
      const auto agents = agents_from_scenario(map, entries);
      for (Variant v : spec.solvers) tasks.push_back({k, i, agents, v});
    }
  }

  std::vector<InstanceRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t ti = next.fetch_add(1);
      if (ti >= tasks.size()) return;
      const Task& t = tasks[ti];
      SolverConfig cfg;
      cfg.variant = t.solver;
      cfg.heuristic = spec.heuristic;
      cfg.time_limit_s = spec.time_limit_s;
      cfg.seed = spec.seed;
      const RunOutcome out = run_online(graph, t.agents, cfg);
      InstanceRecord& r = records[ti];
      r.k = t.k;
      r.index = t.index;
      r.solver = t.solver;
      r.status = out.status;
      r.time_s = out.status == RunStatus::Timeout ? spec.time_limit_s : out.total_time_s;
      for (const IterationStats& it : out.iterations) {
        r.ll_expansions += it.ll_expansions;
        r.ctx_hits += it.ctx_hits;
        r.ctx_misses += it.ctx_misses;
        r.soc_sum += it.soc;
      }
      r.ctx_entries = out.ctx_entries;
      r.ctx_resident_states = out.ctx_resident_states;
    }
  };
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate per (k, solver). Failures count at the time limit.
  struct Agg
  {
    int n = 0, ok = 0;
    double time_sum = 0;
    long long exp_sum = 0, hit_sum = 0, miss_sum = 0;
  };
  std::map<std::pair<int, int>, Agg> agg;  // (k, variant index)
  for (const InstanceRecord& r : records) {
    Agg& a = agg[{r.k, static_cast<int>(r.solver)}];
    ++a.n;
    if (r.status == RunStatus::Success) ++a.ok;
    a.time_sum += r.status == RunStatus::Success ? r.time_s : spec.time_limit_s;
    a.exp_sum += r.ll_expansions;
    a.hit_sum += r.ctx_hits;
    a.miss_sum += r.ctx_misses;
  }

  using bench_detail::fmt;
  std::ostringstream csv;
  csv << "k,solver,success_rate,mean_time_s,speedup_vs_A1,expansions,ctx_hit_rate,"
         "ctx_hits,ctx_misses,ctx_entries,ctx_resident_states\n";
  std::ostringstream table;
  table << "k";
  for (Variant v : spec.solvers) table << "\t" << variant_name(v);
  table << "\n";

  for (int k : spec.agent_counts) {
    const auto a1 = agg.find({k, static_cast<int>(Variant::A1)});
    const double a1_mean = a1 == agg.end() || a1->second.n == 0
                               ? 0.0
                               : a1->second.time_sum / a1->second.n;
    table << k;
    for (Variant v : spec.solvers) {
      const auto it = agg.find({k, static_cast<int>(v)});
      if (it == agg.end() || it->second.n == 0) continue;
      const Agg& a = it->second;
      const double mean_t = a.time_sum / a.n;
      const double speedup = mean_t > 0 && a1_mean > 0 ? a1_mean / mean_t : 0.0;
      const double hit_rate =
          a.hit_sum + a.miss_sum > 0 ? double(a.hit_sum) / double(a.hit_sum + a.miss_sum) : 0.0;
      long long entries = 0, resident = 0;
      for (const InstanceRecord& r : records)
        if (r.k == k && r.solver == v) {
          entries += static_cast<long long>(r.ctx_entries);
          resident += static_cast<long long>(r.ctx_resident_states);
        }
      csv << k << ',' << variant_name(v) << ',' << fmt("%.3f", double(a.ok) / a.n) << ','
          << fmt("%.6f", mean_t) << ',' << fmt("%.3f", speedup) << ','
          << fmt("%.1f", double(a.exp_sum) / a.n) << ',' << fmt("%.3f", hit_rate) << ','
          << a.hit_sum << ',' << a.miss_sum << ',' << entries << ',' << resident << "\n";
      table << "\t" << fmt("%.1f", mean_t) << "(" << fmt("%.2f", speedup) << ")";
    }
    table << "\n";
  }

  BenchOutput out;
  out.records = std::move(records);
  out.csv = csv.str();
  out.summary = table.str();
  return out;
}

}  // namespace omapf
