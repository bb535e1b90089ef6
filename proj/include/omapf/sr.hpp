#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "omapf/baselines.hpp"

namespace omapf {

struct IterationStats
{
  Time t = 0;
  Cost soc = 0;
  long long ll_expansions = 0;
  long long ct_nodes = 0;
  long long ctx_hits = 0;
  long long ctx_misses = 0;
};

enum class RunStatus { Success, Unsolvable, Timeout };

inline const char* run_status_name(RunStatus s)
{
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Unsolvable: return "unsolvable";
    default: return "timeout";
  }
}

struct RunOutcome
{
  RunStatus status = RunStatus::Success;
  ExecutePlan exec;
  std::vector<IterationStats> iterations;
  std::vector<PlanSnapshot> snapshots;             // plan per iteration
  std::vector<std::vector<Agent>> snapshot_agents;  // planning state per iteration
  double total_time_s = 0.0;
  size_t ctx_entries = 0;
  size_t ctx_resident_states = 0;
};

// Event-driven online loop: replan every time a new batch of agents
// starts. Agents that reached their goal strictly before the replanning
// time leave the system; an agent sitting on its goal exactly at t_new
// still occupies it and stays for one final zero-cost iteration.
inline RunOutcome run_online(const Graph& g, const std::vector<Agent>& all_agents,
                             const SolverConfig& cfg)
{
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  SearchLimits lim;
  if (cfg.time_limit_s > 0)
    lim.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(cfg.time_limit_s));

  PlanningContext store;
  std::map<int, Agent> active;
  PlanSnapshot prev;

  std::vector<Time> waves;
  for (const Agent& a : all_agents) waves.push_back(a.start_time);
  std::sort(waves.begin(), waves.end());
  waves.erase(std::unique(waves.begin(), waves.end()), waves.end());

  long long prev_hits = 0, prev_misses = 0;
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  for (Time t_new : waves) {
    // Simulate the executed plan forward to t_new.
    for (auto it = active.begin(); it != active.end();) {
      Agent& a = it->second;
      const ExecTrack& tr = out.exec[a.id];
      if (!tr.vertices.empty() && tr.entry_time <= t_new) {
        if (tr.arrival_time() < t_new) {
          if (cfg.variant == Variant::A4) store.purge_agent(a.id);
          prev.erase(a.id);
          it = active.erase(it);
          continue;
        }
        a.in_scene = true;
        a.current = tr.vertices[t_new - tr.entry_time];
      } else {
        a.in_scene = false;  // entry not executed yet; re-decided now
      }
      ++it;
    }
    for (const Agent& a : all_agents)
      if (a.start_time == t_new) active.emplace(a.id, a);

    std::vector<Agent> agents;
    agents.reserve(active.size());
    for (const auto& kv : active) agents.push_back(kv.second);

    ScbsResult r = solve_snapshot(g, agents, t_new, cfg, &prev, &store, lim);
    if (r.status != SolveStatus::Solved) {
      out.status = r.status == SolveStatus::Timeout ? RunStatus::Timeout : RunStatus::Unsolvable;
      out.total_time_s = elapsed();
      out.ctx_entries = store.entries();
      out.ctx_resident_states = store.resident_states();
      return out;
    }

    for (const auto& [id, p] : r.paths) splice_track(out.exec[id], t_new, p);

    IterationStats st;
    st.t = t_new;
    st.soc = soc(r.paths, t_new);
    st.ll_expansions = r.stats.ll_expansions;
    st.ct_nodes = r.stats.ct_nodes;
    st.ctx_hits = store.hits() - prev_hits;
    st.ctx_misses = store.misses() - prev_misses;
    prev_hits = store.hits();
    prev_misses = store.misses();
    out.iterations.push_back(st);
    out.snapshots.push_back(r.paths);
    out.snapshot_agents.push_back(std::move(agents));
    prev = out.snapshots.back();
  }

  out.total_time_s = elapsed();
  out.ctx_entries = store.entries();
  out.ctx_resident_states = store.resident_states();
  return out;
}

// Full-trajectory validity check of an executed plan: agents appear at
// their start no earlier than their start time, move along edges, end on
// their goal, and never collide.
inline std::vector<std::string> audit_execute_plan(const Graph& g,
                                                   const std::vector<Agent>& all_agents,
                                                   const ExecutePlan& exec)
{
  std::vector<std::string> problems;
  std::map<int, const Agent*> by_id;
  for (const Agent& a : all_agents) by_id[a.id] = &a;

  PlanSnapshot as_paths;
  for (const auto& [id, tr] : exec) {
    if (tr.vertices.empty()) {
      problems.push_back("agent " + std::to_string(id) + ": empty track");
      continue;
    }
    auto ait = by_id.find(id);
    if (ait == by_id.end()) {
      problems.push_back("agent " + std::to_string(id) + ": track without agent");
      continue;
    }
    const Agent& a = *ait->second;
    if (tr.entry_time < a.start_time)
      problems.push_back("agent " + std::to_string(id) + ": entered before start time");
    if (tr.vertices.front() != a.start)
      problems.push_back("agent " + std::to_string(id) + ": track does not begin at start");
    if (tr.vertices.back() != a.goal)
      problems.push_back("agent " + std::to_string(id) + ": track does not end at goal");
    for (size_t i = 1; i < tr.vertices.size(); ++i) {
      const VertexId u = tr.vertices[i - 1], v = tr.vertices[i];
      if (u != v && !g.has_edge(u, v)) {
        problems.push_back("agent " + std::to_string(id) + ": invalid move at offset " +
                           std::to_string(i));
        break;
      }
    }
    as_paths[id] = tr.as_path();
  }
  if (auto c = find_earliest_conflict(as_paths)) {
    problems.push_back("conflict between agents " + std::to_string(c->agent_a) + " and " +
                       std::to_string(c->agent_b) + " at t=" + std::to_string(c->time));
  }
  return problems;
}

}  // namespace omapf
