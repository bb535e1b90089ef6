#pragma once

#include <chrono>
#include <map>
#include <set>
#include <vector>

#include "omapf/constraints.hpp"
#include "omapf/domain.hpp"
#include "omapf/graph.hpp"
#include "omapf/srsipp.hpp"

namespace omapf {

inline bool path_satisfies(const Path& p, const ConstraintSet& cons)
{
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    const Time t = p.start_time + static_cast<Time>(i);
    if (cons.vertex_constrained(p.vertices[i], t)) return false;
    if (i > 0 && p.vertices[i - 1] != p.vertices[i] &&
        cons.edge_constrained(p.vertices[i - 1], p.vertices[i], t))
      return false;
  }
  return true;
}

// Conflicts a candidate path for agent `id` would have with the other paths.
inline int conflicts_with_rest(const PlanSnapshot& paths, int id, const Path& cand)
{
  int n = 0;
  for (const auto& [oid, op] : paths)
    if (oid != id) n += count_conflicts(cand, op);
  return n;
}

enum class SolveStatus { Solved, Unsolvable, Timeout };

struct ScbsStats
{
  long long ll_expansions = 0;
  long long ct_nodes = 0;  // conflict-tree nodes expanded
};

struct ScbsResult
{
  SolveStatus status = SolveStatus::Unsolvable;
  PlanSnapshot paths;
  ScbsStats stats;
};

// Conflict-tree search over one snapshot. The low-level policy is any
// callable (agent, constraints, t_now, limits) -> SearchResult; it decides
// whether contexts are reused, suffixes are recycled, or runs start fresh.
template <class LowLevel>
ScbsResult scbs_solve(const std::vector<Agent>& agents, Time t_now, LowLevel&& low,
                      const SearchLimits& lim = {})
{
  struct CtNode
  {
    std::map<int, ConstraintSet> cons;
    PlanSnapshot paths;
    Cost soc = 0;
    int ncons = 0;
  };

  ScbsResult res;
  std::vector<CtNode> nodes(1);
  CtNode& root = nodes[0];
  for (const Agent& a : agents) {
    SearchResult r = low(a, root.cons[a.id], t_now, lim);
    res.stats.ll_expansions += r.expansions;
    if (r.status == SearchStatus::Timeout) {
      res.status = SolveStatus::Timeout;
      return res;
    }
    if (r.status == SearchStatus::NoPath) {
      res.status = SolveStatus::Unsolvable;
      return res;
    }
    root.paths[a.id] = r.path;
  }
  root.soc = soc(root.paths, t_now);

  // Frontier ordered by cost, then fewer constraints, then creation order.
  std::set<std::tuple<Cost, int, int>> open;
  open.insert({root.soc, root.ncons, 0});

  std::map<int, const Agent*> by_id;
  for (const Agent& a : agents) by_id[a.id] = &a;

  while (!open.empty()) {
    if (lim.deadline && std::chrono::steady_clock::now() > *lim.deadline) {
      res.status = SolveStatus::Timeout;
      return res;
    }
    const auto [cost, ncons, id] = *open.begin();
    open.erase(open.begin());
    const CtNode cur = nodes[id];  // children may reallocate the arena
    ++res.stats.ct_nodes;

    auto conflict = find_earliest_conflict(cur.paths);
    if (!conflict) {
      res.status = SolveStatus::Solved;
      res.paths = cur.paths;
      return res;
    }

    // Bypass: when a conflicting agent has an equal-cost detour that strictly
    // reduces its conflicts with the rest of the plan, adopt the detour under
    // the node's own constraints and requeue instead of branching. Costs are
    // unchanged, so optimality is kept; the node's conflict count strictly
    // drops, so repeated adoption terminates.
    bool adopted = false;
    std::vector<std::tuple<int, Constraint, SearchResult>> branches;
    for (const auto& [agent_id, constraint] : split_conflict(*conflict)) {
      ConstraintSet probe = cur.cons.at(agent_id);
      probe.insert(constraint);
      SearchResult r = low(*by_id.at(agent_id), probe, t_now, lim);
      res.stats.ll_expansions += r.expansions;
      if (r.status == SearchStatus::Timeout) {
        res.status = SolveStatus::Timeout;
        return res;
      }
      const Path& incumbent = cur.paths.at(agent_id);
      if (r.status == SearchStatus::Found && r.cost == incumbent.cost(t_now) &&
          conflicts_with_rest(cur.paths, agent_id, r.path) <
              conflicts_with_rest(cur.paths, agent_id, incumbent)) {
        CtNode next = cur;
        next.paths[agent_id] = r.path;  // same cost, constraint not kept
        const int next_id = static_cast<int>(nodes.size());
        nodes.push_back(std::move(next));
        open.insert({nodes.back().soc, nodes.back().ncons, next_id});
        adopted = true;
        break;
      }
      branches.emplace_back(agent_id, constraint, std::move(r));
    }
    if (adopted) continue;

    for (auto& [agent_id, constraint, r] : branches) {
      if (r.status == SearchStatus::NoPath) continue;  // prune this branch
      CtNode child = cur;
      child.cons[agent_id].insert(constraint);
      child.ncons = cur.ncons + 1;
      child.paths[agent_id] = r.path;
      child.soc = soc(child.paths, t_now);
      const int child_id = static_cast<int>(nodes.size());
      nodes.push_back(std::move(child));
      open.insert({nodes.back().soc, nodes.back().ncons, child_id});
    }
  }
  res.status = SolveStatus::Unsolvable;
  return res;
}

}  // namespace omapf
