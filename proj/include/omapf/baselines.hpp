#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "omapf/context_store.hpp"
#include "omapf/scbs.hpp"
#include "omapf/srsipp.hpp"

namespace omapf {

enum class Variant { A1, A2, A3, A4 };
enum class HeuristicKind { Manhattan, Exact };

struct SolverConfig
{
  Variant variant = Variant::A4;
  HeuristicKind heuristic = HeuristicKind::Manhattan;
  double time_limit_s = 30.0;
  uint64_t seed = 0;
};

inline const char* variant_name(Variant v)
{
  switch (v) {
    case Variant::A1: return "a1";
    case Variant::A2: return "a2";
    case Variant::A3: return "a3";
    default: return "a4";
  }
}

inline std::optional<Variant> parse_variant(const std::string& s)
{
  if (s == "a1" || s == "A1") return Variant::A1;
  if (s == "a2" || s == "A2") return Variant::A2;
  if (s == "a3" || s == "A3") return Variant::A3;
  if (s == "a4" || s == "A4") return Variant::A4;
  return std::nullopt;
}

// Forward A* over (time, vertex) states with a virtual garage chain for
// not-yet-entered agents. Optimal under the same cost rule as the interval
// solver; the reference low level for the restart-everything baseline.
inline SearchResult astar_ts(const Graph& g, const Agent& agent, const ConstraintSet& cons,
                             Time t_now, const std::vector<Cost>* exact_to_goal = nullptr,
                             const SearchLimits& lim = {})
{
  SearchResult res;
  const int n = g.size();
  const int garage = n;

  auto h_of = [&](int v) -> Cost {
    if (v == garage) {
      const Cost hs = exact_to_goal ? (*exact_to_goal)[agent.start]
                                    : manhattan_h(g, agent.start, agent.goal);
      return sat_add(hs, 1);
    }
    return exact_to_goal ? (*exact_to_goal)[v] : manhattan_h(g, v, agent.goal);
  };

  // No useful state exists past the lapse of all constraints plus one
  // shortest traversal.
  const Time horizon = std::max({t_now, agent.start_time, cons.max_time() + 1}) + n;

  struct Entry
  {
    Cost f;
    Time t;
    int v;
    bool operator<(const Entry& o) const
    {
      if (f != o.f) return f < o.f;
      if (t != o.t) return t > o.t;  // deeper states first
      return v < o.v;
    }
  };

  auto key = [n](Time t, int v) { return static_cast<int64_t>(t) * (n + 1) + v; };
  std::set<Entry> open;
  std::unordered_set<int64_t> seen;
  std::unordered_map<int64_t, int64_t> parent;

  auto push = [&](Time t, int v, int64_t from) {
    const int64_t k = key(t, v);
    if (!seen.insert(k).second) return;
    parent[k] = from;
    const Cost f = sat_add(t - t_now, h_of(v));
    if (f < kInfCost) open.insert({f, t, v});
  };

  if (agent.in_scene) {
    if (cons.vertex_constrained(agent.current, t_now)) {
      res.status = SearchStatus::NoPath;
      return res;
    }
    push(t_now, agent.current, -1);
  } else {
    push(t_now, garage, -1);
    if (t_now >= agent.start_time && !cons.vertex_constrained(agent.start, t_now))
      push(t_now, agent.start, -1);
  }

  int loop = 0;
  while (!open.empty()) {
    if (lim.deadline && (++loop & 255) == 0 &&
        std::chrono::steady_clock::now() > *lim.deadline) {
      res.status = SearchStatus::Timeout;
      return res;
    }
    const Entry cur = *open.begin();
    open.erase(open.begin());
    ++res.expansions;

    if (cur.v == agent.goal) {
      std::vector<VertexId> rev;
      int64_t k = key(cur.t, cur.v);
      Time t = cur.t;
      while (k >= 0) {
        const int v = static_cast<int>(k % (n + 1));
        if (v == garage) break;  // garage prefix carries no occupation
        rev.push_back(v);
        k = parent.at(k);
        --t;
      }
      res.path.start_time = t + 1;
      res.path.vertices.assign(rev.rbegin(), rev.rend());
      res.cost = res.path.cost(t_now);
      res.status = SearchStatus::Found;
      return res;
    }

    if (cur.t >= horizon) continue;
    const Time nt = cur.t + 1;
    if (cur.v == garage) {
      push(nt, garage, key(cur.t, cur.v));
      if (nt >= agent.start_time && !cons.vertex_constrained(agent.start, nt))
        push(nt, agent.start, key(cur.t, cur.v));
      continue;
    }
    for (VertexId u : g.forward_neighbors(cur.v)) {
      if (cons.vertex_constrained(u, nt)) continue;
      if (u != cur.v && cons.edge_constrained(cur.v, u, nt)) continue;
      push(nt, u, key(cur.t, cur.v));
    }
  }
  res.status = SearchStatus::NoPath;
  return res;
}

namespace ll_detail {

template <class Ctx>
SearchResult run_interval_search(Ctx& ctx, const Graph& g, const Agent& a,
                                 const ConstraintSet& cons, Time t_now, HeuristicKind kind,
                                 const SearchLimits& lim)
{
  const VertexId cur = a.plan_vertex();
  if (kind == HeuristicKind::Manhattan && g.has_coords()) {
    auto h = [&g, cur](VertexId v) { return manhattan_h(g, cur, v); };
    return srsipp_search(ctx, g, a, cons, t_now, h, lim);
  }
  const std::vector<Cost> d = distances_from(g, cur);
  auto h = [&d](VertexId v) { return d[v]; };
  return srsipp_search(ctx, g, a, cons, t_now, h, lim);
}

}  // namespace ll_detail

// Low level of the restart-everything baseline: plain time-space A*.
class AstarLowLevel
{
public:
  AstarLowLevel(const Graph& g, HeuristicKind kind) : g_(g), kind_(kind) {}

  SearchResult operator()(const Agent& a, const ConstraintSet& cons, Time t_now,
                          const SearchLimits& lim)
  {
    const std::vector<Cost>* he = nullptr;
    if (kind_ == HeuristicKind::Exact || !g_.has_coords()) {
      auto it = cache_.find(a.goal);
      if (it == cache_.end()) it = cache_.emplace(a.goal, exact_h(g_, a.goal)).first;
      he = &it->second;
    }
    return astar_ts(g_, a, cons, t_now, he, lim);
  }

private:
  const Graph& g_;
  HeuristicKind kind_;
  std::map<VertexId, std::vector<Cost>> cache_;
};

// Fresh interval search on every call; no state survives.
class RsippLowLevel
{
public:
  RsippLowLevel(const Graph& g, HeuristicKind kind) : g_(g), kind_(kind) {}

  SearchResult operator()(const Agent& a, const ConstraintSet& cons, Time t_now,
                          const SearchLimits& lim)
  {
    SearchContext ctx;
    return ll_detail::run_interval_search(ctx, g_, a, cons, t_now, kind_, lim);
  }

private:
  const Graph& g_;
  HeuristicKind kind_;
};

// Fresh interval search, but when the agent's previous-iteration path still
// satisfies the node's constraints from t_now onward, its suffix is reused
// without any search.
class SuffixRsippLowLevel
{
public:
  SuffixRsippLowLevel(const Graph& g, HeuristicKind kind, const PlanSnapshot* prev)
      : g_(g), kind_(kind), prev_(prev)
  {
  }

  SearchResult operator()(const Agent& a, const ConstraintSet& cons, Time t_now,
                          const SearchLimits& lim)
  {
    if (const Path* suffix_src = prev_path(a.id)) {
      std::optional<Path> cand = suffix_from(*suffix_src, a, t_now);
      if (cand && path_satisfies(*cand, cons)) {
        SearchResult res;
        res.status = SearchStatus::Found;
        res.path = std::move(*cand);
        res.cost = res.path.cost(t_now);
        return res;
      }
    }
    SearchContext ctx;
    return ll_detail::run_interval_search(ctx, g_, a, cons, t_now, kind_, lim);
  }

private:
  const Path* prev_path(int id) const
  {
    if (!prev_) return nullptr;
    auto it = prev_->find(id);
    return it == prev_->end() ? nullptr : &it->second;
  }

  static std::optional<Path> suffix_from(const Path& p, const Agent& a, Time t_now)
  {
    if (p.vertices.empty() || p.arrival_time() < t_now) return std::nullopt;
    if (p.start_time > t_now) {
      if (a.in_scene) return std::nullopt;
      return p;  // planned entry still ahead; the whole plan is the suffix
    }
    if (!a.in_scene) return std::nullopt;
    Path s;
    s.start_time = t_now;
    s.vertices.assign(p.vertices.begin() + (t_now - p.start_time), p.vertices.end());
    if (s.vertices.front() != a.current) return std::nullopt;
    return s;
  }

  const Graph& g_;
  HeuristicKind kind_;
  const PlanSnapshot* prev_;
};

// Interval search resuming the stored context for (agent, constraint set).
class SrsippLowLevel
{
public:
  SrsippLowLevel(const Graph& g, HeuristicKind kind, PlanningContext& store)
      : g_(g), kind_(kind), store_(store)
  {
  }

  SearchResult operator()(const Agent& a, const ConstraintSet& cons, Time t_now,
                          const SearchLimits& lim)
  {
    const std::string key = cons.canonical_key();
    SearchContext ctx = store_.checkout(a.id, key);
    SearchResult res = ll_detail::run_interval_search(ctx, g_, a, cons, t_now, kind_, lim);
    store_.put_back(a.id, key, std::move(ctx));
    return res;
  }

private:
  const Graph& g_;
  HeuristicKind kind_;
  PlanningContext& store_;
};

// One replanning iteration: dispatch the conflict-tree solve to the
// variant's low level. prev is the previous iteration's snapshot (used by
// the suffix-reuse baseline); store persists across iterations for the
// proposed solver.
inline ScbsResult solve_snapshot(const Graph& g, const std::vector<Agent>& agents, Time t_now,
                                 const SolverConfig& cfg, const PlanSnapshot* prev,
                                 PlanningContext* store, const SearchLimits& lim = {})
{
  switch (cfg.variant) {
    case Variant::A1: {
      AstarLowLevel low(g, cfg.heuristic);
      return scbs_solve(agents, t_now, low, lim);
    }
    case Variant::A2: {
      RsippLowLevel low(g, cfg.heuristic);
      return scbs_solve(agents, t_now, low, lim);
    }
    case Variant::A3: {
      SuffixRsippLowLevel low(g, cfg.heuristic, prev);
      return scbs_solve(agents, t_now, low, lim);
    }
    default: {
      SrsippLowLevel low(g, cfg.heuristic, *store);
      return scbs_solve(agents, t_now, low, lim);
    }
  }
}

}  // namespace omapf
