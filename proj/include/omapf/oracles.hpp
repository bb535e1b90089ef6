#pragma once

#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "omapf/domain.hpp"

namespace omapf {

// Ground-truth single-agent cost by BFS over the explicit time-expanded
// graph, including garage-entry arcs. Independent of the interval-based
// solver; used only as a correctness oracle.
inline std::optional<Cost> oracle_time_expanded(const Graph& g, const Agent& agent,
                                                const ConstraintSet& cons, Time t_now,
                                                Time horizon)
{
  // Any feasible plan has an optimal variant arriving by the time every
  // constraint has lapsed plus one shortest traversal of the graph.
  const Time wait_until = std::max({t_now, agent.start_time, cons.max_time() + 1});
  const Time required = wait_until + g.size();
  if (horizon < required)
    throw std::invalid_argument("oracle_time_expanded: horizon too small (need >= " + std::to_string(required) + ")");

  const int n = g.size();
  const int garage = n;  // virtual vertex for not-yet-entered agents
  std::vector<char> reached(static_cast<size_t>(n + 1) * (horizon + 1), 0);
  auto idx = [&](Time t, int v) { return static_cast<size_t>(t) * (n + 1) + v; };

  std::vector<int> frontier;
  if (agent.in_scene) {
    if (cons.vertex_constrained(agent.current, t_now)) return std::nullopt;
    if (agent.current == agent.goal) return 0;
    reached[idx(t_now, agent.current)] = 1;
    frontier.push_back(agent.current);
  } else {
    reached[idx(t_now, garage)] = 1;
    frontier.push_back(garage);
    if (t_now >= agent.start_time && !cons.vertex_constrained(agent.start, t_now)) {
      if (agent.start == agent.goal) return 0;
      reached[idx(t_now, agent.start)] = 1;
      frontier.push_back(agent.start);
    }
  }

  for (Time t = t_now; t < horizon; ++t) {
    std::vector<int> next;
    for (int v : frontier) {
      if (v == garage) {
        if (!reached[idx(t + 1, garage)]) {
          reached[idx(t + 1, garage)] = 1;
          next.push_back(garage);
        }
        if (t + 1 >= agent.start_time && !cons.vertex_constrained(agent.start, t + 1) &&
            !reached[idx(t + 1, agent.start)]) {
          if (agent.start == agent.goal) return t + 1 - t_now;
          reached[idx(t + 1, agent.start)] = 1;
          next.push_back(agent.start);
        }
        continue;
      }
      for (VertexId u : g.forward_neighbors(v)) {
        if (reached[idx(t + 1, u)]) continue;
        if (cons.vertex_constrained(u, t + 1)) continue;
        if (u != v && cons.edge_constrained(v, u, t + 1)) continue;
        if (u == agent.goal) return t + 1 - t_now;
        reached[idx(t + 1, u)] = 1;
        next.push_back(u);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

// --- joint-state oracle ------------------------------------------------

// Agent status codes inside the joint search.
namespace joint_detail {
constexpr int kDone = -2;
constexpr int kGarage = -1;
}  // namespace joint_detail

// Minimal SOC over all agents by Dijkstra on the joint state space with
// vertex/edge conflict rules, garage entry and disappear-at-goal. Only for
// tiny instances; bounds are enforced.
inline std::optional<Cost> oracle_joint_bfs(const Graph& g, const std::vector<Agent>& agents,
                                            Time t_now, Time horizon)
{
  using namespace joint_detail;
  if (agents.size() > 3) throw std::invalid_argument("oracle_joint_bfs: more than 3 agents");
  if (g.size() > 9) throw std::invalid_argument("oracle_joint_bfs: more than 9 vertices");
  if (horizon > 12) throw std::invalid_argument("oracle_joint_bfs: horizon above 12");

  const int k = static_cast<int>(agents.size());
  if (k == 0) return 0;

  using Statuses = std::vector<int>;  // per agent: kDone | kGarage | vertex id
  struct Node
  {
    Cost cost;
    Time t;
    Statuses st;
    bool operator>(const Node& o) const
    {
      if (cost != o.cost) return cost > o.cost;
      if (t != o.t) return t > o.t;
      return st > o.st;
    }
  };

  auto finished = [&](const Statuses& st) {
    for (int i = 0; i < k; ++i)
      if (st[i] != kDone && !(st[i] >= 0 && st[i] == agents[i].goal)) return false;
    return true;
  };

  auto step_cost = [&](const Statuses& st) {
    Cost c = 0;
    for (int i = 0; i < k; ++i)
      if (st[i] == kGarage || (st[i] >= 0 && st[i] != agents[i].goal)) ++c;
    return c;
  };

  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  std::map<std::pair<Time, Statuses>, Cost> best;

  // Seed every valid combination of garage agents entering at t_now.
  {
    std::vector<int> garage_ids;
    Statuses base(k);
    for (int i = 0; i < k; ++i) {
      if (agents[i].in_scene)
        base[i] = agents[i].current;
      else {
        base[i] = kGarage;
        garage_ids.push_back(i);
      }
    }
    const size_t combos = size_t{1} << garage_ids.size();
    for (size_t mask = 0; mask < combos; ++mask) {
      Statuses st = base;
      bool entry_ok = true;
      for (size_t b = 0; b < garage_ids.size(); ++b)
        if (mask & (size_t{1} << b)) {
          if (agents[garage_ids[b]].start_time > t_now) {
            entry_ok = false;
            break;
          }
          st[garage_ids[b]] = agents[garage_ids[b]].start;
        }
      if (!entry_ok) continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j)
          if (st[i] >= 0 && st[i] == st[j]) ok = false;
      if (!ok) continue;
      auto key = std::make_pair(t_now, st);
      if (!best.count(key)) {
        best[key] = 0;
        open.push({0, t_now, st});
      }
    }
  }

  while (!open.empty()) {
    Node cur = open.top();
    open.pop();
    auto it = best.find({cur.t, cur.st});
    if (it != best.end() && it->second < cur.cost) continue;
    if (finished(cur.st)) return cur.cost;
    if (cur.t >= t_now + horizon) continue;

    const Cost sc = step_cost(cur.st);

    // Enumerate per-agent moves, then take the cross product.
    std::vector<std::vector<int>> moves(k);
    for (int i = 0; i < k; ++i) {
      const int s = cur.st[i];
      if (s == kDone) {
        moves[i] = {kDone};
      } else if (s == kGarage) {
        moves[i] = {kGarage};
        if (cur.t + 1 >= agents[i].start_time) moves[i].push_back(agents[i].start);
      } else if (s == agents[i].goal) {
        moves[i] = {kDone};
      } else {
        for (VertexId u : g.forward_neighbors(s)) moves[i].push_back(u);
      }
    }

    std::vector<size_t> pick(k, 0);
    while (true) {
      Statuses nxt(k);
      for (int i = 0; i < k; ++i) nxt[i] = moves[i][pick[i]];
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (nxt[i] < 0) continue;
        for (int j = i + 1; j < k && ok; ++j) {
          if (nxt[j] < 0) continue;
          if (nxt[i] == nxt[j]) ok = false;  // vertex conflict
          else if (cur.st[i] >= 0 && cur.st[j] >= 0 && cur.st[i] != nxt[i] &&
                   cur.st[j] != nxt[j] && cur.st[i] == nxt[j] && cur.st[j] == nxt[i])
            ok = false;  // edge conflict
        }
      }
      if (ok) {
        const Cost nc = cur.cost + sc;
        auto key = std::make_pair(cur.t + 1, nxt);
        auto bit = best.find(key);
        if (bit == best.end() || bit->second > nc) {
          best[key] = nc;
          open.push({nc, cur.t + 1, nxt});
        }
      }
      int i = 0;
      for (; i < k; ++i) {
        if (++pick[i] < moves[i].size()) break;
        pick[i] = 0;
      }
      if (i == k) break;
    }
  }
  return std::nullopt;
}

}  // namespace omapf
