#pragma once

#include <cassert>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omapf/constraints.hpp"
#include "omapf/graph.hpp"

namespace omapf {

// An agent is described by (t^s, v^s, v^g). Until it enters the scene it
// waits in the garage, occupying nothing and conflicting with no one.
struct Agent
{
  int id = -1;
  Time start_time = 0;    // t^s
  VertexId start = -1;    // v^s
  VertexId goal = -1;     // v^g
  bool in_scene = false;
  VertexId current = -1;  // v^c, meaningful only when in_scene

  // Vertex the low-level search plans from: v^c in scene, v^s in garage.
  VertexId plan_vertex() const { return in_scene ? current : start; }
};

// A timed vertex sequence: vertices[i] is occupied at start_time + i.
// Garage waiting before start_time is implicit.
struct Path
{
  Time start_time = 0;
  std::vector<VertexId> vertices;

  bool empty() const { return vertices.empty(); }
  Time arrival_time() const { return start_time + static_cast<Time>(vertices.size()) - 1; }
  bool occupies_at(Time t) const { return t >= start_time && t <= arrival_time(); }
  VertexId at(Time t) const { return vertices[static_cast<size_t>(t - start_time)]; }

  // Per-iteration cost: goal-arrival time minus the replanning time point,
  // garage waiting after t^c included.
  Cost cost(Time t_now) const
  {
    assert(!vertices.empty());
    return arrival_time() - t_now;
  }

  bool operator==(const Path& o) const { return start_time == o.start_time && vertices == o.vertices; }
};

// All path plans produced by one replanning iteration.
using PlanSnapshot = std::map<int, Path>;

struct Conflict
{
  enum class Kind : uint8_t { Vertex = 0, Edge = 1 };

  Kind kind = Kind::Vertex;
  Time time = 0;
  int agent_a = -1;  // agent_a < agent_b
  int agent_b = -1;
  VertexId vertex = -1;  // Vertex kind
  VertexId from = -1;    // Edge kind: agent_a moved from->to arriving at `time`
  VertexId to = -1;
};

// Earliest conflict in a snapshot, or nullopt if conflict-free. Agents in
// the garage or disappeared at their goal occupy nothing. Ties at equal
// time break toward the lower agent-id pair, vertex before edge.
inline std::optional<Conflict> find_earliest_conflict(const PlanSnapshot& paths)
{
  std::vector<const std::pair<const int, Path>*> items;
  items.reserve(paths.size());
  Time t_min = kInfTime, t_max = 0;
  for (const auto& kv : paths) {
    if (kv.second.empty()) continue;
    items.push_back(&kv);
    t_min = std::min(t_min, kv.second.start_time);
    t_max = std::max(t_max, kv.second.arrival_time());
  }
  for (Time t = t_min; t <= t_max; ++t) {
    for (size_t i = 0; i < items.size(); ++i) {
      const auto& [ida, pa] = *items[i];
      if (!pa.occupies_at(t)) continue;
      for (size_t j = i + 1; j < items.size(); ++j) {
        const auto& [idb, pb] = *items[j];
        if (!pb.occupies_at(t)) continue;
        if (pa.at(t) == pb.at(t)) {
          Conflict c;
          c.kind = Conflict::Kind::Vertex;
          c.time = t;
          c.agent_a = ida;
          c.agent_b = idb;
          c.vertex = pa.at(t);
          return c;
        }
        if (pa.occupies_at(t - 1) && pb.occupies_at(t - 1) && pa.at(t - 1) != pa.at(t) &&
            pa.at(t - 1) == pb.at(t) && pa.at(t) == pb.at(t - 1)) {
          Conflict c;
          c.kind = Conflict::Kind::Edge;
          c.time = t;
          c.agent_a = ida;
          c.agent_b = idb;
          c.from = pa.at(t - 1);
          c.to = pa.at(t);
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

// Number of collision times between two paths, under the same occupancy
// rules as find_earliest_conflict. Each time step counts at most once per
// pair, vertex collisions taking precedence over swaps.
inline int count_conflicts(const Path& pa, const Path& pb)
{
  if (pa.empty() || pb.empty()) return 0;
  const Time lo = std::max(pa.start_time, pb.start_time);
  const Time hi = std::min(pa.arrival_time(), pb.arrival_time());
  int n = 0;
  for (Time t = lo; t <= hi; ++t) {
    if (!pa.occupies_at(t) || !pb.occupies_at(t)) continue;
    if (pa.at(t) == pb.at(t)) {
      ++n;
      continue;
    }
    if (pa.occupies_at(t - 1) && pb.occupies_at(t - 1) && pa.at(t - 1) != pa.at(t) &&
        pa.at(t - 1) == pb.at(t) && pa.at(t) == pb.at(t - 1))
      ++n;
  }
  return n;
}

// Standard CBS split: one constraint per conflicting agent.
inline std::vector<std::pair<int, Constraint>> split_conflict(const Conflict& c)
{
  std::vector<std::pair<int, Constraint>> out;
  if (c.kind == Conflict::Kind::Vertex) {
    out.emplace_back(c.agent_a, Constraint::vertex_at(c.vertex, c.time));
    out.emplace_back(c.agent_b, Constraint::vertex_at(c.vertex, c.time));
  } else {
    out.emplace_back(c.agent_a, Constraint::edge_arriving(c.from, c.to, c.time));
    out.emplace_back(c.agent_b, Constraint::edge_arriving(c.to, c.from, c.time));
  }
  return out;
}

// Sum-of-cost of a snapshot at replanning time t_now.
inline Cost soc(const PlanSnapshot& paths, Time t_now)
{
  Cost total = 0;
  for (const auto& [id, p] : paths) {
    if (p.empty()) throw std::logic_error("soc: agent " + std::to_string(id) + " has an empty path");
    total += p.cost(t_now);
  }
  return total;
}

// The spliced actual trajectory of one agent across replanning iterations.
struct ExecTrack
{
  Time entry_time = 0;
  std::vector<VertexId> vertices;

  Time arrival_time() const { return entry_time + static_cast<Time>(vertices.size()) - 1; }
  bool occupies_at(Time t) const { return !vertices.empty() && t >= entry_time && t <= arrival_time(); }
  VertexId at(Time t) const { return vertices[static_cast<size_t>(t - entry_time)]; }

  Path as_path() const
  {
    Path p;
    p.start_time = entry_time;
    p.vertices = vertices;
    return p;
  }
};

using ExecutePlan = std::map<int, ExecTrack>;

// Replaces the portion of an agent's track from time t onward with `p`.
// If the agent has not entered the scene by t (entry_time >= t after the
// previous plan), the whole track is replaced, re-deciding the entry.
inline void splice_track(ExecTrack& track, Time t, const Path& p)
{
  if (track.vertices.empty() || track.entry_time >= t) {
    track.entry_time = p.start_time;
    track.vertices = p.vertices;
    return;
  }
  assert(p.start_time == t);
  const size_t keep = static_cast<size_t>(t - track.entry_time);
  assert(keep <= track.vertices.size());
  track.vertices.resize(keep);
  track.vertices.insert(track.vertices.end(), p.vertices.begin(), p.vertices.end());
}

// Scenario file: one agent per line, `t_s x_s y_s x_g y_g`.
struct ScenarioEntry
{
  Time start_time;
  int sx, sy, gx, gy;
};

inline std::vector<ScenarioEntry> parse_scenario(std::istream& in)
{
  std::vector<ScenarioEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ScenarioEntry e{};
    if (!(ss >> e.start_time >> e.sx >> e.sy >> e.gx >> e.gy))
      throw std::runtime_error("scenario parse error at line " + std::to_string(lineno) + ": expected 't_s x_s y_s x_g y_g'");
    std::string rest;
    if (ss >> rest)
      throw std::runtime_error("scenario parse error at line " + std::to_string(lineno) + ": trailing tokens");
    if (e.start_time < 0)
      throw std::runtime_error("scenario parse error at line " + std::to_string(lineno) + ": negative start time");
    out.push_back(e);
  }
  return out;
}

inline std::vector<ScenarioEntry> load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in);
}

inline void write_scenario(std::ostream& out, const std::vector<ScenarioEntry>& entries)
{
  for (const auto& e : entries)
    out << e.start_time << " " << e.sx << " " << e.sy << " " << e.gx << " " << e.gy << "\n";
}

inline std::vector<Agent> agents_from_scenario(const GridMap& map, const std::vector<ScenarioEntry>& entries)
{
  std::vector<Agent> agents;
  agents.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!map.in_bounds(e.sx, e.sy) || !map.in_bounds(e.gx, e.gy))
      throw std::runtime_error("scenario agent " + std::to_string(i) + ": cell out of bounds");
    if (map.is_blocked(e.sx, e.sy) || map.is_blocked(e.gx, e.gy))
      throw std::runtime_error("scenario agent " + std::to_string(i) + ": start or goal blocked");
    Agent a;
    a.start_time = e.start_time;
    a.start = map.vertex(e.sx, e.sy);
    a.goal = map.vertex(e.gx, e.gy);
    agents.push_back(a);
  }
  std::stable_sort(agents.begin(), agents.end(),
                   [](const Agent& a, const Agent& b) { return a.start_time < b.start_time; });
  for (size_t i = 0; i < agents.size(); ++i) agents[i].id = static_cast<int>(i);
  return agents;
}

}  // namespace omapf
