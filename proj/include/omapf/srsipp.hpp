#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omapf/constraints.hpp"
#include "omapf/domain.hpp"
#include "omapf/graph.hpp"

namespace omapf {

// Search state over a time interval at one vertex. g applies uniformly to
// every time inside [tl, tr].
struct TisRecord
{
  VertexId v = -1;
  Time tl = 0;
  Time tr = 0;
  Cost g = kInfCost;
  Cost h = 0;
  int back = -1;        // next record toward the goal, -1 for goal records
  bool closed = false;
  bool expired = false;  // whole interval lies before the search time
  bool dead = false;     // replaced by fragments after a partial improvement
};

struct OpenEntry
{
  Cost f;
  Cost g;
  Time tl;
  VertexId v;
  int id;
  bool operator<(const OpenEntry& o) const
  {
    if (f != o.f) return f < o.f;
    if (g != o.g) return g > o.g;
    if (tl != o.tl) return tl < o.tl;
    if (v != o.v) return v < o.v;
    return id < o.id;
  }
};

// Persistent per-(agent, constraint set) search state. Reusable across
// successive searches with a later current time; safe intervals and g
// values stay valid because they depend only on the constraint set, the
// goal and the agent's start time.
struct SearchContext
{
  bool initialized = false;
  Time t_s = 0;
  VertexId goal = -1;
  std::vector<TisRecord> recs;
  std::map<VertexId, std::map<Time, int>> by_tl;  // touched vertices only, live records keyed by tl
  std::map<VertexId, char> touched;
  std::set<OpenEntry> open;

  size_t resident_states() const { return recs.size(); }
};

enum class SearchStatus { Found, NoPath, Timeout };

struct SearchResult
{
  SearchStatus status = SearchStatus::NoPath;
  Path path;
  Cost cost = kInfCost;
  long long expansions = 0;
};

struct SearchLimits
{
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

namespace srsipp_detail {

inline Cost h_tis(Time tl, Time t_now, Cost h_vertex)
{
  const Cost wait = tl > t_now ? tl - t_now : 0;
  return std::max(wait, h_vertex);
}

// One-step-back interval of [tl, tr]: departure times from a neighbor that
// land inside it. Empty when the whole interval precedes the start time.
inline std::optional<std::pair<Time, Time>> dummy_son_bounds(Time tl, Time tr, Time t_s)
{
  const Time dl = std::max(t_s, tl - 1);
  const Time dr = sat_dec(tr);
  if (dl > dr) return std::nullopt;
  return std::make_pair(dl, dr);
}

template <class H>
int create_record(SearchContext& ctx, VertexId v, Time tl, Time tr, Cost g, int back,
                  Time t_now, H&& h_v)
{
  const int id = static_cast<int>(ctx.recs.size());
  TisRecord r;
  r.v = v;
  r.tl = tl;
  r.tr = tr;
  r.g = g;
  r.back = back;
  if (g < kInfCost) {
    r.h = h_tis(tl, t_now, h_v(v));
    ctx.open.insert({sat_add(g, r.h), g, tl, v, id});
  }
  ctx.recs.push_back(r);
  ctx.by_tl[v].emplace(tl, id);
  return id;
}

// Lazily build the safe-interval partition of [t_s, inf) at v. Goal
// intervals start at g = 0, everything else at g = inf.
template <class H>
void touch_vertex(SearchContext& ctx, const ConstraintSet& cons, VertexId v, Time t_now, H&& h_v)
{
  if (ctx.touched[v]) return;
  ctx.touched[v] = 1;
  const Cost g0 = v == ctx.goal ? 0 : kInfCost;
  Time lo = ctx.t_s;
  for (Time bad : cons.vertex_times(v)) {
    if (bad < lo) continue;
    if (bad > lo) create_record(ctx, v, lo, bad - 1, g0, -1, t_now, h_v);
    lo = bad + 1;
  }
  create_record(ctx, v, lo, kInfTime, g0, -1, t_now, h_v);
}

// Lower g to c on the part of [a, b] that overlaps live records at v.
// Fully covered records are updated in place; partially covered ones are
// retired and replaced by fragments so each record keeps a single g.
template <class H>
void improve_intervals(SearchContext& ctx, const ConstraintSet& cons, VertexId v, Time a, Time b,
                       Cost c, int parent, Time t_now, H&& h_v)
{
  touch_vertex(ctx, cons, v, t_now, h_v);
  auto& m = ctx.by_tl[v];
  std::vector<int> overlap;
  {
    auto it = m.upper_bound(a);
    if (it != m.begin()) --it;
    for (; it != m.end() && it->first <= b; ++it) {
      const TisRecord& r = ctx.recs[it->second];
      if (r.tr < a) continue;
      overlap.push_back(it->second);
    }
  }
  for (int rid : overlap) {
    const TisRecord snap = ctx.recs[rid];
    if (snap.closed || snap.expired || snap.dead) continue;
    if (snap.g <= c) continue;
    const Time otl = std::max(snap.tl, a);
    const Time otr = std::min(snap.tr, b);
    if (otl > otr) continue;
    if (snap.g < kInfCost)
      ctx.open.erase({sat_add(snap.g, snap.h), snap.g, snap.tl, snap.v, rid});
    if (otl == snap.tl && otr == snap.tr) {
      TisRecord& r = ctx.recs[rid];
      r.g = c;
      r.back = parent;
      r.h = h_tis(r.tl, t_now, h_v(v));
      ctx.open.insert({sat_add(c, r.h), c, r.tl, v, rid});
    } else {
      ctx.recs[rid].dead = true;
      m.erase(snap.tl);
      if (otl > snap.tl) create_record(ctx, v, snap.tl, otl - 1, snap.g, snap.back, t_now, h_v);
      create_record(ctx, v, otl, otr, c, parent, t_now, h_v);
      if (otr < snap.tr) create_record(ctx, v, otr + 1, snap.tr, snap.g, snap.back, t_now, h_v);
    }
  }
}

inline Path build_path(const SearchContext& ctx, const Graph& g, int cand, Time entry)
{
  Path p;
  p.start_time = entry;
  int id = cand;
  Time t = entry;
  while (true) {
    const TisRecord& r = ctx.recs[id];
    assert(t >= r.tl && t <= r.tr);
    (void)t;
    if (!p.vertices.empty()) {
      const VertexId prev = p.vertices.back();
      assert(prev == r.v || g.has_edge(prev, r.v));
    }
    p.vertices.push_back(r.v);
    if (r.back < 0) {
      assert(r.v == ctx.goal);
      break;
    }
    id = r.back;
    ++t;
  }
  (void)g;
  return p;
}

}  // namespace srsipp_detail

// Backward interval-space A* from the goal. Finds a minimum-cost plan for
// one agent from time t_now under cons, where cost is arrival minus t_now
// (garage waiting after t_now included). ctx may be reused across calls
// with the same constraint set and a non-decreasing t_now.
template <class H>
SearchResult srsipp_search(SearchContext& ctx, const Graph& g, const Agent& agent,
                           const ConstraintSet& cons, Time t_now, H&& h_v,
                           const SearchLimits& lim = {})
{
  using namespace srsipp_detail;

  if (!ctx.initialized) {
    ctx.initialized = true;
    ctx.t_s = agent.start_time;
    ctx.goal = agent.goal;
    ctx.touched.clear();
    ctx.by_tl.clear();
  }
  assert(ctx.goal == agent.goal && ctx.t_s == agent.start_time);

  SearchResult res;
  const VertexId cur = agent.plan_vertex();

  if (agent.in_scene && cons.vertex_constrained(cur, t_now)) {
    res.status = SearchStatus::NoPath;
    return res;
  }

  // A reused context was built against an older current time and start
  // vertex; every open record's h must be refreshed before ordering by f.
  {
    std::set<OpenEntry> fresh;
    for (const OpenEntry& e : ctx.open) {
      TisRecord& r = ctx.recs[e.id];
      r.h = h_tis(r.tl, t_now, h_v(r.v));
      fresh.insert({sat_add(r.g, r.h), r.g, r.tl, r.v, e.id});
    }
    ctx.open.swap(fresh);
  }
  touch_vertex(ctx, cons, ctx.goal, t_now, h_v);

  int loop = 0;
  while (true) {
    if (lim.deadline && (++loop & 63) == 0 &&
        std::chrono::steady_clock::now() > *lim.deadline) {
      res.status = SearchStatus::Timeout;
      return res;
    }

    const Cost f_min = ctx.open.empty() ? kInfCost : ctx.open.begin()->f;

    // Termination test against closed records at the agent's position.
    if (ctx.touched[cur]) {
      if (agent.in_scene) {
        for (const auto& [tl, rid] : ctx.by_tl[cur]) {
          if (tl > t_now) break;
          const TisRecord& r = ctx.recs[rid];
          if (!r.closed || r.g >= kInfCost || r.tr < t_now) continue;
          res.status = SearchStatus::Found;
          res.path = build_path(ctx, g, rid, t_now);
          res.cost = res.path.cost(t_now);
          return res;
        }
      } else {
        Cost best_cost = kInfCost;
        Time best_tl = kInfTime;
        int best_id = -1;
        for (const auto& [tl, rid] : ctx.by_tl[cur]) {
          const TisRecord& r = ctx.recs[rid];
          if (!r.closed || r.g >= kInfCost || r.tr < t_now) continue;
          const Cost c = (tl > t_now ? tl - t_now : 0) + r.g;
          if (c < best_cost || (c == best_cost && tl < best_tl)) {
            best_cost = c;
            best_tl = tl;
            best_id = rid;
          }
        }
        if (best_id >= 0 && best_cost <= f_min) {
          const Time entry = std::max(ctx.recs[best_id].tl, t_now);
          res.status = SearchStatus::Found;
          res.path = build_path(ctx, g, best_id, entry);
          res.cost = res.path.cost(t_now);
          return res;
        }
      }
    }

    if (ctx.open.empty() || f_min >= kInfCost) {
      res.status = SearchStatus::NoPath;
      return res;
    }

    const OpenEntry top = *ctx.open.begin();
    ctx.open.erase(ctx.open.begin());
    {
      TisRecord& r = ctx.recs[top.id];
      assert(!r.closed && !r.dead);
      if (r.tr < t_now) {
        r.expired = true;  // unusable now and at any later replanning time
        continue;
      }
      r.closed = true;
    }
    ++res.expansions;

    const TisRecord s = ctx.recs[top.id];
    const auto span = srsipp_detail::dummy_son_bounds(s.tl, s.tr, ctx.t_s);
    if (!span) continue;
    const auto [dl, dr] = *span;
    const Cost c = s.g + 1;

    for (VertexId u : g.backward_neighbors(s.v)) {
      if (u == s.v) {
        improve_intervals(ctx, cons, u, dl, dr, c, top.id, t_now, h_v);
        continue;
      }
      // Departure times killed by edge constraints arriving at s.v.
      Time lo = dl;
      bool done = false;
      for (Time ta : cons.edge_arrival_times(u, s.v)) {
        const Time dep = ta - 1;
        if (dep < lo) continue;
        if (dep > dr) break;
        if (dep > lo) improve_intervals(ctx, cons, u, lo, dep - 1, c, top.id, t_now, h_v);
        if (dep == dr) {
          done = true;
          break;
        }
        lo = dep + 1;
      }
      if (!done && lo <= dr) improve_intervals(ctx, cons, u, lo, dr, c, top.id, t_now, h_v);
    }
  }
}

// Fresh-context run; the restartable solver reduced to plain interval A*.
template <class H>
SearchResult rsipp_search(const Graph& g, const Agent& agent, const ConstraintSet& cons,
                          Time t_now, H&& h_v, const SearchLimits& lim = {})
{
  SearchContext ctx;
  return srsipp_search(ctx, g, agent, cons, t_now, h_v, lim);
}

// Per-vertex interval table, one line per live record, for golden-file tests.
template <class H>
std::string dump_context(const SearchContext& ctx, Time t_now, H&& h_v)
{
  std::ostringstream out;
  out << "t_s=" << ctx.t_s << " goal=" << ctx.goal << " t_now=" << t_now << "\n";
  for (const auto& [v, ivs] : ctx.by_tl) {
    if (ivs.empty()) continue;
    out << "v" << v << ":\n";
    for (const auto& [tl, id] : ivs) {
      const TisRecord& r = ctx.recs[id];
      out << "  [" << r.tl << ",";
      if (r.tr >= kInfTime)
        out << "inf";
      else
        out << r.tr;
      out << "] g=";
      if (r.g >= kInfCost)
        out << "inf";
      else
        out << r.g;
      const Cost h = srsipp_detail::h_tis(r.tl, t_now, h_v(r.v));
      out << " h=" << h;
      out << " f=";
      if (r.g >= kInfCost)
        out << "inf";
      else
        out << r.g + h;
      if (r.closed) out << " closed";
      if (r.expired) out << " expired";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace omapf
