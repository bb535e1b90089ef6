// Acceptance gate. Each criterion prints exactly one PASS/FAIL line; the
// process exits 0 only if every requested criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "omapf/omapf.hpp"

namespace {

using namespace omapf;
using Clock = std::chrono::steady_clock;

struct CheckResult
{
  bool pass = true;
  std::string detail;
};

CheckResult fail(std::string why)
{
  return {false, std::move(why)};
}

// ---- randomized single-agent search cases ---------------------------------

struct SearchCase
{
  GridMap map{1, 1};
  Graph g;
  Agent agent;
  ConstraintSet cons;
  Time t_now = 0;
};

// Grids up to 7x7 with scattered obstacles, an in-scene or garage agent, and
// random vertex/edge constraints. Unreachable goals and blocked current
// positions are left in on purpose: both sides must agree on "no path" too.
SearchCase random_search_case(std::mt19937_64& rng, bool want_room)
{
  for (;;) {
    SearchCase c;
    const int w = (want_room ? 4 : 2) + rng_below(rng, want_room ? 4 : 6);
    const int h = (want_room ? 4 : 2) + rng_below(rng, want_room ? 4 : 6);
    c.map = GridMap(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (rng_below(rng, 5) == 0) c.map.set_blocked(x, y, true);

    std::vector<VertexId> free;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (!c.map.blocked[c.map.vertex(x, y)]) free.push_back(c.map.vertex(x, y));
    if (free.size() < 2) continue;
    c.g = c.map.to_graph();

    c.agent.id = 0;
    c.agent.start = free[rng_below(rng, static_cast<int>(free.size()))];
    do {
      c.agent.goal = free[rng_below(rng, static_cast<int>(free.size()))];
    } while (c.agent.goal == c.agent.start);
    c.agent.current = c.agent.start;
    c.t_now = rng_below(rng, 6);
    if (rng_below(rng, 2) == 0) {
      c.agent.in_scene = true;
      c.agent.start_time = 0;
    } else {
      c.agent.in_scene = false;
      c.agent.start_time = rng_below(rng, 7);
    }

    const int nv = rng_below(rng, 7);
    for (int i = 0; i < nv; ++i)
      c.cons.insert(Constraint::vertex_at(free[rng_below(rng, static_cast<int>(free.size()))],
                                          rng_below(rng, 13)));
    const int ne = rng_below(rng, 4);
    for (int i = 0; i < ne; ++i) {
      const VertexId u = free[rng_below(rng, static_cast<int>(free.size()))];
      const auto& succ = c.g.successors(u);
      if (succ.empty()) continue;
      const VertexId v = succ[rng_below(rng, static_cast<int>(succ.size()))];
      c.cons.insert(Constraint::edge_arriving(u, v, 1 + rng_below(rng, 12)));
    }

    if (want_room) {
      const auto dist = distances_from(c.g, c.agent.start);
      if (is_inf(dist[c.agent.goal]) || dist[c.agent.goal] < 7) continue;
    }
    return c;
  }
}

std::function<Cost(VertexId)> choose_h(const SearchCase& c, std::mt19937_64& rng)
{
  if (c.g.has_coords() && rng_below(rng, 2) == 0) {
    const Graph* g = &c.g;
    const VertexId from = c.agent.plan_vertex();
    return [g, from](VertexId v) { return manhattan_h(*g, from, v); };
  }
  auto dist = std::make_shared<std::vector<Cost>>(distances_from(c.g, c.agent.plan_vertex()));
  return [dist](VertexId v) { return (*dist)[v]; };
}

Time oracle_horizon(const SearchCase& c)
{
  return std::max({c.t_now, c.agent.start_time, c.cons.max_time() + 1}) + c.g.size();
}

// Full structural validity of a single-agent result against its inputs.
std::string check_path(const Graph& g, const Agent& a, const ConstraintSet& cons, Time t_now,
                       const SearchResult& res)
{
  const Path& p = res.path;
  if (p.vertices.empty()) return "empty path";
  if (p.start_time < a.start_time) return "path enters before the start time";
  if (a.in_scene && (p.start_time != t_now || p.vertices.front() != a.current))
    return "in-scene path must begin now at the current vertex";
  if (!a.in_scene && (p.start_time < t_now || p.vertices.front() != a.start))
    return "garage path must enter at the start vertex, not in the past";
  if (p.vertices.back() != a.goal) return "path must end at the goal";
  if (p.arrival_time() - t_now != res.cost) return "cost disagrees with the arrival time";
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    const VertexId u = p.vertices[i - 1], v = p.vertices[i];
    if (u != v && !g.has_edge(u, v)) return "path uses a nonexistent edge";
  }
  if (!path_satisfies(p, cons)) return "path violates its constraints";
  return {};
}

// ---- randomized online instances -------------------------------------------

struct OnlineInstance
{
  GridMap map{1, 1};
  Graph g;
  std::vector<Agent> agents;
};

Agent garage_agent(int id, Time t_s, VertexId start, VertexId goal)
{
  Agent a;
  a.id = id;
  a.start_time = t_s;
  a.start = start;
  a.goal = goal;
  a.in_scene = false;
  a.current = start;
  return a;
}

// At most 9 cells, 3 agents and 2 arrival waves; goals always reachable.
OnlineInstance random_tiny_instance(std::mt19937_64& rng)
{
  for (;;) {
    GridMap m(3, 3);
    const int nb = rng_below(rng, 3);
    for (int i = 0; i < nb; ++i) m.set_blocked(rng_below(rng, 3), rng_below(rng, 3), true);

    std::vector<VertexId> free;
    for (VertexId v = 0; v < 9; ++v)
      if (!m.blocked[v]) free.push_back(v);
    if (free.size() < 4) continue;
    Graph g = m.to_graph();

    const int k = 1 + rng_below(rng, 3);
    std::set<std::pair<Time, VertexId>> used;
    std::vector<Agent> agents;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      ok = false;
      for (int tries = 0; tries < 60; ++tries) {
        const Time t = rng_below(rng, 2);
        const VertexId s = free[rng_below(rng, static_cast<int>(free.size()))];
        if (!used.count({t, s})) {
          const auto dist = distances_from(g, s);
          std::vector<VertexId> goals;
          for (VertexId v : free)
            if (v != s && !is_inf(dist[v])) goals.push_back(v);
          if (goals.empty()) continue;
          used.insert({t, s});
          agents.push_back(
              garage_agent(i, t, s, goals[rng_below(rng, static_cast<int>(goals.size()))]));
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    return {std::move(m), std::move(g), std::move(agents)};
  }
}

// Open 8x8 grid, up to 6 agents, arrivals spread over up to 6 waves.
OnlineInstance random_medium_instance(std::mt19937_64& rng)
{
  GridMap m = make_open_grid(8, 8);
  Graph g = m.to_graph();
  const int k = 2 + rng_below(rng, 5);
  std::set<std::pair<Time, VertexId>> used;
  std::vector<Agent> agents;
  for (int i = 0; i < k; ++i) {
    for (;;) {
      const Time t = rng_below(rng, 6);
      const VertexId s = rng_below(rng, 64);
      if (!used.insert({t, s}).second) continue;
      VertexId goal;
      do {
        goal = rng_below(rng, 64);
      } while (goal == s);
      agents.push_back(garage_agent(i, t, s, goal));
      break;
    }
  }
  return {std::move(m), std::move(g), std::move(agents)};
}

// ---- criterion 1: single-agent optimality vs the time-expanded oracle ------

CheckResult criterion1()
{
  std::mt19937_64 rng(101);
  const int kCases = 1100;
  int with_path = 0;
  for (int i = 0; i < kCases; ++i) {
    const SearchCase c = random_search_case(rng, false);
    const auto h = choose_h(c, rng);
    const SearchResult got = rsipp_search(c.g, c.agent, c.cons, c.t_now, h);
    const auto want = oracle_time_expanded(c.g, c.agent, c.cons, c.t_now, oracle_horizon(c));

    std::ostringstream tag;
    tag << "case " << i << " (" << (c.agent.in_scene ? "in-scene" : "garage") << ", t="
        << c.t_now << ")";
    if ((got.status == SearchStatus::Found) != want.has_value())
      return fail(tag.str() + ": solver and oracle disagree on feasibility");
    if (got.status == SearchStatus::Found) {
      if (got.cost != *want) {
        tag << ": cost " << got.cost << " vs oracle " << *want;
        return fail(tag.str());
      }
      const std::string err = check_path(c.g, c.agent, c.cons, c.t_now, got);
      if (!err.empty()) return fail(tag.str() + ": " + err);
      ++with_path;
    }
  }
  std::ostringstream d;
  d << kCases << " random searches match the time-expanded oracle exactly (" << with_path
    << " with a path, " << kCases - with_path << " infeasible)";
  return {true, d.str()};
}

// ---- criterion 2: resumed searches equal fresh searches along a rollout ----

CheckResult criterion2()
{
  std::mt19937_64 rng(202);
  const int kSequences = 210;
  int done = 0;
  long long resumed_exp = 0, fresh_exp = 0;
  int attempts = 0;
  while (done < kSequences) {
    if (++attempts > 20 * kSequences) return fail("sequence generation starved");
    const SearchCase c = random_search_case(rng, true);
    const std::string key = c.cons.canonical_key();
    PlanningContext store;
    Agent a = c.agent;
    Time t = c.t_now;
    const int target = 3 + rng_below(rng, 3);
    int advances = 0;
    bool bad_case = false;

    for (int step = 0; step <= target; ++step) {
      const auto dist = distances_from(c.g, a.plan_vertex());
      const auto h = [&dist](VertexId v) { return dist[v]; };

      SearchContext ctx = store.checkout(a.id, key);
      const SearchResult kept = srsipp_search(ctx, c.g, a, c.cons, t, h);
      store.put_back(a.id, key, std::move(ctx));
      const SearchResult fresh = rsipp_search(c.g, a, c.cons, t, h);

      if (kept.status != fresh.status) {
        std::ostringstream d;
        d << "sequence " << done << " step " << step << ": resumed status differs from fresh";
        return fail(d.str());
      }
      if (kept.status != SearchStatus::Found) {
        bad_case = step == 0;  // later steps cannot lose the suffix witness
        if (!bad_case) return fail("a reachable rollout state became unreachable");
        break;
      }
      if (kept.cost != fresh.cost) {
        std::ostringstream d;
        d << "sequence " << done << " step " << step << ": resumed cost " << kept.cost
          << " differs from fresh cost " << fresh.cost;
        return fail(d.str());
      }
      const std::string err = check_path(c.g, a, c.cons, t, kept);
      if (!err.empty()) return fail("resumed path invalid: " + err);
      resumed_exp += kept.expansions;
      fresh_exp += fresh.expansions;

      if (step == target) break;
      const Time tn = t + 1;
      if (tn >= kept.path.arrival_time()) {
        bad_case = true;  // path too short for the wanted number of advances
        break;
      }
      if (tn >= kept.path.start_time) {
        a.in_scene = true;
        a.current = kept.path.at(tn);
      }
      t = tn;
      ++advances;
    }
    if (!bad_case && advances >= 3) ++done;
  }
  std::ostringstream d;
  d << kSequences << " rollouts of 3-5 replans match fresh searches; " << resumed_exp
    << " resumed vs " << fresh_exp << " fresh expansions";
  return {true, d.str()};
}

// ---- criterion 3: snapshot optimality ---------------------------------------

// Different variants may pick different equally-optimal plans, and the chosen
// plan decides where agents stand when the next wave arrives, so two runs of
// the same instance can legitimately commit different costs in later
// iterations. What holds for every variant is snapshot optimality: each
// committed iteration cost equals the optimal cost of that iteration's own
// snapshot. Tiny snapshots are checked against a brute-force joint search,
// medium ones against a fresh conflict-tree re-solve of the same snapshot.

constexpr Variant kAllVariants[4] = {Variant::A1, Variant::A2, Variant::A3, Variant::A4};

CheckResult criterion3()
{
  std::mt19937_64 rng(303);

  const int kTiny = 210;
  int tiny_done = 0, guard = 0;
  long long tiny_iters = 0;
  while (tiny_done < kTiny) {
    if (++guard > 80 * kTiny) return fail("tiny instance generation starved");
    const OnlineInstance inst = random_tiny_instance(rng);

    std::vector<RunOutcome> outs;
    bool in_bounds = true;
    for (Variant v : kAllVariants) {
      SolverConfig cfg;
      cfg.variant = v;
      cfg.time_limit_s = 10.0;
      RunOutcome out = run_online(inst.g, inst.agents, cfg);
      if (out.status != RunStatus::Success)
        return fail("a tiny reachable instance was not solved by " +
                    std::string(variant_name(v)));
      Time max_arrival = 0;
      for (const auto& [id, tr] : out.exec)
        max_arrival = std::max(max_arrival, tr.as_path().arrival_time());
      Cost max_soc = 0;
      for (const IterationStats& it : out.iterations) max_soc = std::max(max_soc, it.soc);
      if (max_arrival > 10 || max_soc > 10) {  // outside the certified oracle horizon
        in_bounds = false;
        break;
      }
      outs.push_back(std::move(out));
    }
    if (!in_bounds) continue;

    for (size_t v = 0; v < outs.size(); ++v) {
      const RunOutcome& out = outs[v];
      for (size_t i = 0; i < out.iterations.size(); ++i) {
        const auto want =
            oracle_joint_bfs(inst.g, out.snapshot_agents[i], out.iterations[i].t, 12);
        if (!want) return fail("joint oracle found no plan where the solver did");
        if (*want != out.iterations[i].soc) {
          std::ostringstream d;
          d << "tiny instance " << tiny_done << " iteration " << i << ": "
            << variant_name(kAllVariants[v]) << " committed " << out.iterations[i].soc
            << " vs oracle " << *want;
          return fail(d.str());
        }
        ++tiny_iters;
      }
      const auto problems = audit_execute_plan(inst.g, inst.agents, out.exec);
      if (!problems.empty()) return fail("tiny audit: " + problems.front());
    }
    ++tiny_done;
  }

  const int kMedium = 510;
  int medium_done = 0, skipped = 0;
  long long medium_iters = 0;
  while (medium_done < kMedium) {
    const OnlineInstance inst = random_medium_instance(rng);
    bool usable = true;
    for (Variant v : kAllVariants) {
      SolverConfig cfg;
      cfg.variant = v;
      cfg.time_limit_s = 10.0;
      const RunOutcome out = run_online(inst.g, inst.agents, cfg);
      if (out.status != RunStatus::Success) {
        usable = false;
        break;
      }
      const auto problems = audit_execute_plan(inst.g, inst.agents, out.exec);
      if (!problems.empty()) return fail("medium audit: " + problems.front());

      for (size_t i = 0; i < out.iterations.size(); ++i) {
        SolverConfig ref_cfg;
        ref_cfg.variant = Variant::A2;
        SearchLimits lim;
        lim.deadline = Clock::now() + std::chrono::seconds(10);
        const ScbsResult ref = solve_snapshot(inst.g, out.snapshot_agents[i],
                                              out.iterations[i].t, ref_cfg, nullptr, nullptr, lim);
        if (ref.status == SolveStatus::Timeout) {
          usable = false;
          break;
        }
        if (ref.status != SolveStatus::Solved)
          return fail("a fresh re-solve failed on a snapshot the variant solved");
        const Cost opt = soc(ref.paths, out.iterations[i].t);
        if (opt != out.iterations[i].soc) {
          std::ostringstream d;
          d << "medium instance " << medium_done << " iteration " << i << ": "
            << variant_name(v) << " committed " << out.iterations[i].soc
            << " but the snapshot optimum is " << opt;
          return fail(d.str());
        }
        ++medium_iters;
      }
      if (!usable) break;
    }
    if (!usable) {
      if (++skipped > 25) return fail("too many medium instances hit the solve limit");
      continue;
    }
    ++medium_done;
  }

  std::ostringstream d;
  d << tiny_done << " tiny instances: every variant's committed costs equal the joint oracle ("
    << tiny_iters << " iterations); " << medium_done
    << " medium instances: every variant's committed costs equal a fresh optimal re-solve ("
    << medium_iters << " iterations, " << skipped << " skipped)";
  return {true, d.str()};
}

// ---- criterion 4: the stop rule never hides a better terminal ---------------

Graph add_sentinel(const Graph& g)
{
  Graph out(g.size() + 1);
  for (VertexId v = 0; v < g.size(); ++v)
    for (VertexId u : g.successors(v)) out.add_edge(v, u);
  out.finalize();
  return out;
}

CheckResult criterion4()
{
  std::mt19937_64 rng(404);
  const int kCases = 520;
  int with_path = 0;
  for (int i = 0; i < kCases; ++i) {
    const SearchCase c = random_search_case(rng, false);
    const auto h = choose_h(c, rng);
    const SearchResult got = rsipp_search(c.g, c.agent, c.cons, c.t_now, h);

    // Same search from an unreachable current vertex: the stop rule can never
    // fire, OPEN drains completely, and the finished partition lists every
    // terminal candidate the stopped search could still have reached.
    const Graph gx = add_sentinel(c.g);
    Agent probe = c.agent;
    probe.in_scene = true;
    probe.start = probe.current = static_cast<VertexId>(c.g.size());
    SearchContext drained;
    const auto zero = [](VertexId) { return Cost{0}; };
    const SearchResult full = srsipp_search(drained, gx, probe, c.cons, c.t_now, zero);
    if (full.status == SearchStatus::Found) return fail("drained search reached the sentinel");

    Cost best = kInfCost;
    const VertexId home = c.agent.plan_vertex();
    for (const auto& [tl, idx] : drained.by_tl[home]) {
      const TisRecord& r = drained.recs[idx];
      if (r.dead || is_inf(r.g)) continue;
      if (c.agent.in_scene) {
        if (r.tl <= c.t_now && c.t_now <= r.tr) best = std::min(best, r.g);
      } else if (r.tr >= c.t_now) {
        best = std::min(best, std::max(r.tl - c.t_now, 0) + r.g);
      }
    }

    std::ostringstream tag;
    tag << "case " << i;
    if (got.status == SearchStatus::Found) {
      if (best < got.cost) {
        tag << ": draining OPEN found a terminal of cost " << best << " below the returned "
            << got.cost;
        return fail(tag.str());
      }
      if (best > got.cost) {
        tag << ": returned cost " << got.cost << " is absent from the drained partition";
        return fail(tag.str());
      }
      ++with_path;
    } else if (!is_inf(best)) {
      return fail(tag.str() + ": search reported no path but a terminal exists");
    }
  }
  std::ostringstream d;
  d << kCases << " drained searches (" << with_path
    << " with a path) never beat the stop rule's result";
  return {true, d.str()};
}

// ---- criterion 5: stored interval costs equal point costs -------------------

CheckResult criterion5()
{
  std::mt19937_64 rng(505);
  const int kSearches = 110;
  long long checks = 0;
  for (int i = 0; i < kSearches; ++i) {
    const SearchCase c = random_search_case(rng, false);
    const auto dist = distances_from(c.g, c.agent.plan_vertex());
    const auto h = [&dist](VertexId v) { return dist[v]; };
    SearchContext ctx;
    (void)srsipp_search(ctx, c.g, c.agent, c.cons, c.t_now, h);

    int budget = 300;
    for (const TisRecord& r : ctx.recs) {
      if (budget <= 0) break;
      if (!r.closed || r.dead || is_inf(r.g)) continue;
      const Time hi = std::min(r.tr, r.tl + 5);
      for (Time t = r.tl; t <= hi && budget > 0; --budget, ++t, ++checks) {
        Agent probe;
        probe.id = 0;
        probe.start_time = 0;
        probe.in_scene = true;
        probe.start = probe.current = r.v;
        probe.goal = c.agent.goal;
        const Time horizon = std::max({t, c.cons.max_time() + 1}) + c.g.size();
        const auto want = oracle_time_expanded(c.g, probe, c.cons, t, horizon);
        if (!want || *want != r.g) {
          std::ostringstream d;
          d << "search " << i << ": interval [" << r.tl << ","
            << (is_inf(r.tr) ? -1 : r.tr) << "] at v" << r.v << " stores g=" << r.g
            << " but the point cost at t=" << t << " is "
            << (want ? std::to_string(*want) : std::string("unreachable"));
          return fail(d.str());
        }
      }
    }
  }
  std::ostringstream d;
  d << kSearches << " searches; " << checks
    << " sampled points inside closed intervals equal the stored costs";
  return {true, d.str()};
}

// ---- criterion 6: efficiency reproduction on the 32x32 benchmark ------------

CheckResult criterion6()
{
  const GridMap map = make_open_grid(32, 32);
  const Graph g = map.to_graph();
  std::mt19937_64 rng(606);

  const Variant vs[3] = {Variant::A1, Variant::A2, Variant::A4};
  struct Rec
  {
    int k;
    double time[3];
    long long exp[3];
    bool ok[3];
  };
  std::vector<Rec> recs;

  for (int k : {40, 60}) {
    for (int i = 0; i < 30; ++i) {
      const auto entries = gen_instance(map, k, 1, 100, rng);
      const auto agents = agents_from_scenario(map, entries);
      Rec r{};
      r.k = k;
      for (int s = 0; s < 3; ++s) {
        SolverConfig cfg;
        cfg.variant = vs[s];
        cfg.time_limit_s = 30.0;
        const RunOutcome out = run_online(g, agents, cfg);
        r.ok[s] = out.status == RunStatus::Success;
        r.time[s] = r.ok[s] ? std::max(out.total_time_s, 1e-9) : 30.0;
        for (const IterationStats& it : out.iterations) r.exp[s] += it.ll_expansions;
        if (r.ok[s]) {
          const auto problems = audit_execute_plan(g, agents, out.exec);
          if (!problems.empty())
            return fail("bench audit (k=" + std::to_string(k) + "): " + problems.front());
        }
      }
      recs.push_back(r);
    }
  }

  int fewer = 0;
  double logsum = 0;
  std::map<int, std::pair<int, int>> success;  // k -> (a1, a4)
  for (const Rec& r : recs) {
    if (r.exp[2] < r.exp[1]) ++fewer;
    logsum += std::log(r.time[0] / r.time[2]);
    success[r.k].first += r.ok[0] ? 1 : 0;
    success[r.k].second += r.ok[2] ? 1 : 0;
  }
  const double geomean = std::exp(logsum / recs.size());
  const bool a_ok = fewer * 10 >= static_cast<int>(recs.size()) * 9;
  const bool b_ok = geomean >= 1.1;
  bool c_ok = true;
  std::ostringstream cs;
  for (const auto& [k, sc] : success) {
    c_ok = c_ok && sc.second >= sc.first;
    cs << " k=" << k << " a4 " << sc.second << "/30 vs a1 " << sc.first << "/30;";
  }

  std::ostringstream d;
  d << "(a) a4 expanded less than a2 on " << fewer << "/" << recs.size() << " instances"
    << (a_ok ? "" : " [below 90%]") << "; (b) geomean a4-over-a1 speedup "
    << bench_detail::fmt("%.3f", geomean) << (b_ok ? "" : " [below 1.1]") << "; (c)" << cs.str();
  return {a_ok && b_ok && c_ok, d.str()};
}

// ---- criterion 7: executed plans are conflict-free --------------------------

CheckResult criterion7()
{
  std::mt19937_64 rng(707);
  int audited = 0;

  GridMap ring(4, 4);
  ring.set_blocked(1, 1, true);
  ring.set_blocked(2, 1, true);
  ring.set_blocked(1, 2, true);
  ring.set_blocked(2, 2, true);
  const Graph ring_g = ring.to_graph();
  std::vector<OnlineInstance> named;
  named.push_back({ring, ring_g,
                   {garage_agent(0, 0, ring.vertex(0, 3), ring.vertex(3, 0)),
                    garage_agent(1, 1, ring.vertex(3, 1), ring.vertex(2, 3))}});
  named.push_back({ring, ring_g,
                   {garage_agent(0, 0, ring.vertex(0, 3), ring.vertex(3, 0)),
                    garage_agent(1, 1, ring.vertex(2, 0), ring.vertex(0, 1))}});

  auto audit_all = [&](const OnlineInstance& inst) -> std::string {
    for (Variant v : {Variant::A1, Variant::A2, Variant::A3, Variant::A4}) {
      SolverConfig cfg;
      cfg.variant = v;
      cfg.time_limit_s = 10.0;
      const RunOutcome out = run_online(inst.g, inst.agents, cfg);
      if (out.status != RunStatus::Success) continue;
      const auto problems = audit_execute_plan(inst.g, inst.agents, out.exec);
      if (!problems.empty()) return problems.front();
      ++audited;
    }
    return {};
  };

  for (const OnlineInstance& inst : named) {
    const std::string err = audit_all(inst);
    if (!err.empty()) return fail("ring: " + err);
  }
  for (int i = 0; i < 120; ++i) {
    const OnlineInstance inst =
        i % 2 == 0 ? random_tiny_instance(rng) : random_medium_instance(rng);
    const std::string err = audit_all(inst);
    if (!err.empty()) return fail(err);
  }

  std::ostringstream d;
  d << audited
    << " executed plans audited conflict-free here; criteria 2, 3 and 6 audit their own runs "
       "inline";
  return {true, d.str()};
}

// ---- criterion 8: plan dumps are byte-identical across reruns ----------------

std::string dump_pass(uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::string out;

  int tiny_done = 0, guard = 0;
  while (tiny_done < 210 && ++guard <= 8400) {
    const OnlineInstance inst = random_tiny_instance(rng);
    SolverConfig cfg;
    cfg.variant = Variant::A4;
    cfg.time_limit_s = 10.0;
    const RunOutcome r = run_online(inst.g, inst.agents, cfg);
    if (r.status != RunStatus::Success) continue;
    Time max_arrival = 0;
    for (const auto& [id, tr] : r.exec)
      max_arrival = std::max(max_arrival, tr.as_path().arrival_time());
    if (max_arrival > 10) continue;
    out += plan_dump_json(r).dump();
    out += '\n';
    ++tiny_done;
  }

  for (int i = 0; i < 510; ++i) {
    const OnlineInstance inst = random_medium_instance(rng);
    for (Variant v : {Variant::A1, Variant::A2, Variant::A3, Variant::A4}) {
      SolverConfig cfg;
      cfg.variant = v;
      cfg.time_limit_s = 10.0;
      const RunOutcome r = run_online(inst.g, inst.agents, cfg);
      if (r.status != RunStatus::Success) continue;
      out += plan_dump_json(r).dump();
      out += '\n';
    }
  }
  return out;
}

CheckResult criterion8()
{
  const std::string first = dump_pass(888);
  const std::string second = dump_pass(888);
  if (first != second) {
    size_t at = 0;
    while (at < first.size() && at < second.size() && first[at] == second[at]) ++at;
    std::ostringstream d;
    d << "plan dumps diverge at byte " << at << " (sizes " << first.size() << " vs "
      << second.size() << ")";
    return fail(d.str());
  }
  std::ostringstream d;
  d << "two full passes produced identical plan dumps (" << first.size() << " bytes)";
  return {true, d.str()};
}

}  // namespace

int main(int argc, char** argv)
{
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) which = std::atoi(argv[++i]);
  }

  CheckResult (*checks[8])() = {criterion1, criterion2, criterion3, criterion4,
                                criterion5, criterion6, criterion7, criterion8};
  bool all_pass = true;
  for (int id = 1; id <= 8; ++id) {
    if (which != 0 && which != id) continue;
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = checks[id - 1]();
    } catch (const std::exception& e) {
      r = fail(std::string("unhandled exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %d: %s - %s (%.1f s)\n", id, r.pass ? "PASS" : "FAIL",
                r.detail.c_str(), dt);
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
