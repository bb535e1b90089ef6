#pragma once

#include <string>

#include <json.hpp>

#include "omapf/sr.hpp"

namespace omapf {

using json = nlohmann::json;

// Per-instance run report consumed by the bench runner and printed by the
// solve command.
inline json run_report_json(const std::string& instance_id, const SolverConfig& cfg,
                            const RunOutcome& out)
{
  json iterations = json::array();
  for (const IterationStats& it : out.iterations) {
    iterations.push_back({{"t", it.t},
                          {"soc", it.soc},
                          {"ll_expansions", it.ll_expansions},
                          {"ct_nodes", it.ct_nodes},
                          {"ctx_hits", it.ctx_hits}});
  }
  json exec = json::object();
  for (const auto& [id, tr] : out.exec) {
    exec[std::to_string(id)] = {{"entry_time", tr.entry_time}, {"vertices", tr.vertices}};
  }
  return json{{"instance", instance_id},
              {"solver", variant_name(cfg.variant)},
              {"success", out.status == RunStatus::Success},
              {"status", run_status_name(out.status)},
              {"total_time_s", out.total_time_s},
              {"iterations", iterations},
              {"execute_plan", exec}};
}

// One object per replanning iteration; the byte-for-byte determinism check
// compares serialized dumps of this.
inline json plan_dump_json(const RunOutcome& out)
{
  json arr = json::array();
  for (size_t i = 0; i < out.snapshots.size(); ++i) {
    json paths = json::object();
    for (const auto& [id, p] : out.snapshots[i]) {
      paths[std::to_string(id)] = {{"start", p.start_time}, {"vertices", p.vertices}};
    }
    arr.push_back({{"t", out.iterations[i].t}, {"paths", paths}, {"soc", out.iterations[i].soc}});
  }
  return arr;
}

}  // namespace omapf
