#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "omapf/srsipp.hpp"

namespace omapf {

// Keeps suspended search contexts keyed by (agent, canonical constraint
// set) so later searches under the same constraints resume instead of
// restarting. Contexts are checked out exclusively and must be returned.
// Total retained search states are capped; the least recently returned
// contexts are dropped first, and a dropped key simply misses again.
class PlanningContext
{
public:
  static constexpr size_t kDefaultStateCap = 2'000'000;

  explicit PlanningContext(size_t max_resident_states = kDefaultStateCap)
      : cap_(max_resident_states)
  {
  }

  // Returns the stored context for the key (hit) or a fresh one (miss).
  SearchContext checkout(int agent, const std::string& key)
  {
    if (out_[agent].count(key))
      throw std::logic_error("PlanningContext: context already checked out");
    out_[agent].insert(key);
    auto& per_agent = store_[agent];
    auto it = per_agent.find(key);
    if (it == per_agent.end()) {
      ++misses_;
      return SearchContext{};
    }
    ++hits_;
    SearchContext ctx = std::move(it->second.ctx);
    total_states_ -= ctx.resident_states();
    lru_.erase(it->second.stamp);
    per_agent.erase(it);
    return ctx;
  }

  void put_back(int agent, const std::string& key, SearchContext ctx)
  {
    auto oit = out_.find(agent);
    if (oit == out_.end() || !oit->second.count(key))
      throw std::logic_error("PlanningContext: returning a context that was not checked out");
    oit->second.erase(key);
    const long long stamp = ++clock_;
    total_states_ += ctx.resident_states();
    lru_.emplace(stamp, std::make_pair(agent, key));
    store_[agent].emplace(key, Entry{std::move(ctx), stamp});
    evict();
  }

  // Drops everything belonging to an agent that left the system.
  // Idempotent; a put_back attempted after a purge fails as not checked out.
  void purge_agent(int agent)
  {
    auto sit = store_.find(agent);
    if (sit != store_.end()) {
      for (const auto& e : sit->second) {
        total_states_ -= e.second.ctx.resident_states();
        lru_.erase(e.second.stamp);
      }
      store_.erase(sit);
    }
    out_.erase(agent);
  }

  long long hits() const { return hits_; }
  long long misses() const { return misses_; }
  long long evictions() const { return evictions_; }

  size_t entries() const
  {
    size_t n = 0;
    for (const auto& kv : store_) n += kv.second.size();
    return n;
  }

  size_t resident_states() const { return total_states_; }

private:
  struct Entry
  {
    SearchContext ctx;
    long long stamp = 0;
  };

  void evict()
  {
    while (total_states_ > cap_ && !lru_.empty()) {
      const auto [agent, key] = lru_.begin()->second;
      auto& per_agent = store_.at(agent);
      auto it = per_agent.find(key);
      total_states_ -= it->second.ctx.resident_states();
      per_agent.erase(it);
      if (per_agent.empty()) store_.erase(agent);
      lru_.erase(lru_.begin());
      ++evictions_;
    }
  }

  std::map<int, std::map<std::string, Entry>> store_;
  std::map<int, std::set<std::string>> out_;
  std::map<long long, std::pair<int, std::string>> lru_;  // stamp -> owner
  size_t cap_;
  size_t total_states_ = 0;
  long long clock_ = 0;
  long long hits_ = 0;
  long long misses_ = 0;
  long long evictions_ = 0;
};

}  // namespace omapf
