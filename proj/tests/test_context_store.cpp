#include <catch2/catch_amalgamated.hpp>

#include "omapf/context_store.hpp"

using namespace omapf;

namespace {

std::string key_of(std::initializer_list<Constraint> cs)
{
  ConstraintSet set;
  for (const auto& c : cs) set.insert(c);
  return set.canonical_key();
}

SearchContext context_with_states(int n)
{
  SearchContext ctx;
  ctx.initialized = true;
  ctx.recs.resize(n);
  return ctx;
}

}  // namespace

TEST_CASE("first checkout misses, a returned context is found again")
{
  PlanningContext store;
  const std::string key = key_of({Constraint::vertex_at(1, 2)});

  SearchContext ctx = store.checkout(0, key);
  REQUIRE_FALSE(ctx.initialized);
  REQUIRE(store.misses() == 1);
  REQUIRE(store.hits() == 0);

  ctx = context_with_states(5);
  store.put_back(0, key, std::move(ctx));
  REQUIRE(store.entries() == 1);
  REQUIRE(store.resident_states() == 5);

  SearchContext again = store.checkout(0, key);
  REQUIRE(again.initialized);
  REQUIRE(again.recs.size() == 5);
  REQUIRE(store.hits() == 1);
  REQUIRE(store.entries() == 0);
  store.put_back(0, key, std::move(again));
}

TEST_CASE("contexts are keyed per agent and per constraint set")
{
  PlanningContext store;
  const std::string a = key_of({Constraint::vertex_at(1, 2)});
  const std::string b = key_of({Constraint::vertex_at(1, 3)});

  (void)store.checkout(0, a);
  store.put_back(0, a, context_with_states(1));
  // Same key for another agent or another set is a distinct slot.
  SearchContext other = store.checkout(1, a);
  REQUIRE_FALSE(other.initialized);
  SearchContext second = store.checkout(0, b);
  REQUIRE_FALSE(second.initialized);
  REQUIRE(store.misses() == 3);

  SearchContext hit = store.checkout(0, a);
  REQUIRE(hit.initialized);
  REQUIRE(store.hits() == 1);
}

TEST_CASE("double checkout of the same slot is a logic error")
{
  PlanningContext store;
  const std::string key = key_of({});
  (void)store.checkout(0, key);
  REQUIRE_THROWS_AS(store.checkout(0, key), std::logic_error);
}

TEST_CASE("returning a context that was never checked out is a logic error")
{
  PlanningContext store;
  REQUIRE_THROWS_AS(store.put_back(0, key_of({}), SearchContext{}), std::logic_error);
}

TEST_CASE("purging an agent drops its contexts and outstanding checkouts")
{
  PlanningContext store;
  const std::string key = key_of({Constraint::vertex_at(4, 4)});

  (void)store.checkout(7, key);
  store.put_back(7, key, context_with_states(3));
  (void)store.checkout(8, key);
  store.put_back(8, key, context_with_states(2));
  REQUIRE(store.entries() == 2);

  store.purge_agent(7);
  REQUIRE(store.entries() == 1);
  REQUIRE(store.resident_states() == 2);

  // Purging is idempotent and unknown agents are fine.
  store.purge_agent(7);
  store.purge_agent(1234);
  REQUIRE(store.entries() == 1);

  // A context checked out before the purge can no longer be returned.
  SearchContext stale = store.checkout(7, key);
  REQUIRE(store.misses() == 3);
  store.purge_agent(7);
  REQUIRE_THROWS_AS(store.put_back(7, key, std::move(stale)), std::logic_error);
}

TEST_CASE("permuted constraint insertions share one context slot")
{
  PlanningContext store;
  ConstraintSet forward, backward;
  forward.insert(Constraint::vertex_at(1, 1));
  forward.insert(Constraint::edge_arriving(2, 3, 4));
  backward.insert(Constraint::edge_arriving(2, 3, 4));
  backward.insert(Constraint::vertex_at(1, 1));

  (void)store.checkout(0, forward.canonical_key());
  store.put_back(0, forward.canonical_key(), context_with_states(9));
  SearchContext ctx = store.checkout(0, backward.canonical_key());
  REQUIRE(ctx.recs.size() == 9);
  REQUIRE(store.hits() == 1);
}
