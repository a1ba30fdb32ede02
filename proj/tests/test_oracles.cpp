#include "pttc/oracles.hpp"

#include "doctest.h"
#include "pttc/assignment.hpp"
#include "pttc/engine.hpp"
#include "pttc/instances.hpp"
#include "test_support.hpp"

using namespace pttc;
using test::make_allocation;
using test::swap_market;

TEST_SUITE("oracles") {

TEST_CASE("min cost flow on a hand-checked transportation problem") {
  // 2 supplies (3 and 2 units) -> 2 demands (2 and 3 units).
  // Costs: s0->d0 1, s0->d1 4, s1->d0 2, s1->d1 1.
  // Optimum: s0 ships 2 to d0 and 1 to d1, s1 ships 2 to d1: cost 8.
  MinCostFlow flow(6);
  const int s = 4, t = 5;
  flow.add_edge(s, 0, 3, 0);
  flow.add_edge(s, 1, 2, 0);
  const int e00 = flow.add_edge(0, 2, 3, 1);
  const int e01 = flow.add_edge(0, 3, 3, 4);
  const int e10 = flow.add_edge(1, 2, 2, 2);
  const int e11 = flow.add_edge(1, 3, 2, 1);
  flow.add_edge(2, t, 2, 0);
  flow.add_edge(3, t, 3, 0);
  const auto [pushed, cost] = flow.solve(s, t);
  CHECK(pushed == 5);
  CHECK(cost == 8);
  CHECK(flow.flow_on(e00) == 2);
  CHECK(flow.flow_on(e01) == 1);
  CHECK(flow.flow_on(e10) == 0);
  CHECK(flow.flow_on(e11) == 2);
}

TEST_CASE("rank weights count down from k") {
  const ExchangeMarket m = swap_market();
  CHECK(rank_weight(m, 0, 1) == 2);  // favorite
  CHECK(rank_weight(m, 0, 0) == 1);  // own good, second choice
  CHECK(rank_weight(m, 1, 0) == 2);
  CHECK(rank_weight(m, 1, 1) == 1);

  ExchangeMarket below;
  below.k = 2;
  below.agents.push_back(Agent{1, Preference({1, 0})});
  below.agents.push_back(Agent{0, Preference({0, 1})});
  CHECK(rank_weight(below, 0, 0) == 0);  // worse than the endowment: forbidden
}

TEST_CASE("ip oracle solves the swap market") {
  const ExchangeMarket m = swap_market();
  const Allocation a = ip_allocate(m);
  CHECK(a == make_allocation({1, 0}));
  CHECK(rank_objective(m, a) == 4);
  CHECK(rank_objective(m, Allocation::identity(m)) == 2);
}

TEST_CASE("ip oracle clears the k-cycle attack instance") {
  const ExchangeMarket m = gen_lb_marginal(5, 3, 1);
  const Allocation a = ip_allocate(m);
  CHECK(a == make_allocation({1, 2, 0, 2, 2}));
}

TEST_CASE("ip oracle keeps endowments when everyone top-ranks their own") {
  ExchangeMarket m;
  m.k = 3;
  m.agents.push_back(Agent{0, Preference({0, 1, 2})});
  m.agents.push_back(Agent{1, Preference({1, 2, 0})});
  m.agents.push_back(Agent{2, Preference({2, 0, 1})});
  m.agents.push_back(Agent{1, Preference({1, 0, 2})});
  CHECK(ip_allocate(m) == Allocation::identity(m));
}

TEST_CASE("ip oracle is IR and exactly Pareto optimal on random markets") {
  Rng meta(909);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(meta.uniform_int(11));
    const int k = 1 + static_cast<int>(meta.uniform_int(5));
    const ExchangeMarket m = gen_random(n, k, meta.next_raw());
    const Allocation a = ip_allocate(m);
    CHECK(is_ir(m, a));
    CHECK(dominance_gap(m, a) == 0);
    if (n <= 6) CHECK(brute_force_po(m, a));
  }
}

TEST_CASE("ip objective dominates the greedy clearing objective") {
  Rng meta(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(meta.uniform_int(10));
    const int k = 2 + static_cast<int>(meta.uniform_int(4));
    const ExchangeMarket m = gen_random(n, k, meta.next_raw());
    Rng rng(meta.next_raw());
    const Allocation ttc = run_exact_ttc(m, rng);
    CHECK(rank_objective(m, ip_allocate(m)) >= rank_objective(m, ttc));
  }
}

TEST_CASE("ip oracle is deterministic") {
  const ExchangeMarket m = gen_random(9, 4, 321);
  CHECK(ip_allocate(m) == ip_allocate(m));
}

}  // TEST_SUITE
