#include "pttc/oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pttc/assignment.hpp"

namespace pttc {

int rank_weight(const ExchangeMarket& m, int agent, GoodId j) {
  const Agent& ag = m.agents[static_cast<size_t>(agent)];
  if (!ag.preference.weakly_prefers(j, ag.endowment)) return 0;
  return m.k - ag.preference.rank_of(j);  // rank_of is 0-based, so this is k - r + 1
}

long long rank_objective(const ExchangeMarket& m, const Allocation& a) {
  long long total = 0;
  for (int i = 0; i < m.n(); ++i) total += rank_weight(m, i, a[i]);
  return total;
}

Allocation ip_allocate(const ExchangeMarket& m) {
  if (auto violation = validate_market(m)) {
    throw std::invalid_argument("ip_allocate: " + *violation);
  }
  const int n = m.n();
  const int k = m.k;

  // Agents with identical weight rows are interchangeable; group them
  // and solve the transportation problem profiles x types.
  std::map<std::vector<int>, std::vector<int>> groups;  // weight row -> agent indices
  for (int i = 0; i < n; ++i) {
    std::vector<int> row(static_cast<size_t>(k));
    for (GoodId j = 0; j < k; ++j) row[static_cast<size_t>(j)] = rank_weight(m, i, j);
    groups[row].push_back(i);
  }

  const std::vector<int> counts = m.type_counts();
  const int num_groups = static_cast<int>(groups.size());
  const int source = num_groups + k;
  const int sink = source + 1;
  MinCostFlow flow(num_groups + k + 2);

  std::vector<std::vector<int>> group_edge(static_cast<size_t>(num_groups),
                                           std::vector<int>(static_cast<size_t>(k), -1));
  int gi = 0;
  for (const auto& [row, agents] : groups) {
    const auto size = static_cast<std::int64_t>(agents.size());
    flow.add_edge(source, gi, size, 0);
    for (GoodId j = 0; j < k; ++j) {
      const int w = row[static_cast<size_t>(j)];
      if (w == 0) continue;  // forbidden: j is worse than the endowment
      // Flow is fixed at n, so minimizing sum of (k - w) maximizes sum of w.
      group_edge[static_cast<size_t>(gi)][static_cast<size_t>(j)] =
          flow.add_edge(gi, num_groups + j, size, k - w);
    }
    ++gi;
  }
  for (GoodId j = 0; j < k; ++j) {
    flow.add_edge(num_groups + j, sink, counts[static_cast<size_t>(j)], 0);
  }

  const auto [pushed, cost] = flow.solve(source, sink);
  (void)cost;
  if (pushed != n) {
    throw std::logic_error("ip_allocate: assignment infeasible, identity should always fit");
  }

  // Distribute each group's flow to its agents, lowest index first and
  // best good first. Within a group every split is optimal, so this
  // only pins down a deterministic representative.
  Allocation result;
  result.assignment.assign(static_cast<size_t>(n), -1);
  gi = 0;
  for (const auto& [row, agents] : groups) {
    std::vector<std::pair<int, GoodId>> take;  // (weight, good), flow > 0
    for (GoodId j = 0; j < k; ++j) {
      const int edge = group_edge[static_cast<size_t>(gi)][static_cast<size_t>(j)];
      if (edge < 0) continue;
      for (std::int64_t c = flow.flow_on(edge); c > 0; --c) {
        take.emplace_back(row[static_cast<size_t>(j)], j);
      }
    }
    std::sort(take.begin(), take.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (size_t pos = 0; pos < agents.size(); ++pos) {
      result.assignment[static_cast<size_t>(agents[pos])] = take[pos].second;
    }
    ++gi;
  }
  return result;
}

}  // namespace pttc
