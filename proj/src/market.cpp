#include "pttc/market.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pttc/assignment.hpp"

namespace pttc {

Preference::Preference(std::vector<GoodId> ranking) : ranking_(std::move(ranking)) {
  rank_of_.assign(ranking_.size(), -1);
  for (size_t pos = 0; pos < ranking_.size(); ++pos) {
    const GoodId g = ranking_[pos];
    if (g < 0 || static_cast<size_t>(g) >= ranking_.size() || rank_of_[static_cast<size_t>(g)] != -1) {
      throw std::invalid_argument("Preference: ranking is not a permutation of [0, k)");
    }
    rank_of_[static_cast<size_t>(g)] = static_cast<int>(pos);
  }
}

std::vector<int> ExchangeMarket::type_counts() const {
  std::vector<int> counts(static_cast<size_t>(k), 0);
  for (const Agent& a : agents) ++counts[static_cast<size_t>(a.endowment)];
  return counts;
}

Allocation Allocation::identity(const ExchangeMarket& m) {
  Allocation a;
  a.assignment.reserve(m.agents.size());
  for (const Agent& ag : m.agents) a.assignment.push_back(ag.endowment);
  return a;
}

std::optional<std::string> validate_market(const ExchangeMarket& m) {
  if (m.k < 1) return "k must be at least 1";
  if (m.agents.empty()) return "market has no agents";
  for (size_t i = 0; i < m.agents.size(); ++i) {
    const Agent& a = m.agents[i];
    if (a.endowment < 0 || a.endowment >= m.k) {
      return "agent " + std::to_string(i) + ": endowment outside [0, k)";
    }
    if (a.preference.size() != m.k) {
      return "agent " + std::to_string(i) + ": ranking does not cover all k types";
    }
    // Permutation structure is enforced by the Preference constructor,
    // but markets can be assembled field-by-field; re-check here.
    std::vector<bool> seen(static_cast<size_t>(m.k), false);
    for (GoodId g : a.preference.ranking()) {
      if (g < 0 || g >= m.k || seen[static_cast<size_t>(g)]) {
        return "agent " + std::to_string(i) + ": ranking is not a permutation of [0, k)";
      }
      seen[static_cast<size_t>(g)] = true;
    }
  }
  return std::nullopt;
}

bool allocation_conserves(const ExchangeMarket& m, const Allocation& a) {
  if (a.n() != m.n()) return false;
  std::vector<int> counts(static_cast<size_t>(m.k), 0);
  for (GoodId g : a.assignment) {
    if (g < 0 || g >= m.k) return false;
    ++counts[static_cast<size_t>(g)];
  }
  return counts == m.type_counts();
}

bool is_ir(const ExchangeMarket& m, const Allocation& a) {
  if (!allocation_conserves(m, a)) {
    throw std::invalid_argument("is_ir: allocation does not conserve per-type counts");
  }
  for (int i = 0; i < m.n(); ++i) {
    const Agent& ag = m.agents[static_cast<size_t>(i)];
    if (!ag.preference.weakly_prefers(a[i], ag.endowment)) return false;
  }
  return true;
}

int dominance_gap(const ExchangeMarket& m, const Allocation& a) {
  if (!allocation_conserves(m, a)) {
    throw std::invalid_argument("dominance_gap: allocation does not conserve per-type counts");
  }
  const int n = m.n();
  const int k = m.k;

  // Row for agent i: per type j, -1 when j is worse than the current
  // assignment, else 1 if strictly better, 0 if equal. Agents with the
  // same row are interchangeable, so group them and solve the
  // transportation problem on profiles x types.
  std::map<std::vector<int>, std::int64_t> groups;
  for (int i = 0; i < n; ++i) {
    const Agent& ag = m.agents[static_cast<size_t>(i)];
    std::vector<int> row(static_cast<size_t>(k), -1);
    for (GoodId j = 0; j < k; ++j) {
      if (!ag.preference.weakly_prefers(j, a[i])) continue;
      row[static_cast<size_t>(j)] = ag.preference.prefers(j, a[i]) ? 1 : 0;
    }
    ++groups[row];
  }

  const std::vector<int> counts = m.type_counts();
  const int num_groups = static_cast<int>(groups.size());
  const int source = num_groups + k;
  const int sink = source + 1;
  MinCostFlow flow(num_groups + k + 2);

  int group_idx = 0;
  for (const auto& [row, size] : groups) {
    flow.add_edge(source, group_idx, size, 0);
    for (GoodId j = 0; j < k; ++j) {
      const int w = row[static_cast<size_t>(j)];
      if (w < 0) continue;
      // Cost 1 - w: a full flow of n units then minimizes the number of
      // non-strict improvements, i.e. maximizes the strict ones.
      flow.add_edge(group_idx, num_groups + j, size, 1 - w);
    }
    ++group_idx;
  }
  for (GoodId j = 0; j < k; ++j) {
    flow.add_edge(num_groups + j, sink, counts[static_cast<size_t>(j)], 0);
  }

  const auto [pushed, cost] = flow.solve(source, sink);
  if (pushed != n) {
    throw std::logic_error("dominance_gap: no weakly-improving perfect assignment found");
  }
  return static_cast<int>(n - cost);
}

namespace {

// Pareto dominance at the type level.
bool dominates(const ExchangeMarket& m, const std::vector<GoodId>& candidate, const Allocation& a) {
  bool strict = false;
  for (int i = 0; i < m.n(); ++i) {
    const Preference& pref = m.agents[static_cast<size_t>(i)].preference;
    if (!pref.weakly_prefers(candidate[static_cast<size_t>(i)], a[i])) return false;
    if (pref.prefers(candidate[static_cast<size_t>(i)], a[i])) strict = true;
  }
  return strict;
}

}  // namespace

bool brute_force_po(const ExchangeMarket& m, const Allocation& a) {
  if (m.n() > 8) {
    throw std::invalid_argument("brute_force_po: n > 8 would enumerate too many allocations");
  }
  if (!allocation_conserves(m, a)) {
    throw std::invalid_argument("brute_force_po: allocation does not conserve per-type counts");
  }
  std::vector<GoodId> goods;
  goods.reserve(m.agents.size());
  for (const Agent& ag : m.agents) goods.push_back(ag.endowment);
  std::sort(goods.begin(), goods.end());
  do {
    if (dominates(m, goods, a)) return false;
  } while (std::next_permutation(goods.begin(), goods.end()));
  return true;
}

std::optional<int> differing_agent(const ExchangeMarket& a, const ExchangeMarket& b) {
  if (a.k != b.k || a.n() != b.n()) return std::nullopt;
  int where = -1;
  for (int i = 0; i < a.n(); ++i) {
    if (a.agents[static_cast<size_t>(i)] == b.agents[static_cast<size_t>(i)]) continue;
    if (where != -1) return std::nullopt;
    where = i;
  }
  if (where == -1) return std::nullopt;
  return where;
}

ExchangeMarket read_market(std::istream& in) {
  ExchangeMarket m;
  int n = 0;
  if (!(in >> m.k >> n)) throw std::runtime_error("market file: bad header, expected 'k n'");
  if (m.k < 1 || n < 1) throw std::runtime_error("market file: k and n must be positive");
  m.agents.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Agent ag;
    if (!(in >> ag.endowment)) {
      throw std::runtime_error("market file: missing endowment for agent " + std::to_string(i));
    }
    std::vector<GoodId> ranking(static_cast<size_t>(m.k));
    for (int r = 0; r < m.k; ++r) {
      if (!(in >> ranking[static_cast<size_t>(r)])) {
        throw std::runtime_error("market file: truncated ranking for agent " + std::to_string(i));
      }
    }
    ag.preference = Preference(std::move(ranking));
    m.agents.push_back(std::move(ag));
  }
  if (auto violation = validate_market(m)) {
    throw std::runtime_error("market file: " + *violation);
  }
  return m;
}

ExchangeMarket read_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open market file: " + path);
  try {
    return read_market(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_market(std::ostream& out, const ExchangeMarket& m) {
  out << m.k << ' ' << m.n() << '\n';
  for (const Agent& ag : m.agents) {
    out << ag.endowment;
    for (GoodId g : ag.preference.ranking()) out << ' ' << g;
    out << '\n';
  }
}

void write_allocation(std::ostream& out, const Allocation& a) {
  for (int i = 0; i < a.n(); ++i) out << i << ' ' << a[i] << '\n';
}

Allocation read_allocation(std::istream& in, int n) {
  Allocation a;
  a.assignment.assign(static_cast<size_t>(n), -1);
  int agent = 0;
  GoodId good = 0;
  while (in >> agent >> good) {
    if (agent < 0 || agent >= n) throw std::runtime_error("allocation file: agent index out of range");
    a.assignment[static_cast<size_t>(agent)] = good;
  }
  for (int i = 0; i < n; ++i) {
    if (a.assignment[static_cast<size_t>(i)] < 0) {
      throw std::runtime_error("allocation file: agent " + std::to_string(i) + " missing");
    }
  }
  return a;
}

}  // namespace pttc
