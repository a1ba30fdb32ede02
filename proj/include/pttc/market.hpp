#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pttc {

/// Good types are dense integer ids in [0, k).
using GoodId = int;

/// Strict linear order over the k good types, most-preferred first.
class Preference {
 public:
  Preference() = default;
  explicit Preference(std::vector<GoodId> ranking);

  /// Position of g in the order; 0 = most preferred.
  int rank_of(GoodId g) const { return rank_of_[static_cast<size_t>(g)]; }

  /// a strictly preferred to b.
  bool prefers(GoodId a, GoodId b) const { return rank_of(a) < rank_of(b); }

  /// a weakly preferred to b (equal only when a == b; the order is strict).
  bool weakly_prefers(GoodId a, GoodId b) const { return rank_of(a) <= rank_of(b); }

  GoodId top() const { return ranking_.front(); }
  const std::vector<GoodId>& ranking() const { return ranking_; }
  int size() const { return static_cast<int>(ranking_.size()); }

  bool operator==(const Preference& other) const { return ranking_ == other.ranking_; }

 private:
  std::vector<GoodId> ranking_;
  std::vector<int> rank_of_;
};

struct Agent {
  GoodId endowment = 0;
  Preference preference;

  bool operator==(const Agent& other) const {
    return endowment == other.endowment && preference == other.preference;
  }
};

/// n agents, each bringing one copy of a good type and holding a strict
/// preference over all k types.
struct ExchangeMarket {
  int k = 0;
  std::vector<Agent> agents;

  int n() const { return static_cast<int>(agents.size()); }

  /// Per-type endowment counts n_j.
  std::vector<int> type_counts() const;
};

/// Assignment of a good type to each agent, conserving per-type counts.
struct Allocation {
  std::vector<GoodId> assignment;

  GoodId operator[](int agent) const { return assignment[static_cast<size_t>(agent)]; }
  int n() const { return static_cast<int>(assignment.size()); }

  static Allocation identity(const ExchangeMarket& m);
  bool operator==(const Allocation& other) const { return assignment == other.assignment; }
};

/// Empty result means the market is well formed; otherwise the message
/// names the first violated invariant.
std::optional<std::string> validate_market(const ExchangeMarket& m);

/// True when the allocation has the same multiset of goods as the
/// endowments (per-type conservation).
bool allocation_conserves(const ExchangeMarket& m, const Allocation& a);

/// Every agent weakly prefers its assigned type to its endowment.
/// Throws std::invalid_argument when a violates conservation.
bool is_ir(const ExchangeMarket& m, const Allocation& a);

/// Largest number of agents that can be strictly improved by some
/// alternative allocation that weakly improves everyone. 0 certifies
/// exact Pareto optimality; g > 0 means the empirical alpha is g/n.
/// Computed as a max-weight agent/good-copy matching.
int dominance_gap(const ExchangeMarket& m, const Allocation& a);

/// Exhaustive Pareto-optimality check over all valid allocations.
/// Only for n <= 8 (throws beyond that).
bool brute_force_po(const ExchangeMarket& m, const Allocation& a);

/// Neighboring databases: equal except for exactly one agent's
/// (endowment, preference) pair. Returns that agent's index, or nullopt
/// when the markets are identical or differ in more than one agent.
std::optional<int> differing_agent(const ExchangeMarket& a, const ExchangeMarket& b);

/// Line-oriented market format: header "k n", then per agent
/// "endowment r_1 ... r_k" (ranking most-preferred first).
ExchangeMarket read_market(std::istream& in);
ExchangeMarket read_market_file(const std::string& path);
void write_market(std::ostream& out, const ExchangeMarket& m);

/// Allocation format: one "agent_index good_id" pair per line.
void write_allocation(std::ostream& out, const Allocation& a);
Allocation read_allocation(std::istream& in, int n);

}  // namespace pttc
