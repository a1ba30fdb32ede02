#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pttc/market.hpp"
#include "pttc/rng.hpp"

namespace pttc {

using ArcKey = std::pair<GoodId, GoodId>;  // (from, to); self-loops allowed

/// One directed arc of the trade graph. members holds the agents endowed
/// with `from` whose favorite remaining type is `to`, kept sorted by
/// agent index; the exact weight w_e is always |members|.
struct Arc {
  GoodId from = 0;
  GoodId to = 0;
  std::vector<int> members;
  double noisy_weight = 0.0;

  int exact_weight() const { return static_cast<int>(members.size()); }
};

struct NoiseDraw {
  int round = 0;
  ArcKey arc{};
  double value = 0.0;
};

/// Complete directed graph over the remaining good types, self-loops
/// included. Arcs exist for every ordered pair of remaining nodes even
/// when no agent wants that trade. Borrows the market it was built
/// from (needed to re-point agents after a deletion); the market must
/// outlive the graph.
struct TradeGraph {
  const ExchangeMarket* market = nullptr;
  int k = 0;
  std::set<GoodId> remaining;
  std::map<ArcKey, Arc> arcs;

  const Arc& arc_at(GoodId from, GoodId to) const { return arcs.at({from, to}); }
  Arc& arc_at(GoodId from, GoodId to) { return arcs.at({from, to}); }
  bool empty() const { return remaining.empty(); }

  /// Sum of noisy weights over arcs leaving v (self-loop included).
  double noisy_out_sum(GoodId v) const;
};

struct Cycle {
  std::vector<ArcKey> arcs;  // consecutive, last arc returns to the first node
};

/// Outcome of trading one cycle. When ir_abort is set nothing was
/// mutated: the requested volume exceeded some arc's true membership and
/// the caller must fall back to the identity allocation.
struct TradeResult {
  bool ir_abort = false;
  std::vector<std::pair<int, GoodId>> assignments;        // (agent, good received)
  std::vector<std::pair<ArcKey, std::vector<int>>> selected;  // per arc, agents chosen
  std::vector<int> sigmas;                                // shift drawn per arc
};

struct DeletionResult {
  GoodId node = -1;
  double noisy_out_sum = 0.0;
  /// Always true when no positive cycle exists (at most |V| <= k arcs
  /// leave the all-idle node, each below 1); surfaced so the engine can
  /// route to clean-up if it ever fails to hold.
  bool sum_below_k = true;
  std::vector<std::pair<int, GoodId>> assignments;  // deleted node's endowed agents
};

/// Places every agent on the arc (endowment, favorite type), favorite
/// taken over all k types. Noisy weights start at 0.
TradeGraph build_graph(const ExchangeMarket& m);

/// hat_w = max{w + z - 2E, 0}; the shared formula behind round noising.
double noisy_weight(int exact_weight, double z, double noise_bound);

/// Draws fresh Laplace noise per arc (in arc-key order) and resets every
/// noisy weight to max{w + Z - 2E, 0}. In zero-noise mode no draws are
/// consumed and hat_w = w. Returns the draws made.
std::vector<NoiseDraw> apply_round_noise(TradeGraph& g, int round, double scale,
                                         double noise_bound, Rng& rng, bool zero_noise);

/// First directed cycle (length >= 1) in the subgraph of arcs with
/// floor(hat_w) >= 1, under a fixed deterministic search order:
/// depth-first from the lowest remaining node id, successors in
/// ascending id order. nullopt when the subgraph is acyclic.
std::optional<Cycle> find_cycle(const TradeGraph& g);

/// min over the cycle of floor(hat_w). Throws when some arc is below 1.
int cycle_capacity(const TradeGraph& g, const Cycle& c);

/// Trades `volume` agents along each arc of the cycle: cyclic-window
/// selection per arc, members removed, noisy weights decremented, each
/// selected agent assigned the arc head. Signals ir_abort (mutating
/// nothing) when volume exceeds any arc's true membership.
TradeResult execute_trade(TradeGraph& g, const Cycle& c, int volume, Rng& rng);

/// Removes the node with the smallest noisy out-sum (ties to the lowest
/// id). Its endowed agents keep their own good; agents that pointed at
/// it re-point to their favorite type among the survivors.
DeletionResult delete_node(TradeGraph& g);

}  // namespace pttc
