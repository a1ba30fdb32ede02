#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pttc/market.hpp"
#include "pttc/privacy.hpp"
#include "pttc/trading_graph.hpp"

namespace pttc {

struct PttcConfig {
  PrivacyBudget budget;
  std::uint64_t seed = 0;
  /// Debug mode: Z = 0 and E = 0 for every arc, budget ignored.
  bool zero_noise_mode = false;
};

/// Full record of one run: enough to replay it bit-exactly given the
/// market and seed, and to check the structural bounds after the fact.
struct RunTrace {
  struct NoiseEvent {
    int round;
    ArcKey arc;
    double z;
  };
  struct CycleEvent {
    int round;
    int tau;
    std::vector<ArcKey> arcs;
    int capacity;
  };
  struct SelectEvent {
    int round;
    int tau;
    ArcKey arc;
    int sigma;
    std::vector<int> agents;  // ascending index
  };
  struct DeleteEvent {
    int round;
    GoodId node;
  };
  using Event = std::variant<NoiseEvent, CycleEvent, SelectEvent, DeleteEvent>;

  std::vector<Event> events;
  bool aborted = false;
  bool noise_bound_violated = false;
  bool zero_noise = false;
  int rounds = 0;
  int total_cycles = 0;
  int max_cycles_in_round = 0;
  double max_abs_noise = 0.0;
  double noise_bound = 0.0;  // E of the budget used (0 in zero-noise mode)

  /// Line-oriented export, one event per line:
  ///   NOISE t u->v z
  ///   CYCLE t tau u->v,v->w,... W
  ///   SELECT t tau u->v i,j,...
  ///   DELETE t v
  ///   ABORT
  std::string export_text() const;
};

struct PttcResult {
  Allocation allocation;
  RunTrace trace;
};

/// The private mechanism: round noise, cycle clearing, random selection,
/// node deletion, clean-up fallback. The output is always individually
/// rational; on abort it is the identity allocation.
PttcResult run_pttc(const ExchangeMarket& m, const PttcConfig& cfg);

/// Non-private baseline: the same grouped clearing loop with zero noise.
/// Deletions then only remove types whose agents are all satisfied, and
/// the result is individually rational and exactly Pareto optimal.
Allocation run_exact_ttc(const ExchangeMarket& m, Rng& rng);

}  // namespace pttc
