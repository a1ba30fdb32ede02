#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pttc/engine.hpp"
#include "pttc/instances.hpp"
#include "pttc/market.hpp"
#include "pttc/privacy.hpp"

namespace pttc {

/// A mechanism under test: market in, allocation out, all randomness
/// derived from the given seed.
using Mechanism = std::function<Allocation(const ExchangeMarket&, std::uint64_t seed)>;

Mechanism pttc_mechanism(double epsilon);  // deltas and beta default to 1/n^3
Mechanism pttc_mechanism(const PrivacyBudget& budget);
Mechanism exact_ttc_mechanism();

struct ExperimentSpec {
  std::optional<std::string> market_file;  // exactly one of these two
  std::optional<GeneratorSpec> gen;

  double epsilon = 1.0;
  /// Explicit budget terms; negative means "use the 1/n^3 default".
  double delta1 = -1.0;
  double delta2 = -1.0;
  double beta = -1.0;

  /// Sweep grids; empty means the single epsilon / generator n above.
  std::vector<double> epsilon_grid;
  std::vector<int> n_grid;

  int trials = 1000;
  std::uint64_t seed = 0;
  bool zero_noise = false;
};

/// Per-trial utility and structural statistics, one CSV row per trial
/// per grid point plus one aggregate row per grid point. Deterministic:
/// trial t always runs with seed = spec.seed XOR t.
/// Columns: trial,n,k,epsilon,gap,gap_frac,ir,rounds,cycles,abort,
///          max_abs_z,noise_bound_held,pareto_ceiling
std::string run_experiment(const ExperimentSpec& spec);

/// 95% Wilson score interval for c successes out of n.
struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};
WilsonInterval wilson_interval(long long successes, long long trials);

struct DpAuditResult {
  int agent = 0;
  GoodId good = 0;
  long long trials = 0;
  long long count_x = 0;       // event hits under x
  long long count_x_prime = 0; // event hits under x'
  double p_x = 0.0;
  double p_x_prime = 0.0;
  double smoothed_ratio = 0.0;  // (count_x + 1) / (count_x_prime + 1), add-one smoothing
  WilsonInterval ci_x;
  WilsonInterval ci_x_prime;
  double epsilon = 0.0;
  double delta = 0.0;  // additive slack from the privacy guarantee itself
  double slack = 0.0;  // Monte-Carlo slack on the comparison
  bool pass = false;

  std::string summary() const;
};

/// Necessary-condition check of the marginal-privacy inequality on one
/// observable event: runs the mechanism `trials` times on each of two
/// neighboring markets and tests
///   WilsonLower(P[alloc(j)=g | x]) <= e^eps * WilsonUpper(P[... | x']) + delta + slack.
/// Throws when the markets are not neighbors or differ at agent j itself.
DpAuditResult dp_audit(const Mechanism& mech, const ExchangeMarket& x,
                       const ExchangeMarket& x_prime, int agent, GoodId good,
                       long long trials, double epsilon, double delta, double slack,
                       std::uint64_t seed);

}  // namespace pttc
