#include "pttc/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pttc/rng.hpp"

namespace pttc {

namespace {

// Distinct streams for market construction and mechanism randomness.
constexpr std::uint64_t kMarketSalt = 0x6d61726b65740a01ULL;
constexpr std::uint64_t kEngineSalt = 0x656e67696e650a02ULL;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

PrivacyBudget budget_for(const ExperimentSpec& spec, double epsilon, int k, int n) {
  PrivacyBudget b = default_budget(epsilon, k, n);
  if (spec.delta1 >= 0) b.delta1 = spec.delta1;
  if (spec.delta2 >= 0) b.delta2 = spec.delta2;
  if (spec.beta >= 0) b.beta = spec.beta;
  return b;
}

}  // namespace

Mechanism pttc_mechanism(double epsilon) {
  return [epsilon](const ExchangeMarket& m, std::uint64_t seed) {
    PttcConfig cfg;
    cfg.budget = default_budget(epsilon, m.k, m.n());
    cfg.seed = seed;
    return run_pttc(m, cfg).allocation;
  };
}

Mechanism pttc_mechanism(const PrivacyBudget& budget) {
  return [budget](const ExchangeMarket& m, std::uint64_t seed) {
    PttcConfig cfg;
    cfg.budget = budget;
    cfg.seed = seed;
    return run_pttc(m, cfg).allocation;
  };
}

Mechanism exact_ttc_mechanism() {
  return [](const ExchangeMarket& m, std::uint64_t seed) {
    Rng rng(seed);
    return run_exact_ttc(m, rng);
  };
}

std::string run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be at least 1");
  if (spec.market_file.has_value() == spec.gen.has_value()) {
    throw std::invalid_argument("experiment: exactly one of market file or generator required");
  }
  if (!spec.n_grid.empty() && !spec.gen.has_value()) {
    throw std::invalid_argument("experiment: an n grid needs a generator");
  }

  std::optional<ExchangeMarket> fixed_market;
  if (spec.market_file) fixed_market = read_market_file(*spec.market_file);

  const std::vector<double> eps_grid =
      spec.epsilon_grid.empty() ? std::vector<double>{spec.epsilon} : spec.epsilon_grid;
  const std::vector<int> n_grid =
      spec.n_grid.empty() ? std::vector<int>{spec.gen ? spec.gen->n : 0} : spec.n_grid;

  std::ostringstream csv;
  csv << "trial,n,k,epsilon,gap,gap_frac,ir,rounds,cycles,abort,max_abs_z,"
         "noise_bound_held,pareto_ceiling\n";

  for (const double epsilon : eps_grid) {
    for (const int grid_n : n_grid) {
      double sum_gap = 0, sum_frac = 0, sum_rounds = 0, sum_cycles = 0, sum_maxz = 0;
      long long ir_count = 0, abort_count = 0, held_count = 0;
      double ceiling = 0;
      int row_n = 0, row_k = 0;

      for (int trial = 0; trial < spec.trials; ++trial) {
        const std::uint64_t trial_seed = spec.seed ^ static_cast<std::uint64_t>(trial);
        ExchangeMarket market;
        if (fixed_market) {
          market = *fixed_market;
        } else {
          GeneratorSpec gen = *spec.gen;
          gen.n = grid_n;
          market = generate(gen, splitmix64(trial_seed ^ kMarketSalt));
        }
        row_n = market.n();
        row_k = market.k;

        PttcConfig cfg;
        cfg.budget = budget_for(spec, epsilon, market.k, market.n());
        cfg.seed = splitmix64(trial_seed ^ kEngineSalt);
        cfg.zero_noise_mode = spec.zero_noise;

        const PttcResult run = run_pttc(market, cfg);
        const int gap = dominance_gap(market, run.allocation);
        const bool ir = is_ir(market, run.allocation);
        const double frac = static_cast<double>(gap) / market.n();
        const bool held = run.trace.max_abs_noise <= run.trace.noise_bound || spec.zero_noise;
        const double E = spec.zero_noise ? 0.0 : noise_bound_E(cfg.budget);
        const double kd = market.k;
        ceiling = kd * (3.0 * E + 1.0) * (kd * (kd - 1.0) / 2.0 + kd);

        csv << trial << ',' << row_n << ',' << row_k << ',' << fmt(epsilon) << ',' << gap << ','
            << fmt(frac) << ',' << (ir ? 1 : 0) << ',' << run.trace.rounds << ','
            << run.trace.total_cycles << ',' << (run.trace.aborted ? 1 : 0) << ','
            << fmt(run.trace.max_abs_noise) << ',' << (held ? 1 : 0) << ',' << fmt(ceiling)
            << '\n';

        sum_gap += gap;
        sum_frac += frac;
        sum_rounds += run.trace.rounds;
        sum_cycles += run.trace.total_cycles;
        sum_maxz += run.trace.max_abs_noise;
        ir_count += ir ? 1 : 0;
        abort_count += run.trace.aborted ? 1 : 0;
        held_count += held ? 1 : 0;
      }

      const double t = spec.trials;
      csv << "mean," << row_n << ',' << row_k << ',' << fmt(epsilon) << ',' << fmt(sum_gap / t)
          << ',' << fmt(sum_frac / t) << ',' << fmt(ir_count / t) << ',' << fmt(sum_rounds / t)
          << ',' << fmt(sum_cycles / t) << ',' << fmt(abort_count / t) << ',' << fmt(sum_maxz / t)
          << ',' << fmt(held_count / t) << ',' << fmt(ceiling) << '\n';
    }
  }
  return csv.str();
}

WilsonInterval wilson_interval(long long successes, long long trials) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials, trials > 0");
  }
  constexpr double z = 1.959963984540054;  // 97.5th normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string DpAuditResult::summary() const {
  std::ostringstream out;
  out << "event alloc(" << agent << ")=" << good << ": " << count_x << '/' << trials << " vs "
      << count_x_prime << '/' << trials << ", smoothed ratio (add-one) " << fmt(smoothed_ratio)
      << ", bound e^eps=" << fmt(std::exp(epsilon)) << " + delta=" << fmt(delta)
      << " + slack=" << fmt(slack) << " -> " << (pass ? "PASS" : "FAIL");
  return out.str();
}

DpAuditResult dp_audit(const Mechanism& mech, const ExchangeMarket& x,
                       const ExchangeMarket& x_prime, int agent, GoodId good,
                       long long trials, double epsilon, double delta, double slack,
                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("dp_audit: trials must be at least 1");
  const auto changed = differing_agent(x, x_prime);
  if (!changed) {
    throw std::invalid_argument("dp_audit: markets must be neighbors (differ in exactly one agent)");
  }
  if (*changed == agent) {
    throw std::invalid_argument("dp_audit: observed agent must differ from the changed agent");
  }
  if (agent < 0 || agent >= x.n()) throw std::invalid_argument("dp_audit: agent out of range");

  DpAuditResult result;
  result.agent = agent;
  result.good = good;
  result.trials = trials;
  result.epsilon = epsilon;
  result.delta = delta;
  result.slack = slack;

  for (long long t = 0; t < trials; ++t) {
    const std::uint64_t base = seed ^ static_cast<std::uint64_t>(t);
    const Allocation a = mech(x, splitmix64(base ^ (2 * kEngineSalt)));
    const Allocation b = mech(x_prime, splitmix64(base ^ (2 * kEngineSalt + 1)));
    if (a[agent] == good) ++result.count_x;
    if (b[agent] == good) ++result.count_x_prime;
  }

  result.p_x = static_cast<double>(result.count_x) / static_cast<double>(trials);
  result.p_x_prime = static_cast<double>(result.count_x_prime) / static_cast<double>(trials);
  result.smoothed_ratio = static_cast<double>(result.count_x + 1) /
                          static_cast<double>(result.count_x_prime + 1);
  result.ci_x = wilson_interval(result.count_x, trials);
  result.ci_x_prime = wilson_interval(result.count_x_prime, trials);
  result.pass =
      result.ci_x.lower <= std::exp(epsilon) * result.ci_x_prime.upper + delta + slack;
  return result;
}

}  // namespace pttc
