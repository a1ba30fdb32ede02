#pragma once

#include "pttc/rng.hpp"

namespace pttc {

/// Top-level privacy parameters together with the good-type count they
/// will be spent on. The derived per-arc noise parameter eps_prime and
/// the high-probability noise bound E follow from these.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double beta = 0.0;
  int k = 0;
};

/// Budget with delta1 = delta2 = beta = 1/max(n,2)^3.
PrivacyBudget default_budget(double epsilon, int k, int n);

/// Throws std::invalid_argument when any field is out of range
/// (epsilon > 0, deltas and beta in (0,1), k >= 1, k^3/beta > 1).
void validate_budget(const PrivacyBudget& b);

/// Per-arc noise parameter:
///   eps' = eps * L / (2*sqrt(8) * (L*sqrt(k*ln(1/d1)) + k*sqrt(k*ln(1/d2))))
/// with L = ln(k^3/beta).
double eps_prime(const PrivacyBudget& b);

/// High-probability bound on any single Laplace draw: E = ln(k^3/beta) / eps'.
double noise_bound_E(const PrivacyBudget& b);

/// One draw from Lap(scale) via the inverse CDF, so runs replay exactly
/// from a seed.
double sample_laplace(double scale, Rng& rng);

/// Inverse CDF of the zero-centered Laplace with scale b, u in (0,1).
double laplace_icdf(double u, double b);

/// Composed epsilon after m adaptive steps of a per-step-eps mechanism:
/// per_step_eps * sqrt(8 * m * ln(1/delta)).
double advanced_composition_eps(double per_step_eps, long long m, double delta);

/// The two composed budget halves: eps1 spent on noisy arc weights over
/// k rounds, eps2 on trade selections over k*k^2 cycles. Their sum
/// recomposes to b.epsilon exactly.
double composed_eps1(const PrivacyBudget& b);
double composed_eps2(const PrivacyBudget& b);

}  // namespace pttc
