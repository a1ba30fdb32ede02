#include "pttc/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pttc {

PrivacyBudget default_budget(double epsilon, int k, int n) {
  const double nn = std::max(n, 2);
  const double d = 1.0 / (nn * nn * nn);
  return PrivacyBudget{epsilon, d, d, d, k};
}

void validate_budget(const PrivacyBudget& b) {
  if (!(b.epsilon > 0)) throw std::invalid_argument("budget: epsilon must be positive");
  if (!(b.delta1 > 0 && b.delta1 < 1)) throw std::invalid_argument("budget: delta1 must be in (0,1)");
  if (!(b.delta2 > 0 && b.delta2 < 1)) throw std::invalid_argument("budget: delta2 must be in (0,1)");
  if (!(b.beta > 0 && b.beta < 1)) throw std::invalid_argument("budget: beta must be in (0,1)");
  if (b.k < 1) throw std::invalid_argument("budget: k must be at least 1");
  const double kd = static_cast<double>(b.k);
  if (!(kd * kd * kd / b.beta > 1.0)) {
    throw std::invalid_argument("budget: k^3/beta must exceed 1");
  }
}

double eps_prime(const PrivacyBudget& b) {
  validate_budget(b);
  const double kd = static_cast<double>(b.k);
  const double log_term = std::log(kd * kd * kd / b.beta);
  const double denom = 2.0 * std::sqrt(8.0) *
                       (log_term * std::sqrt(kd * std::log(1.0 / b.delta1)) +
                        kd * std::sqrt(kd * std::log(1.0 / b.delta2)));
  return b.epsilon * log_term / denom;
}

double noise_bound_E(const PrivacyBudget& b) {
  const double kd = static_cast<double>(b.k);
  return std::log(kd * kd * kd / b.beta) / eps_prime(b);
}

double laplace_icdf(double u, double b) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("laplace_icdf: u must be in (0,1)");
  if (u < 0.5) return b * std::log(2.0 * u);
  return -b * std::log(2.0 * (1.0 - u));
}

double sample_laplace(double scale, Rng& rng) {
  if (!(scale > 0)) throw std::invalid_argument("sample_laplace: scale must be positive");
  return laplace_icdf(rng.uniform01(), scale);
}

double advanced_composition_eps(double per_step_eps, long long m, double delta) {
  if (!(per_step_eps > 0)) throw std::invalid_argument("composition: per-step eps must be positive");
  if (m < 1) throw std::invalid_argument("composition: step count must be at least 1");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("composition: delta must be in (0,1)");
  return per_step_eps * std::sqrt(8.0 * static_cast<double>(m) * std::log(1.0 / delta));
}

double composed_eps1(const PrivacyBudget& b) {
  return advanced_composition_eps(2.0 * eps_prime(b), b.k, b.delta1);
}

double composed_eps2(const PrivacyBudget& b) {
  const long long k = b.k;
  return advanced_composition_eps(2.0 / noise_bound_E(b), k * k * k, b.delta2);
}

}  // namespace pttc
