#pragma once

#include <cstdint>
#include <string>

#include "pttc/market.hpp"

namespace pttc {

struct GeneratorSpec {
  enum class Kind { Random, LbJoint, LbMarginal };
  Kind kind = Kind::Random;
  int n = 0;
  int k = 0;
  int b = 0;  // secret bit for the attack constructions
};

/// Parses "random:n=20,k=4", "lb_joint:n=10,b=1", "lb_marginal:k=3,n=12,b=0".
GeneratorSpec parse_generator_spec(const std::string& text);

ExchangeMarket generate(const GeneratorSpec& spec, std::uint64_t seed);

/// Uniform endowments, independent uniform preference permutations.
ExchangeMarket gen_random(int n, int k, std::uint64_t seed);

/// Two good types, 2n agents: n endowed with good 1 wanting good 0,
/// n-1 endowed with good 0 wanting good 1, and one distinguished agent
/// endowed with good 0 whose top choice is good b. The distinguished
/// position is uniform among the good-0 holders (seeded), so the b=0
/// and b=1 markets differ in exactly one agent.
ExchangeMarket gen_lb_joint(int n, int b, std::uint64_t seed);

/// k goods, n >= k agents: agent i < k-1 endowed with i and wanting
/// i+1 then i; agent k-1 endowed with k-1 and wanting good 0 when b=1,
/// its own good when b=0; agents k..n-1 endowed with k-1 and happy with
/// it. Unspecified tail positions are own-good-first then ascending.
ExchangeMarket gen_lb_marginal(int n, int k, int b);

}  // namespace pttc
