#include "pttc/instances.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pttc/rng.hpp"

namespace pttc {

namespace {

/// Ranking = prefix, then own good, then the rest ascending; duplicates
/// collapse to the first occurrence.
Preference with_prefix(int k, GoodId own, std::vector<GoodId> prefix) {
  std::vector<GoodId> ranking;
  ranking.reserve(static_cast<size_t>(k));
  auto push = [&](GoodId g) {
    if (std::find(ranking.begin(), ranking.end(), g) == ranking.end()) ranking.push_back(g);
  };
  for (GoodId g : prefix) push(g);
  push(own);
  for (GoodId g = 0; g < k; ++g) push(g);
  return Preference(std::move(ranking));
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "random") {
    spec.kind = GeneratorSpec::Kind::Random;
  } else if (kind == "lb_joint") {
    spec.kind = GeneratorSpec::Kind::LbJoint;
  } else if (kind == "lb_marginal") {
    spec.kind = GeneratorSpec::Kind::LbMarginal;
  } else {
    throw std::invalid_argument("unknown generator kind: " + kind);
  }
  if (colon != std::string::npos) {
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad generator field: " + item);
      const std::string key = item.substr(0, eq);
      const int value = std::stoi(item.substr(eq + 1));
      if (key == "n") {
        spec.n = value;
      } else if (key == "k") {
        spec.k = value;
      } else if (key == "b") {
        spec.b = value;
      } else {
        throw std::invalid_argument("unknown generator field: " + key);
      }
    }
  }
  return spec;
}

ExchangeMarket generate(const GeneratorSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::Random:
      return gen_random(spec.n, spec.k, seed);
    case GeneratorSpec::Kind::LbJoint:
      return gen_lb_joint(spec.n, spec.b, seed);
    case GeneratorSpec::Kind::LbMarginal:
      return gen_lb_marginal(spec.n, spec.k, spec.b);
  }
  throw std::logic_error("generate: unreachable");
}

ExchangeMarket gen_random(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1) throw std::invalid_argument("gen_random: n and k must be positive");
  Rng rng(seed);
  ExchangeMarket m;
  m.k = k;
  m.agents.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Agent ag;
    ag.endowment = static_cast<GoodId>(rng.uniform_int(static_cast<std::uint64_t>(k)));
    std::vector<GoodId> ranking(static_cast<size_t>(k));
    for (GoodId g = 0; g < k; ++g) ranking[static_cast<size_t>(g)] = g;
    for (int pos = k - 1; pos > 0; --pos) {  // Fisher-Yates
      const auto j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(pos) + 1));
      std::swap(ranking[static_cast<size_t>(pos)], ranking[static_cast<size_t>(j)]);
    }
    ag.preference = Preference(std::move(ranking));
    m.agents.push_back(std::move(ag));
  }
  return m;
}

ExchangeMarket gen_lb_joint(int n, int b, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_lb_joint: n must be positive");
  if (b != 0 && b != 1) throw std::invalid_argument("gen_lb_joint: b must be 0 or 1");
  Rng rng(seed);
  const int distinguished = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));

  ExchangeMarket m;
  m.k = 2;
  m.agents.reserve(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    m.agents.push_back(Agent{1, Preference({0, 1})});
  }
  for (int i = 0; i < n; ++i) {
    if (i == distinguished) {
      const GoodId top = (b == 1) ? 1 : 0;
      m.agents.push_back(Agent{0, Preference({top, 1 - top})});
    } else {
      m.agents.push_back(Agent{0, Preference({1, 0})});
    }
  }
  return m;
}

ExchangeMarket gen_lb_marginal(int n, int k, int b) {
  if (k < 2 || n < k) throw std::invalid_argument("gen_lb_marginal: need n >= k >= 2");
  if (b != 0 && b != 1) throw std::invalid_argument("gen_lb_marginal: b must be 0 or 1");
  ExchangeMarket m;
  m.k = k;
  m.agents.reserve(static_cast<size_t>(n));
  for (GoodId i = 0; i < k - 1; ++i) {
    m.agents.push_back(Agent{i, with_prefix(k, i, {i + 1, i})});
  }
  if (b == 1) {
    m.agents.push_back(Agent{k - 1, with_prefix(k, k - 1, {0, k - 1})});
  } else {
    m.agents.push_back(Agent{k - 1, with_prefix(k, k - 1, {k - 1})});
  }
  for (int i = k; i < n; ++i) {
    m.agents.push_back(Agent{k - 1, with_prefix(k, k - 1, {k - 1})});
  }
  return m;
}

}  // namespace pttc
