#include "pttc/trading_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pttc/privacy.hpp"
#include "pttc/selection.hpp"

namespace pttc {

namespace {

bool eligible(const Arc& a) { return std::floor(a.noisy_weight) >= 1.0; }

/// Favorite good among the remaining nodes under pref.
GoodId favorite_remaining(const Preference& pref, const std::set<GoodId>& remaining) {
  for (GoodId g : pref.ranking()) {
    if (remaining.count(g) != 0) return g;
  }
  throw std::logic_error("trade graph: no remaining good to point at");
}

void insert_sorted(std::vector<int>& members, int agent) {
  members.insert(std::upper_bound(members.begin(), members.end(), agent), agent);
}

}  // namespace

double TradeGraph::noisy_out_sum(GoodId v) const {
  double sum = 0.0;
  for (GoodId w : remaining) sum += arc_at(v, w).noisy_weight;
  return sum;
}

TradeGraph build_graph(const ExchangeMarket& m) {
  TradeGraph g;
  g.market = &m;
  g.k = m.k;
  for (GoodId u = 0; u < m.k; ++u) g.remaining.insert(u);
  for (GoodId u = 0; u < m.k; ++u) {
    for (GoodId v = 0; v < m.k; ++v) {
      g.arcs.emplace(ArcKey{u, v}, Arc{u, v, {}, 0.0});
    }
  }
  for (int i = 0; i < m.n(); ++i) {
    const Agent& ag = m.agents[static_cast<size_t>(i)];
    g.arc_at(ag.endowment, ag.preference.top()).members.push_back(i);
  }
  return g;
}

double noisy_weight(int exact_weight, double z, double noise_bound) {
  return std::max(static_cast<double>(exact_weight) + z - 2.0 * noise_bound, 0.0);
}

std::vector<NoiseDraw> apply_round_noise(TradeGraph& g, int round, double scale,
                                         double noise_bound, Rng& rng, bool zero_noise) {
  std::vector<NoiseDraw> draws;
  for (auto& [key, arc] : g.arcs) {
    double z = 0.0;
    if (!zero_noise) {
      z = sample_laplace(scale, rng);
      draws.push_back(NoiseDraw{round, key, z});
    }
    arc.noisy_weight = noisy_weight(arc.exact_weight(), z, zero_noise ? 0.0 : noise_bound);
  }
  return draws;
}

std::optional<Cycle> find_cycle(const TradeGraph& g) {
  enum class Color { White, Gray, Black };
  std::map<GoodId, Color> color;
  for (GoodId v : g.remaining) color[v] = Color::White;

  const std::vector<GoodId> nodes(g.remaining.begin(), g.remaining.end());
  std::vector<GoodId> path;

  // Iterative DFS; succ_pos[d] walks node d's successors in id order.
  for (GoodId start : nodes) {
    if (color[start] != Color::White) continue;
    path.clear();
    std::vector<size_t> succ_pos;
    path.push_back(start);
    succ_pos.push_back(0);
    color[start] = Color::Gray;
    while (!path.empty()) {
      const GoodId u = path.back();
      bool advanced = false;
      for (size_t& pos = succ_pos.back(); pos < nodes.size(); ++pos) {
        const GoodId v = nodes[pos];
        if (!eligible(g.arc_at(u, v))) continue;
        if (color[v] == Color::Gray) {
          // Back edge: the cycle is the path from v onward, plus (u, v).
          Cycle c;
          auto it = std::find(path.begin(), path.end(), v);
          for (auto node = it; node + 1 != path.end(); ++node) {
            c.arcs.push_back({*node, *(node + 1)});
          }
          c.arcs.push_back({u, v});
          return c;
        }
        if (color[v] == Color::White) {
          ++pos;  // resume after v when we pop back to u
          path.push_back(v);
          succ_pos.push_back(0);
          color[v] = Color::Gray;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        color[u] = Color::Black;
        path.pop_back();
        succ_pos.pop_back();
      }
    }
  }
  return std::nullopt;
}

int cycle_capacity(const TradeGraph& g, const Cycle& c) {
  if (c.arcs.empty()) throw std::invalid_argument("cycle_capacity: empty cycle");
  int capacity = 0;
  bool first = true;
  for (const ArcKey& key : c.arcs) {
    const double floored = std::floor(g.arcs.at(key).noisy_weight);
    if (floored < 1.0) {
      throw std::invalid_argument("cycle_capacity: cycle arc has floor(noisy weight) < 1");
    }
    const int w = static_cast<int>(floored);
    capacity = first ? w : std::min(capacity, w);
    first = false;
  }
  return capacity;
}

TradeResult execute_trade(TradeGraph& g, const Cycle& c, int volume, Rng& rng) {
  TradeResult result;
  for (const ArcKey& key : c.arcs) {
    if (volume > g.arcs.at(key).exact_weight()) {
      result.ir_abort = true;  // more trades promised than agents exist
      return result;
    }
  }
  for (const ArcKey& key : c.arcs) {
    Arc& arc = g.arcs.at(key);
    int sigma = 0;
    std::vector<int> chosen = r_select(volume, arc.members, rng, &sigma);
    for (int agent : chosen) result.assignments.emplace_back(agent, arc.to);

    // The selection is a cyclic window [sigma, sigma+volume); keep the
    // rest in one pass, preserving member order.
    const int size = arc.exact_weight();
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(size - volume));
    for (int pos = 0; pos < size; ++pos) {
      const int offset = (pos - sigma + size) % size;
      if (offset >= volume) rest.push_back(arc.members[static_cast<size_t>(pos)]);
    }
    arc.members = std::move(rest);

    arc.noisy_weight -= volume;
    result.selected.emplace_back(key, std::move(chosen));
    result.sigmas.push_back(sigma);
  }
  return result;
}

DeletionResult delete_node(TradeGraph& g) {
  if (g.remaining.empty()) throw std::logic_error("delete_node: graph already empty");

  DeletionResult result;
  bool first = true;
  for (GoodId v : g.remaining) {
    const double sum = g.noisy_out_sum(v);
    if (first || sum < result.noisy_out_sum) {
      result.node = v;
      result.noisy_out_sum = sum;
      first = false;
    }
  }
  result.sum_below_k = result.noisy_out_sum < static_cast<double>(g.k);

  const GoodId victim = result.node;

  // Agents still endowed with the victim keep their own good.
  for (GoodId w : g.remaining) {
    for (int agent : g.arc_at(victim, w).members) {
      result.assignments.emplace_back(agent, victim);
    }
  }

  // Agents that pointed at the victim must re-point after it is gone.
  std::vector<int> displaced;
  for (GoodId u : g.remaining) {
    if (u == victim) continue;
    auto& members = g.arc_at(u, victim).members;
    displaced.insert(displaced.end(), members.begin(), members.end());
  }

  g.remaining.erase(victim);
  for (auto it = g.arcs.begin(); it != g.arcs.end();) {
    if (it->first.first == victim || it->first.second == victim) {
      it = g.arcs.erase(it);
    } else {
      ++it;
    }
  }

  for (int agent : displaced) {
    const Agent& ag = g.market->agents[static_cast<size_t>(agent)];
    const GoodId target = favorite_remaining(ag.preference, g.remaining);
    insert_sorted(g.arc_at(ag.endowment, target).members, agent);
  }
  return result;
}

}  // namespace pttc
