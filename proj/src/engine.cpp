#include "pttc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pttc {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_arc(const ArcKey& a) {
  return std::to_string(a.first) + "->" + std::to_string(a.second);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

PttcResult run_engine(const ExchangeMarket& m, double scale, double noise_bound,
                      bool zero_noise, Rng& rng) {
  if (auto violation = validate_market(m)) {
    throw std::invalid_argument("run_pttc: " + *violation);
  }
  const int k = m.k;
  const int n = m.n();

  PttcResult result;
  RunTrace& trace = result.trace;
  trace.zero_noise = zero_noise;
  trace.noise_bound = zero_noise ? 0.0 : noise_bound;

  std::vector<GoodId> out(static_cast<size_t>(n), -1);
  int unassigned = n;
  TradeGraph graph = build_graph(m);

  const auto finish_identity = [&] {
    trace.aborted = true;
    result.allocation = Allocation::identity(m);
  };
  const auto assign = [&](int agent, GoodId good) {
    out[static_cast<size_t>(agent)] = good;
    --unassigned;
  };

  int round = 0;
  while (!graph.empty()) {
    ++round;
    if (round > k) throw std::logic_error("run_pttc: round count exceeded k");
    trace.rounds = round;

    for (const NoiseDraw& d : apply_round_noise(graph, round, scale, noise_bound, rng, zero_noise)) {
      trace.max_abs_noise = std::max(trace.max_abs_noise, std::abs(d.value));
      trace.events.push_back(RunTrace::NoiseEvent{d.round, d.arc, d.value});
    }

    int tau = 0;
    while (auto cycle = find_cycle(graph)) {
      ++tau;
      if (tau > k * k) throw std::logic_error("run_pttc: cycle count exceeded k^2 in one round");
      const int capacity = cycle_capacity(graph, *cycle);
      TradeResult trade = execute_trade(graph, *cycle, capacity, rng);
      if (trade.ir_abort) {
        finish_identity();
        return result;
      }
      trace.events.push_back(RunTrace::CycleEvent{round, tau, cycle->arcs, capacity});
      for (size_t e = 0; e < trade.selected.size(); ++e) {
        auto [arc, agents] = trade.selected[e];
        std::sort(agents.begin(), agents.end());
        trace.events.push_back(
            RunTrace::SelectEvent{round, tau, arc, trade.sigmas[e], std::move(agents)});
      }
      for (const auto& [agent, good] : trade.assignments) assign(agent, good);
    }
    trace.total_cycles += tau;
    trace.max_cycles_in_round = std::max(trace.max_cycles_in_round, tau);

    if (unassigned == 0) break;  // nothing left to route via deletions

    const DeletionResult deletion = delete_node(graph);
    if (!deletion.sum_below_k) {
      // The noisy bookkeeping is out of whack; fall back to endowments.
      trace.noise_bound_violated = true;
      finish_identity();
      return result;
    }
    trace.events.push_back(RunTrace::DeleteEvent{round, deletion.node});
    for (const auto& [agent, good] : deletion.assignments) assign(agent, good);
  }

  for (int i = 0; i < n; ++i) {
    if (out[static_cast<size_t>(i)] < 0) out[static_cast<size_t>(i)] = m.agents[static_cast<size_t>(i)].endowment;
  }
  result.allocation = Allocation{std::move(out)};
  return result;
}

}  // namespace

std::string RunTrace::export_text() const {
  std::ostringstream out;
  for (const Event& event : events) {
    std::visit(Overloaded{
                   [&](const NoiseEvent& e) {
                     out << "NOISE " << e.round << ' ' << fmt_arc(e.arc) << ' '
                         << fmt_double(e.z) << '\n';
                   },
                   [&](const CycleEvent& e) {
                     out << "CYCLE " << e.round << ' ' << e.tau << ' ';
                     for (size_t i = 0; i < e.arcs.size(); ++i) {
                       if (i > 0) out << ',';
                       out << fmt_arc(e.arcs[i]);
                     }
                     out << ' ' << e.capacity << '\n';
                   },
                   [&](const SelectEvent& e) {
                     out << "SELECT " << e.round << ' ' << e.tau << ' ' << fmt_arc(e.arc) << ' ';
                     for (size_t i = 0; i < e.agents.size(); ++i) {
                       if (i > 0) out << ',';
                       out << e.agents[i];
                     }
                     out << '\n';
                   },
                   [&](const DeleteEvent& e) {
                     out << "DELETE " << e.round << ' ' << e.node << '\n';
                   },
               },
               event);
  }
  if (aborted) out << "ABORT\n";
  return out.str();
}

PttcResult run_pttc(const ExchangeMarket& m, const PttcConfig& cfg) {
  Rng rng(cfg.seed);
  if (cfg.zero_noise_mode) {
    return run_engine(m, 1.0, 0.0, /*zero_noise=*/true, rng);
  }
  if (cfg.budget.k != m.k) {
    throw std::invalid_argument("run_pttc: budget.k does not match the market's good count");
  }
  const double scale = 1.0 / eps_prime(cfg.budget);
  const double bound = noise_bound_E(cfg.budget);
  return run_engine(m, scale, bound, /*zero_noise=*/false, rng);
}

Allocation run_exact_ttc(const ExchangeMarket& m, Rng& rng) {
  return run_engine(m, 1.0, 0.0, /*zero_noise=*/true, rng).allocation;
}

}  // namespace pttc
