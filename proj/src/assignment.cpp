#include "pttc/assignment.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace pttc {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

MinCostFlow::MinCostFlow(int node_count) : adj_(static_cast<size_t>(node_count)) {}

int MinCostFlow::add_edge(int from, int to, std::int64_t capacity, std::int64_t cost) {
  if (cost < 0) throw std::invalid_argument("MinCostFlow: negative cost");
  Edge fwd{to, capacity, cost, static_cast<int>(adj_[static_cast<size_t>(to)].size())};
  Edge bwd{from, 0, -cost, static_cast<int>(adj_[static_cast<size_t>(from)].size())};
  adj_[static_cast<size_t>(from)].push_back(fwd);
  adj_[static_cast<size_t>(to)].push_back(bwd);
  edge_refs_.emplace_back(from, static_cast<int>(adj_[static_cast<size_t>(from)].size()) - 1);
  return static_cast<int>(edge_refs_.size()) - 1;
}

std::pair<std::int64_t, std::int64_t> MinCostFlow::solve(int source, int sink) {
  const size_t n = adj_.size();
  std::vector<std::int64_t> potential(n, 0);
  std::int64_t total_flow = 0;
  std::int64_t total_cost = 0;

  for (;;) {
    // Dijkstra over reduced costs.
    std::vector<std::int64_t> dist(n, kInf);
    std::vector<int> prev_node(n, -1), prev_edge(n, -1);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<size_t>(source)] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(u)]) continue;
      const auto& edges = adj_[static_cast<size_t>(u)];
      for (int idx = 0; idx < static_cast<int>(edges.size()); ++idx) {
        const Edge& e = edges[static_cast<size_t>(idx)];
        if (e.cap <= 0) continue;
        const std::int64_t nd =
            d + e.cost + potential[static_cast<size_t>(u)] - potential[static_cast<size_t>(e.to)];
        if (nd < dist[static_cast<size_t>(e.to)]) {
          dist[static_cast<size_t>(e.to)] = nd;
          prev_node[static_cast<size_t>(e.to)] = u;
          prev_edge[static_cast<size_t>(e.to)] = idx;
          heap.emplace(nd, e.to);
        }
      }
    }
    if (dist[static_cast<size_t>(sink)] >= kInf) break;
    for (size_t v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    // Bottleneck along the shortest path, then augment.
    std::int64_t push = kInf;
    for (int v = sink; v != source; v = prev_node[static_cast<size_t>(v)]) {
      const Edge& e =
          adj_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])][static_cast<size_t>(
              prev_edge[static_cast<size_t>(v)])];
      push = std::min(push, e.cap);
    }
    for (int v = sink; v != source; v = prev_node[static_cast<size_t>(v)]) {
      Edge& e = adj_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])][static_cast<size_t>(
          prev_edge[static_cast<size_t>(v)])];
      e.cap -= push;
      adj_[static_cast<size_t>(e.to)][static_cast<size_t>(e.rev)].cap += push;
      total_cost += push * e.cost;
    }
    total_flow += push;
  }
  return {total_flow, total_cost};
}

std::int64_t MinCostFlow::flow_on(int edge_id) const {
  const auto [node, idx] = edge_refs_[static_cast<size_t>(edge_id)];
  const Edge& e = adj_[static_cast<size_t>(node)][static_cast<size_t>(idx)];
  // Flow already pushed shows up as capacity on the reverse edge.
  return adj_[static_cast<size_t>(e.to)][static_cast<size_t>(e.rev)].cap;
}

}  // namespace pttc
