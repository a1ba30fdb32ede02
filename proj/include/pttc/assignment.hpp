#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pttc {

/// Min-cost max-flow (successive shortest paths with potentials).
/// Costs must be nonnegative. Sized for the small transportation graphs
/// this project builds (agent profiles x good types).
class MinCostFlow {
 public:
  explicit MinCostFlow(int node_count);

  /// Returns an edge id usable with flow_on().
  int add_edge(int from, int to, std::int64_t capacity, std::int64_t cost);

  /// Pushes as much flow as possible from source to sink, cheapest
  /// paths first. Returns {flow, total cost}.
  std::pair<std::int64_t, std::int64_t> solve(int source, int sink);

  std::int64_t flow_on(int edge_id) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    std::int64_t cost;
    int rev;
  };
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> edge_refs_;  // (node, index in adj_[node])
};

}  // namespace pttc
