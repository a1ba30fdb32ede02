#pragma once

#include "pttc/market.hpp"

namespace pttc {

/// Rank weight of good j for agent i: k - r + 1 when j is the r-th
/// choice (1-based) and weakly preferred to the endowment; 0 when the
/// edge is forbidden by individual rationality.
int rank_weight(const ExchangeMarket& m, int agent, GoodId j);

/// Total rank weight of an allocation under the same scheme.
long long rank_objective(const ExchangeMarket& m, const Allocation& a);

/// Exact non-private oracle: expands each good type into its copies and
/// solves the max-weight assignment over IR-feasible edges. The result
/// is individually rational and exactly Pareto optimal.
Allocation ip_allocate(const ExchangeMarket& m);

}  // namespace pttc
