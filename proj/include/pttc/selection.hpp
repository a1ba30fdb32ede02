#pragma once

#include <vector>

#include "pttc/rng.hpp"

namespace pttc {

/// Picks exactly count agents from the ordered list as a cyclic window:
/// a uniform shift sigma in [0, |pool|) followed by the next count
/// positions, wrapping around. Each fixed agent lands in the window with
/// probability count/|pool|. Returns the selected agents in window
/// order; sigma_out (when given) receives the drawn shift.
/// Throws std::invalid_argument when count is negative or exceeds |pool|.
std::vector<int> r_select(int count, const std::vector<int>& pool, Rng& rng,
                          int* sigma_out = nullptr);

}  // namespace pttc
