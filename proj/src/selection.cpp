#include "pttc/selection.hpp"

#include <stdexcept>

namespace pttc {

std::vector<int> r_select(int count, const std::vector<int>& pool, Rng& rng, int* sigma_out) {
  const int size = static_cast<int>(pool.size());
  if (count < 0) throw std::invalid_argument("r_select: negative count");
  if (count > size) {
    throw std::invalid_argument("r_select: cannot select more agents than the arc holds");
  }
  int sigma = 0;
  if (size > 0) sigma = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(size)));
  if (sigma_out != nullptr) *sigma_out = sigma;

  std::vector<int> selected;
  selected.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    selected.push_back(pool[static_cast<size_t>((sigma + i) % size)]);
  }
  return selected;
}

}  // namespace pttc
