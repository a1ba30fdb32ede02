#include "pttc/selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <stdexcept>

#include "doctest.h"

using namespace pttc;

TEST_SUITE("selection") {

TEST_CASE("full selection returns everyone") {
  const std::vector<int> pool{4, 9, 2, 7};
  Rng rng(1);
  auto s = r_select(4, pool, rng);
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<int>{2, 4, 7, 9});
}

TEST_CASE("zero selection returns nothing") {
  const std::vector<int> pool{1, 2, 3};
  Rng rng(1);
  CHECK(r_select(0, pool, rng).empty());
  Rng rng2(1);
  CHECK(r_select(0, {}, rng2).empty());
}

TEST_CASE("window follows the drawn shift") {
  // Hand-traced windows on [a,b,c,d,e]: shift 3 -> {d,e}, shift 4 -> {e,a}.
  const std::vector<int> pool{10, 11, 12, 13, 14};  // a..e
  bool saw_shift3 = false, saw_shift4 = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng probe(seed);
    const int sigma = static_cast<int>(probe.uniform_int(pool.size()));
    Rng rng(seed);
    int reported = -1;
    const auto s = r_select(2, pool, rng, &reported);
    CHECK(reported == sigma);
    CHECK(s == std::vector<int>{pool[static_cast<size_t>(sigma)],
                                pool[static_cast<size_t>((sigma + 1) % 5)]});
    if (sigma == 3) {
      saw_shift3 = true;
      CHECK(s == std::vector<int>{13, 14});
    }
    if (sigma == 4) {
      saw_shift4 = true;
      CHECK(s == std::vector<int>{14, 10});
    }
  }
  CHECK(saw_shift3);
  CHECK(saw_shift4);
}

TEST_CASE("selecting more than the pool throws") {
  Rng rng(0);
  CHECK_THROWS_AS(r_select(3, {1, 2}, rng), std::invalid_argument);
  CHECK_THROWS_AS(r_select(-1, {1, 2}, rng), std::invalid_argument);
}

TEST_CASE("inclusion frequency is count over pool size") {
  // This marginal probability is the quantity the selection step's
  // privacy argument rests on.
  const std::vector<int> pool{0, 1, 2, 3, 4, 5, 6};
  const int count = 3;
  const int trials = 100000;
  std::vector<int> hits(pool.size(), 0);
  Rng rng(77);
  for (int t = 0; t < trials; ++t) {
    for (int agent : r_select(count, pool, rng)) ++hits[static_cast<size_t>(agent)];
  }
  const double p = static_cast<double>(count) / static_cast<double>(pool.size());
  const double sd = std::sqrt(p * (1.0 - p) / trials);
  for (int agent = 0; agent < 7; ++agent) {
    const double freq = static_cast<double>(hits[static_cast<size_t>(agent)]) / trials;
    CHECK(std::abs(freq - p) <= 3.0 * sd);
  }
}

TEST_CASE("selected positions form a cyclic interval") {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const int size = 1 + static_cast<int>(rng.uniform_int(10));
    const int count = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(size) + 1));
    std::vector<int> pool(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) pool[static_cast<size_t>(i)] = 100 + i;
    int sigma = -1;
    const auto s = r_select(count, pool, rng, &sigma);
    REQUIRE(static_cast<int>(s.size()) == count);
    std::set<int> uniq(s.begin(), s.end());
    CHECK(static_cast<int>(uniq.size()) == count);
    for (int i = 0; i < count; ++i) {
      CHECK(s[static_cast<size_t>(i)] == pool[static_cast<size_t>((sigma + i) % size)]);
    }
  }
}

}  // TEST_SUITE
