#pragma once

#include <cstdint>
#include <vector>

#include "runoff/generators.hpp"

namespace runoff {

// Finite or sampled families of small profiles used by the exhaustive checks.
struct ProfileSpace {
  int m = 3;
  int max_ballots = 3;       // profiles with 1..max_ballots ballots
  bool exhaustive = true;
  std::uint64_t samples = 500;
  std::uint64_t seed = 1;
  Weight max_weight = 1;     // sampled profiles draw weights in [1, max_weight]

  static constexpr double kExhaustiveCap = 1e7;

  // (m!)^1 + ... + (m!)^max_ballots ordered ballot tuples.
  double tuple_count() const {
    const double r = static_cast<double>(factorial(m));
    double total = 0, power = 1;
    for (int n = 1; n <= max_ballots; ++n) total += (power *= r);
    return total;
  }

  bool enumerable() const { return exhaustive && max_weight == 1 && tuple_count() <= kExhaustiveCap; }
};

// Calls fn(profile) for every ordered tuple of 1..n unit ballots over m
// candidates, shorter tuples first, each length in lexicographic order.
// Stops early when fn returns true; returns whether it stopped.
template <typename Fn>
bool for_each_tuple_profile(int m, int n, Fn&& fn) {
  const auto rankings = all_rankings(m);
  const int r = static_cast<int>(rankings.size());
  for (int len = 1; len <= n; ++len) {
    std::vector<int> idx(len, 0);
    while (true) {
      Profile p(m);
      for (int i : idx) p.add(rankings[i]);
      if (fn(p)) return true;
      int pos = len - 1;
      while (pos >= 0 && ++idx[pos] == r) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return false;
}

// Same, but each multiset of rankings appears once (non-decreasing indices).
template <typename Fn>
bool for_each_multiset_profile(int m, int n, Fn&& fn) {
  const auto rankings = all_rankings(m);
  const int r = static_cast<int>(rankings.size());
  for (int len = 1; len <= n; ++len) {
    std::vector<int> idx(len, 0);
    while (true) {
      Profile p(m);
      for (int i : idx) p.add(rankings[i]);
      if (fn(p)) return true;
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == r - 1) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < len; ++q) idx[q] = idx[pos];
    }
  }
  return false;
}

// The i-th sampled profile of a space: size uniform in [1, max_ballots],
// rankings uniform, weights uniform in [1, max_weight].
inline Profile sample_profile(const ProfileSpace& space, std::uint64_t index) {
  Rng rng(derive_seed(space.seed, index));
  const int n = 1 + rng.below_int(space.max_ballots);
  Profile p(space.m);
  for (int v = 0; v < n; ++v) {
    Ranking r = random_ranking(space.m, rng);
    p.add(std::move(r), 1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(space.max_weight))));
  }
  return p;
}

// Enumerates the space if it is small enough, otherwise samples it.
template <typename Fn>
bool for_each_profile(const ProfileSpace& space, Fn&& fn) {
  if (space.enumerable()) return for_each_tuple_profile(space.m, space.max_ballots, fn);
  for (std::uint64_t i = 0; i < space.samples; ++i) {
    if (fn(sample_profile(space, i))) return true;
  }
  return false;
}

}  // namespace runoff
