#pragma once

#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "runoff/manipulation.hpp"
#include "runoff/random.hpp"

namespace runoff {

inline Ranking random_ranking(int m, Rng& rng) {
  std::vector<Candidate> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.below_int(i + 1)]);
  return Ranking(std::move(order));
}

// n independent uniformly random rankings, unit weights.
inline Profile uniform_profile(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw Error("uniform_profile needs n, m >= 1");
  Rng rng(seed);
  Profile p(m);
  for (int v = 0; v < n; ++v) p.add(random_ranking(m, rng));
  return p;
}

struct UrnParams {
  std::optional<std::uint64_t> replacements;  // a; defaults to m!
  std::uint64_t seed = 0;
};

inline std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Polya-Eggenberger urn: the urn starts with every ranking once; each drawn
// ranking is returned together with `a` extra copies. The urn is kept
// implicitly as (all m! rankings) + (a copies of every earlier draw), so a
// draw is a fresh uniform ranking with probability m!/(m! + a t) and a copy
// of a uniformly chosen earlier draw otherwise.
inline Profile urn_profile(int n, int m, const UrnParams& params) {
  if (n < 1 || m < 1) throw Error("urn_profile needs n, m >= 1");
  if (m > 20) throw Error("urn_profile supports at most 20 candidates");
  const std::uint64_t base = factorial(m);
  const std::uint64_t a = params.replacements.value_or(base);
  Rng rng(params.seed);
  std::vector<Ranking> drawn;
  Profile p(m);
  for (int t = 0; t < n; ++t) {
    const unsigned __int128 size = static_cast<unsigned __int128>(base) + static_cast<unsigned __int128>(a) * t;
    const unsigned __int128 ball = rng.below128(size);
    Ranking r = ball < base ? random_ranking(m, rng) : drawn[static_cast<std::size_t>((ball - base) / a)];
    drawn.push_back(r);
    p.add(std::move(r));
  }
  return p;
}

enum class FixtureKind {
  PluralityCupPartition,
  CopelandPluralityPartition,
  MaximinPluralityPartition,
  GreedyHardFamily,
  Monotonicity,
};

inline FixtureKind parse_fixture_kind(const std::string& s) {
  if (s == "plurality-cup") return FixtureKind::PluralityCupPartition;
  if (s == "copeland-plurality") return FixtureKind::CopelandPluralityPartition;
  if (s == "maximin-plurality") return FixtureKind::MaximinPluralityPartition;
  if (s == "greedy-hard") return FixtureKind::GreedyHardFamily;
  if (s == "monotonicity") return FixtureKind::Monotonicity;
  throw Error("unknown fixture '" + s +
              "' (plurality-cup, copeland-plurality, maximin-plurality, greedy-hard, monotonicity)");
}

namespace fixture {
inline constexpr Candidate a = 0, b = 1, c = 2;
}

// 6 b>c>a, 4 c>a>b, 3 a>b>c, 3 a>c>b over a=0, b=1, c=2; tie-break c>a>b.
// Plurality and Borda are both monotonic here but plurality+borda is not.
inline Profile monotonicity_profile() {
  using namespace fixture;
  Profile p(3);
  p.add({b, c, a}, 6);
  p.add({c, a, b}, 4);
  p.add({a, b, c}, 3);
  p.add({a, c, b}, 3);
  return p;
}

inline TieBreakOrder monotonicity_tiebreak() { return TieBreakOrder({fixture::c, fixture::a, fixture::b}); }

// Three-candidate elections whose manipulability is equivalent to splitting
// `integers` into two halves of equal sum. Candidates a=0, b=1, c=2; the
// coalition has one manipulator of weight 2k_i per integer and prefers c;
// tie-break c>a>b. With K = sum/2: plurality+cup uses
// 4K a>b>c, 4K a>c>b, K b>a>c, 9K b>c>a; copeland+plurality uses
// 7K b>c>a, K b>a>c, 4K a>c>b, 2K a>b>c, 1 c>a>b; maximin+plurality uses
// 4K b>c>a, 2K b>c>a, 2K a>b>c, 2K a>c>b. An odd sum doubles the integers
// so K stays integral.
inline ManipulationInstance partition_fixture(FixtureKind kind, std::vector<Weight> integers) {
  using namespace fixture;
  if (integers.empty()) throw Error("partition fixture needs at least one integer");
  Weight sum = 0;
  for (Weight v : integers) {
    if (v < 1) throw Error("partition fixture integers must be positive");
    sum += v;
  }
  if (sum % 2 != 0) {
    // Doubling the integers keeps the answer (no equal split) and makes K whole.
    std::cerr << "warning: integers sum to an odd number; the instance cannot be manipulated\n";
    for (Weight& v : integers) v *= 2;
    sum *= 2;
  }
  const Weight K = sum / 2;

  ManipulationInstance inst;
  inst.preferred = c;
  inst.nm_profile = Profile(3);
  Profile& p = inst.nm_profile;
  const TieBreakOrder tb({c, a, b});
  switch (kind) {
    case FixtureKind::PluralityCupPartition:
      p.add({a, b, c}, 4 * K);
      p.add({a, c, b}, 4 * K);
      p.add({b, a, c}, K);
      p.add({b, c, a}, 9 * K);
      inst.rule = CombinedRule({RuleSpec::plurality(), RuleSpec::cup()}, tb);
      break;
    case FixtureKind::CopelandPluralityPartition:
      p.add({b, c, a}, 7 * K);
      p.add({b, a, c}, K);
      p.add({a, c, b}, 4 * K);
      p.add({a, b, c}, 2 * K);
      p.add({c, a, b}, 1);
      inst.rule = CombinedRule({RuleSpec::copeland(), RuleSpec::plurality()}, tb);
      break;
    case FixtureKind::MaximinPluralityPartition:
      p.add({b, c, a}, 4 * K);
      p.add({b, c, a}, 2 * K);
      p.add({a, b, c}, 2 * K);
      p.add({a, c, b}, 2 * K);
      inst.rule = CombinedRule({RuleSpec::maximin(), RuleSpec::plurality()}, tb);
      break;
    default: throw Error("not a partition fixture");
  }
  for (Weight v : integers) inst.manip_weights.push_back(2 * v);
  return inst;
}

struct HardFamily {
  Profile profile;
  TieBreakOrder tiebreak;
};

// Candidates c_0..c_{n-1} as ids 0..n-1: the n cyclic rotations of
// c_0 > c_1 > ... > c_{n-1} plus one c_{n-1} > ... > c_1 > c_0, tie-break
// c_0 > c_{n-1} > ... > c_1. Preferred candidate is c_0.
inline HardFamily greedy_hard_family(int n) {
  if (n < 3) throw Error("greedy_hard_family needs n >= 3");
  HardFamily f{Profile(n), {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Candidate> order(n);
    for (int p = 0; p < n; ++p) order[p] = (i + p) % n;
    f.profile.add(std::move(order));
  }
  std::vector<Candidate> rev(n);
  for (int p = 0; p < n; ++p) rev[p] = n - 1 - p;
  f.profile.add(rev);
  std::vector<Candidate> tb{0};
  for (int x = n - 1; x >= 1; --x) tb.push_back(x);
  f.tiebreak = TieBreakOrder(std::move(tb));
  return f;
}

}  // namespace runoff
