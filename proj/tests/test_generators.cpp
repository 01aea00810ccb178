#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

TEST(Rng, PortableSequence) {
  // mt19937_64 is fully specified by the standard: the 10000th output of the
  // default-seeded engine is fixed.
  Rng r(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = r.next();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, BelowIsInRangeAndCoversIt) {
  Rng r(3);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) ++seen[r.below(7)];
  for (int v : seen) { EXPECT_GT(v, 800); }
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below128(static_cast<unsigned __int128>(1) << 100),
                                           static_cast<unsigned __int128>(1) << 100);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Uniform, TrivialAndDeterministic) {
  const Profile one = uniform_profile(1, 1, 99);
  EXPECT_EQ(one.total_weight(), 1);
  EXPECT_EQ(one.ballots()[0].ranking.top(), 0);
  EXPECT_EQ(uniform_profile(20, 5, 4), uniform_profile(20, 5, 4));
  EXPECT_NE(uniform_profile(20, 5, 4), uniform_profile(20, 5, 5));
  EXPECT_THROW(uniform_profile(0, 3, 1), Error);
}

std::map<std::vector<Candidate>, int> frequencies(const Profile& p) {
  std::map<std::vector<Candidate>, int> f;
  for (const auto& b : p.ballots()) f[{b.ranking.order().begin(), b.ranking.order().end()}] += static_cast<int>(b.weight);
  return f;
}

TEST(Uniform, FrequenciesNearUniform) {
  const auto f = frequencies(uniform_profile(6000, 3, 12345));
  ASSERT_EQ(f.size(), 6u);
  for (const auto& [r, n] : f) { EXPECT_NEAR(n / 6000.0, 1.0 / 6, 0.02); }
}

TEST(Urn, ZeroReplacementsIsUniform) {
  const auto f = frequencies(urn_profile(6000, 3, UrnParams{0, 12345}));
  ASSERT_EQ(f.size(), 6u);
  for (const auto& [r, n] : f) { EXPECT_NEAR(n / 6000.0, 1.0 / 6, 0.02); }
}

TEST(Urn, Deterministic) {
  EXPECT_EQ(urn_profile(30, 4, UrnParams{std::nullopt, 8}), urn_profile(30, 4, UrnParams{std::nullopt, 8}));
  EXPECT_THROW(urn_profile(3, 21, UrnParams{}), Error);
}

double repeat_rate(int m, int pairs) {
  int same = 0;
  for (int i = 0; i < pairs; ++i) {
    const Profile p = urn_profile(2, m, UrnParams{std::nullopt, derive_seed(2024, static_cast<std::uint64_t>(i))});
    same += p.ballots()[0].ranking == p.ballots()[1].ranking;
  }
  return static_cast<double>(same) / pairs;
}

TEST(Urn, RepeatProbabilityMatchesFormula) {
  // With a = m!, the second draw repeats the first with probability
  // (m! + 1) / (2 m!): one half from the copies plus the fresh-draw chance.
  for (int m : {3, 4}) {
    const double f = static_cast<double>(factorial(m));
    EXPECT_NEAR(repeat_rate(m, 40000), (f + 1) / (2 * f), 0.01) << "m=" << m;
  }
}

TEST(Fixtures, PartitionProfiles) {
  const auto cup = partition_fixture(FixtureKind::PluralityCupPartition, {1, 1, 2});
  EXPECT_EQ(cup.nm_profile.total_weight(), 18 * 2);
  EXPECT_EQ(cup.manip_weights, (std::vector<Weight>{2, 2, 4}));
  EXPECT_EQ(cup.preferred, fixture::c);
  EXPECT_EQ(cup.rule.tiebreak, TieBreakOrder({2, 0, 1}));

  const auto mm = partition_fixture(FixtureKind::MaximinPluralityPartition, {3, 5});
  const Weight K = 4;
  EXPECT_EQ(maximin_scores(pairwise_tally(mm.nm_profile)), (std::vector<Weight>{4 * K, 6 * K, 2 * K}));
  EXPECT_THROW(partition_fixture(FixtureKind::PluralityCupPartition, {}), Error);
  EXPECT_THROW(partition_fixture(FixtureKind::PluralityCupPartition, {0, 2}), Error);
  EXPECT_THROW(partition_fixture(FixtureKind::GreedyHardFamily, {1, 1}), Error);
}

TEST(Fixtures, OddSumDoublesWeights) {
  const auto inst = partition_fixture(FixtureKind::CopelandPluralityPartition, {1, 1, 1});
  EXPECT_EQ(inst.manip_weights, (std::vector<Weight>{4, 4, 4}));
  EXPECT_FALSE(brute_force_manipulate(inst).feasible);
}

TEST(Fixtures, HardFamilyShape) {
  EXPECT_EQ(greedy_hard_family(3).profile.size(), 4u);
  const auto f = greedy_hard_family(6);
  std::vector<int> vetoes(6, 0);
  for (const auto& b : f.profile.ballots()) ++vetoes[b.ranking.bottom()];
  EXPECT_EQ(vetoes[0], 2);
  for (int i = 1; i < 6; ++i) { EXPECT_EQ(vetoes[i], 1); }
  EXPECT_EQ(f.tiebreak, TieBreakOrder({0, 5, 4, 3, 2, 1}));
  EXPECT_THROW(greedy_hard_family(2), Error);
}

TEST(Fixtures, KindNames) {
  EXPECT_EQ(parse_fixture_kind("plurality-cup"), FixtureKind::PluralityCupPartition);
  EXPECT_EQ(parse_fixture_kind("greedy-hard"), FixtureKind::GreedyHardFamily);
  EXPECT_THROW(parse_fixture_kind("nope"), Error);
}

TEST(ProfileSpace, Counts) {
  int n = 0;
  for_each_tuple_profile(3, 2, [&](const Profile&) { return ++n, false; });
  EXPECT_EQ(n, 6 + 36);
  n = 0;
  for_each_multiset_profile(3, 2, [&](const Profile&) { return ++n, false; });
  EXPECT_EQ(n, 6 + 21);
  EXPECT_EQ(ProfileSpace({3, 3, true, 0, 1, 1}).tuple_count(), 258);
}

}  // namespace
}  // namespace runoff
