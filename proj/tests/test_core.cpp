#include <gtest/gtest.h>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

using fixture::a;
using fixture::b;
using fixture::c;

TEST(Ranking, RejectsNonPermutations) {
  EXPECT_THROW(Ranking({0, 0, 1}), Error);
  EXPECT_THROW(Ranking({0, 3, 1}), Error);
  EXPECT_THROW(Ranking(std::vector<Candidate>{}), Error);
  const Ranking r({2, 0, 1});
  EXPECT_EQ(r.top(), 2);
  EXPECT_EQ(r.bottom(), 1);
  EXPECT_EQ(r.position_of(0), 1);
  EXPECT_TRUE(r.prefers(2, 1));
}

TEST(Profile, RejectsBadBallots) {
  Profile p(3);
  EXPECT_THROW(p.add({0, 1}), Error);
  EXPECT_THROW(p.add({0, 1, 2}, 0), Error);
  p.add({0, 1, 2}, 2);
  p.add({2, 1, 0});
  EXPECT_EQ(p.total_weight(), 3);
  EXPECT_EQ(p.size(), 2u);
}

TEST(Tally, MonotonicityProfile) {
  const auto t = pairwise_tally(monotonicity_profile());
  EXPECT_EQ(t(c, a), 10);
  EXPECT_EQ(t(a, c), 6);
  EXPECT_EQ(t(a, b), 10);
  EXPECT_EQ(t(b, c), 9);
  EXPECT_TRUE(t.beats(c, a));
  EXPECT_FALSE(t.beats(a, c));
  EXPECT_THROW(t.beats(a, a), Error);
}

TEST(Tally, SingleBallot) {
  Profile p(3);
  p.add({a, b, c});
  const auto t = pairwise_tally(p);
  EXPECT_EQ(t(a, b), 1);
  EXPECT_EQ(t(a, c), 1);
  EXPECT_EQ(t(b, c), 1);
  EXPECT_EQ(t(b, a), 0);
  EXPECT_EQ(t(c, a), 0);
  EXPECT_EQ(t(c, b), 0);
}

TEST(Tally, ExactTieBeatsNeither) {
  Profile p(2);
  p.add({0, 1});
  p.add({1, 0});
  const auto t = pairwise_tally(p);
  EXPECT_FALSE(t.beats(0, 1));
  EXPECT_FALSE(t.beats(1, 0));
}

TEST(Tally, EntriesSumToTotalWeight) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ProfileSpace space{5, 7, false, 1, seed, 4};
    const Profile p = sample_profile(space, seed);
    const auto t = pairwise_tally(p);
    for (Candidate i = 0; i < 5; ++i) {
      EXPECT_EQ(t(i, i), 0);
      for (Candidate j = 0; j < 5; ++j)
        if (i != j) { EXPECT_EQ(t(i, j) + t(j, i), p.total_weight()); }
    }
  }
}

TEST(Tally, AdditiveOverProfiles) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ProfileSpace space{4, 6, false, 1, seed, 3};
    const Profile p = sample_profile(space, 2 * seed), q = sample_profile(space, 2 * seed + 1);
    Profile joined = p;
    joined.append(q);
    auto sum = pairwise_tally(p);
    sum += pairwise_tally(q);
    const auto direct = pairwise_tally(joined);
    for (Candidate i = 0; i < 4; ++i)
      for (Candidate j = 0; j < 4; ++j) { EXPECT_EQ(sum(i, j), direct(i, j)); }
  }
}

TEST(Tally, WeightedEqualsUnrolled) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ProfileSpace space{4, 5, false, 1, seed, 5};
    const Profile p = sample_profile(space, seed);
    Profile unrolled(4);
    for (const auto& bl : p.ballots())
      for (Weight w = 0; w < bl.weight; ++w) unrolled.add(bl.ranking);
    const auto t1 = pairwise_tally(p), t2 = pairwise_tally(unrolled);
    for (Candidate i = 0; i < 4; ++i)
      for (Candidate j = 0; j < 4; ++j) { EXPECT_EQ(t1(i, j), t2(i, j)); }
  }
}

TEST(Restrict, KeepsOrder) {
  Profile p(3);
  p.add({a, b, c});
  const Candidate keep[] = {a, c};
  const auto r = restrict_profile(p, keep);
  ASSERT_EQ(r.profile.candidates(), 2);
  EXPECT_EQ(r.to_original[r.profile.ballots()[0].ranking.top()], a);
  EXPECT_EQ(r.to_original[r.profile.ballots()[0].ranking.bottom()], c);
}

TEST(Restrict, MonotonicityProfileToAC) {
  const Candidate keep[] = {a, c};
  const auto r = restrict_profile(monotonicity_profile(), keep);
  EXPECT_EQ(r.profile.total_weight(), 16);
  const auto t = pairwise_tally(r.profile);
  EXPECT_EQ(t(r.to_restricted[c], r.to_restricted[a]), 10);
}

TEST(Restrict, AllCandidatesIsIdentity) {
  const Candidate keep[] = {0, 1, 2};
  const Profile p = monotonicity_profile();
  EXPECT_EQ(restrict_profile(p, keep).profile, p);
}

TEST(Restrict, EmptyKeepRejected) {
  EXPECT_THROW(restrict_profile(monotonicity_profile(), std::span<const Candidate>{}), Error);
}

TEST(Restrict, CommutesWithTally) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ProfileSpace space{5, 6, false, 1, seed, 3};
    const Profile p = sample_profile(space, seed);
    const Candidate keep[] = {1, 3, 4};
    const auto r = restrict_profile(p, keep);
    const auto full = pairwise_tally(p), sub = pairwise_tally(r.profile);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) { EXPECT_EQ(sub(i, j), full(r.to_original[i], r.to_original[j])); }
  }
}

TEST(TieBreak, Apply) {
  const TieBreakOrder tb({c, a, b});
  const Candidate ab[] = {a, b}, only_b[] = {b}, all[] = {a, b, c};
  EXPECT_EQ(apply_tiebreak(ab, tb), a);
  EXPECT_EQ(apply_tiebreak(only_b, tb), b);
  EXPECT_EQ(apply_tiebreak(all, tb), c);
  EXPECT_THROW(apply_tiebreak(std::span<const Candidate>{}, tb), Error);
}

}  // namespace
}  // namespace runoff
