#include <gtest/gtest.h>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

using fixture::a;
using fixture::b;
using fixture::c;

TEST(Tiebreak, FavoursPreferred) {
  EXPECT_EQ(c_favoring_tiebreak(2, 4), TieBreakOrder({2, 0, 1, 3}));
  EXPECT_EQ(c_favoring_tiebreak(0, 3), TieBreakOrder({0, 1, 2}));
  EXPECT_THROW(c_favoring_tiebreak(3, 3), Error);
}

TEST(BruteForce, PartitionFixtures) {
  for (auto kind : {FixtureKind::PluralityCupPartition, FixtureKind::CopelandPluralityPartition,
                    FixtureKind::MaximinPluralityPartition}) {
    const auto yes = partition_fixture(kind, {1, 1, 2});
    const auto out = brute_force_manipulate(yes);
    ASSERT_TRUE(out.feasible) << static_cast<int>(kind);
    EXPECT_EQ(winner_of(yes.rule, with_manipulators(yes, out.ballots)), c);
    EXPECT_FALSE(brute_force_manipulate(partition_fixture(kind, {1, 3})).feasible) << static_cast<int>(kind);
    EXPECT_FALSE(brute_force_manipulate(partition_fixture(kind, {2, 2, 2, 4})).feasible) << static_cast<int>(kind);
    EXPECT_TRUE(brute_force_manipulate(partition_fixture(kind, {3, 1, 2, 2})).feasible) << static_cast<int>(kind);
  }
}

TEST(BruteForce, EmptyCoalition) {
  ManipulationInstance inst{CombinedRule({RuleSpec::plurality(), RuleSpec::borda()}, monotonicity_tiebreak()),
                            monotonicity_profile(), c, {}};
  EXPECT_TRUE(brute_force_manipulate(inst).feasible);
  inst.preferred = a;
  EXPECT_FALSE(brute_force_manipulate(inst).feasible);
}

TEST(BruteForce, Budget) {
  ManipulationInstance inst{CombinedRule({RuleSpec::plurality(), RuleSpec::borda()}, TieBreakOrder::ascending(8)),
                            uniform_profile(5, 8, 1), 0, std::vector<Weight>(6, 1)};
  EXPECT_THROW(brute_force_manipulate(inst, 1e6), BudgetExceeded);
}

TEST(BruteForce, FirstSuccessIsLexicographic) {
  // Whatever the brute force returns is the lexicographically first success.
  const CombinedRule rule({RuleSpec::plurality(), RuleSpec::veto()}, TieBreakOrder::ascending(3));
  const auto rankings = all_rankings(3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    ManipulationInstance inst{rule, uniform_profile(5, 3, s), 2, {1}};
    const auto out = brute_force_manipulate(inst);
    for (const auto& r : rankings) {
      const bool ok = elects_preferred(inst, {r});
      if (ok) {
        ASSERT_TRUE(out.feasible);
        EXPECT_EQ(out.ballots[0], r);
        break;
      }
      if (out.feasible) { EXPECT_NE(out.ballots[0], r); }
    }
  }
}

ManipulationInstance random_instance(const CombinedRule& rule, int m, int voters, std::vector<Weight> w,
                                     std::uint64_t seed) {
  return {rule, uniform_profile(voters, m, seed), static_cast<Candidate>(derive_seed(seed, 99) % m), std::move(w)};
}

TEST(Solvers, PluralityVetoMatchesBruteForce) {
  int feasible = 0, total = 0;
  for (int m : {3, 4}) {
    const CombinedRule rule({RuleSpec::plurality(), RuleSpec::veto()}, TieBreakOrder::ascending(m));
    for (int k = 1; k <= (m == 3 ? 4 : 2); ++k) {
      for (std::uint64_t s = 0; s < 60; ++s) {
        const auto inst = random_instance(rule, m, 3 + static_cast<int>(s % 5), std::vector<Weight>(k, 1), s * 13 + k);
        const auto fast = solve_plurality_veto(inst);
        const auto slow = brute_force_manipulate(inst);
        ASSERT_EQ(fast.feasible, slow.feasible) << "m=" << m << " k=" << k << " seed=" << s;
        if (fast.feasible) { EXPECT_TRUE(elects_preferred(inst, fast.ballots)); }
        feasible += fast.feasible;
        ++total;
      }
    }
  }
  EXPECT_GT(feasible, 0);
  EXPECT_LT(feasible, total);
}

TEST(Solvers, ScoringPairMatchesBruteForce) {
  const std::vector<std::pair<RuleSpec, RuleSpec>> pairs{
      {RuleSpec::plurality(), RuleSpec::borda()}, {RuleSpec::veto(), RuleSpec::borda()},
      {RuleSpec::plurality(), RuleSpec::veto()},  {RuleSpec::borda(), RuleSpec::approval(2)},
      {RuleSpec::borda(), RuleSpec::borda()},     {RuleSpec::scoring({5, 3, 2, 0}), RuleSpec::plurality()}};
  for (const auto& [x, y] : pairs) {
    for (int m : {3, 4, 5}) {
      if (x.kind == RuleKind::Scoring && m != 4) continue;
      const CombinedRule rule({x, y}, TieBreakOrder::ascending(m));
      for (std::uint64_t s = 0; s < 40; ++s) {
        const auto inst = random_instance(rule, m, 2 + static_cast<int>(s % 6), {1}, s * 7 + m);
        const auto fast = solve_single_scoring_pair(inst);
        const auto slow = brute_force_manipulate(inst);
        ASSERT_EQ(fast.feasible, slow.feasible) << rule.name() << " m=" << m << " seed=" << s;
        if (fast.feasible) { EXPECT_TRUE(elects_preferred(inst, fast.ballots)); }
      }
    }
  }
  const CombinedRule rule({RuleSpec::plurality(), RuleSpec::borda()}, TieBreakOrder::ascending(3));
  EXPECT_THROW(solve_single_scoring_pair(random_instance(rule, 3, 3, {1, 1}, 1)), Error);
  EXPECT_THROW(solve_single_scoring_pair(random_instance(rule, 3, 3, {2}, 1)), Error);
}

TEST(Solvers, Weighted3MatchesBruteForce) {
  const std::vector<std::vector<RuleSpec>> rules{{RuleSpec::bucklin()},
                                                 {RuleSpec::copeland(), RuleSpec::cup()},
                                                 {RuleSpec::copeland(), RuleSpec::bucklin()},
                                                 {RuleSpec::bucklin(), RuleSpec::cup()}};
  int fallbacks = 0;
  for (const auto& bases : rules) {
    const CombinedRule rule(std::vector<RuleExpr>(bases.begin(), bases.end()), TieBreakOrder::ascending(3));
    for (std::uint64_t s = 0; s < 150; ++s) {
      std::vector<Weight> w;
      for (int i = 0; i < 1 + static_cast<int>(s % 3); ++i) w.push_back(1 + static_cast<Weight>(derive_seed(s, i) % 3));
      const auto inst = random_instance(rule, 3, 2 + static_cast<int>(s % 7), w, s);
      const auto fast = solve_weighted_3cand(inst);
      const auto slow = brute_force_manipulate(inst);
      ASSERT_EQ(fast.feasible, slow.feasible) << rule.name() << " seed=" << s;
      if (fast.feasible) { EXPECT_TRUE(elects_preferred(inst, fast.ballots)); }
      fallbacks += fast.path != SolverPath::Proof && fast.path != SolverPath::Trivial;
    }
  }
  RecordProperty("fallbacks", fallbacks);
}

TEST(Solvers, AutoDispatch) {
  const auto inst = partition_fixture(FixtureKind::MaximinPluralityPartition, {1, 1});
  EXPECT_EQ(manipulate(inst).path, SolverPath::BruteForce);
  EXPECT_THROW(manipulate(inst, SolverChoice::PluralityVeto), Error);
  EXPECT_THROW(manipulate(inst, SolverChoice::Weighted3), Error);

  const CombinedRule pv({RuleSpec::plurality(), RuleSpec::veto()}, TieBreakOrder::ascending(3));
  EXPECT_NE(manipulate(random_instance(pv, 3, 4, {1, 1}, 3)).path, SolverPath::BruteForce);
}

}  // namespace
}  // namespace runoff
