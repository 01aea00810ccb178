#include <gtest/gtest.h>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

using fixture::a;
using fixture::b;
using fixture::c;

Profile lifted_monotonicity_profile() {
  Profile p(3);
  p.add({b, c, a}, 6);
  p.add({c, a, b}, 5);
  p.add({a, b, c}, 3);
  p.add({a, c, b}, 2);
  return p;
}

TEST(Combined, MonotonicityExample) {
  const CombinedRule rule({RuleSpec::plurality(), RuleSpec::borda()}, monotonicity_tiebreak());
  const auto r = combined_winner(rule, monotonicity_profile());
  EXPECT_EQ(r.winner, c);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(r.trace[0], (std::vector<Candidate>{a, c}));
  EXPECT_EQ(r.trace[1], (std::vector<Candidate>{c}));

  const Profile q = lifted_monotonicity_profile();
  EXPECT_EQ(rule_winner(RuleSpec::plurality(), q, monotonicity_tiebreak()), b);
  EXPECT_EQ(winner_of(rule, q), b);
}

TEST(Combined, PluralityVetoIsMajorityOfBaseWinners) {
  for (std::uint64_t i = 0; i < 400; ++i) {
    const int m = 2 + static_cast<int>(i % 3);
    const Profile p = sample_profile(ProfileSpace{m, 7, false, 1, 3, 3}, i);
    const auto tb = TieBreakOrder::ascending(m);
    const Candidate x = rule_winner(RuleSpec::plurality(), p, tb), y = rule_winner(RuleSpec::veto(), p, tb);
    Candidate expect = x;
    if (x != y) {
      const auto t = pairwise_tally(p);
      expect = t.beats(x, y) ? x : t.beats(y, x) ? y : (tb.before(x, y) ? x : y);
    }
    EXPECT_EQ(winner_of(CombinedRule({RuleSpec::plurality(), RuleSpec::veto()}, tb), p), expect);
  }
}

TEST(Combined, IdempotentAndCommutative) {
  const std::vector<RuleSpec> rules{RuleSpec::plurality(), RuleSpec::veto(),     RuleSpec::borda(),
                                    RuleSpec::maximin(),   RuleSpec::copeland(), RuleSpec::stv(),
                                    RuleSpec::bucklin(),   RuleSpec::cup()};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int m = 3 + static_cast<int>(i % 2);
    const Profile p = sample_profile(ProfileSpace{m, 6, false, 1, 9, 2}, i);
    const auto tb = TieBreakOrder::ascending(m);
    for (const auto& x : rules) {
      EXPECT_EQ(winner_of(CombinedRule({x, x}, tb), p), rule_winner(x, p, tb)) << x.name();
      for (const auto& y : rules)
        EXPECT_EQ(winner_of(CombinedRule({x, y}, tb), p), winner_of(CombinedRule({y, x}, tb), p));
    }
  }
}

TEST(Combined, TwoCandidatesIsMajority) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Profile p = sample_profile(ProfileSpace{2, 5, false, 1, 13, 5}, i);
    const auto t = pairwise_tally(p);
    const TieBreakOrder tb({1, 0});
    const Candidate expect = t.beats(0, 1) ? 0 : t.beats(1, 0) ? 1 : 1;
    EXPECT_EQ(winner_of(CombinedRule({RuleSpec::stv(), RuleSpec::borda()}, tb), p), expect);
  }
}

TEST(Combined, SingleBaseEqualsBase) {
  const auto tb = monotonicity_tiebreak();
  EXPECT_EQ(winner_of(CombinedRule(RuleSpec::stv(), tb), monotonicity_profile()), a);
}

TEST(Combined, RunOffIsCombinationOnRestrictedProfile) {
  int checked = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    const Profile p = sample_profile(ProfileSpace{4, 7, false, 1, 23, 3}, i);
    const TieBreakOrder tb({3, 1, 0, 2});
    const std::vector<RuleExpr> bases{RuleSpec::plurality(), RuleSpec::borda(), RuleSpec::veto()};
    const auto r = combined_winner(CombinedRule(bases, tb), p);
    const auto& w = r.trace[0];
    if (w.size() == 1 || w.size() == 4) continue;
    ++checked;
    const Restriction sub = restrict_profile(p, w);
    std::vector<RuleExpr> restricted;
    for (const auto& e : bases) restricted.push_back(e.restricted_to(static_cast<int>(w.size())));
    const Candidate inner = winner_of(CombinedRule(restricted, restrict_tiebreak(tb, sub)), sub.profile);
    EXPECT_EQ(sub.to_original[inner], r.winner);
    // Borda over the restricted candidates is the re-derived vector.
    EXPECT_EQ(restricted[1].rule.scoring_vector(static_cast<int>(w.size())).weights,
              ScoringVector::borda(static_cast<int>(w.size())).weights);
  }
  EXPECT_GT(checked, 20);
}

TEST(Combined, AllWinnersDistinctFallsBackToTieBreak) {
  // Plurality, veto and Borda pick a, b and c respectively on three
  // candidates, so W is everything and the tie-break decides.
  for (std::uint64_t i = 0; i < 3000; ++i) {
    const Profile p = sample_profile(ProfileSpace{3, 6, false, 1, 17, 3}, i);
    const TieBreakOrder tb({2, 1, 0});
    const CombinedRule rule({RuleSpec::plurality(), RuleSpec::veto(), RuleSpec::borda()}, tb);
    const auto r = combined_winner(rule, p);
    if (r.trace[0].size() == 3) {
      EXPECT_EQ(r.winner, 2);
      return;
    }
  }
  GTEST_SKIP() << "no profile with three distinct base winners sampled";
}

TEST(Combined, ParseExpressions) {
  const auto e = parse_rule_expr(" plurality + Borda ");
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].rule, RuleSpec::plurality());
  EXPECT_EQ(e[1].rule, RuleSpec::borda());
  const auto n = parse_rule_expr("(plurality+veto)+borda");
  ASSERT_EQ(n.size(), 2u);
  EXPECT_TRUE(n[0].nested());
  EXPECT_EQ(CombinedRule(n, TieBreakOrder::ascending(3)).name(), "(plurality+veto)+borda");
  EXPECT_EQ(parse_rule_expr("scoring(3,1,0)+approval(2)").size(), 2u);
  EXPECT_THROW(parse_rule_expr("plurality+"), Error);
  EXPECT_THROW(parse_rule_expr("(plurality+veto"), Error);
  EXPECT_THROW(parse_rule_expr("plurality)"), Error);
}

TEST(Combined, TieBreakMustCoverCandidates) {
  EXPECT_THROW(winner_of(CombinedRule(RuleSpec::borda(), TieBreakOrder::ascending(2)), monotonicity_profile()), Error);
}

TEST(Algebra, ExhaustivePluralityVeto) {
  const auto r = algebra_check(ProfileSpace{3, 3, true, 0, 1, 1}, RuleSpec::plurality(), RuleSpec::veto());
  EXPECT_EQ(r.profiles_checked, 6u + 36u + 216u);
  EXPECT_TRUE(r.ok());
}

TEST(Algebra, SampledPluralityBorda) {
  const auto r = algebra_check(ProfileSpace{4, 7, false, 500, 99, 1}, RuleSpec::plurality(), RuleSpec::borda());
  EXPECT_EQ(r.profiles_checked, 500u);
  EXPECT_TRUE(r.ok());
}

TEST(Algebra, SameRuleTwice) {
  const auto r = algebra_check(ProfileSpace{3, 2, true, 0, 1, 1}, RuleSpec::maximin(), RuleSpec::maximin());
  EXPECT_TRUE(r.ok());
}

}  // namespace
}  // namespace runoff
