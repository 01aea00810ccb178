#pragma once

#include <string>
#include <vector>

#include "runoff/combinator.hpp"
#include "runoff/profile_space.hpp"

namespace runoff {

struct AlgebraViolation {
  std::string law;
  Profile profile;
  Candidate lhs = -1;
  Candidate rhs = -1;
};

struct AlgebraReport {
  std::uint64_t profiles_checked = 0;
  std::vector<AlgebraViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Compares X+X with X, X+Y with Y+X and (X+Y)+X with X+Y as winner functions
// over every profile of the space, with ascending-id tie-breaking.
inline AlgebraReport algebra_check(const ProfileSpace& space, const RuleSpec& x, const RuleSpec& y,
                                   std::size_t max_violations = 16) {
  const TieBreakOrder tb = TieBreakOrder::ascending(space.m);
  const CombinedRule xx({x, x}, tb), xo(x, tb), xy({x, y}, tb), yx({y, x}, tb);
  const CombinedRule xy_x({RuleExpr::combination({x, y}), RuleExpr(x)}, tb);

  AlgebraReport report;
  auto law = [&](const char* name, const CombinedRule& lhs, const CombinedRule& rhs, const Profile& p) {
    const Candidate l = winner_of(lhs, p), r = winner_of(rhs, p);
    if (l != r && report.violations.size() < max_violations) report.violations.push_back({name, p, l, r});
  };
  for_each_profile(space, [&](const Profile& p) {
    ++report.profiles_checked;
    law("X+X=X", xx, xo, p);
    law("X+Y=Y+X", xy, yx, p);
    law("(X+Y)+X=X+Y", xy_x, xy, p);
    return false;
  });
  return report;
}

}  // namespace runoff
