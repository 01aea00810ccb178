#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "runoff/combinator.hpp"
#include "runoff/matching.hpp"

namespace runoff {

// Ties broken in favour of c; the remaining candidates follow in ascending id.
inline TieBreakOrder c_favoring_tiebreak(Candidate c, int m) {
  if (c < 0 || c >= m) throw Error("preferred candidate out of range");
  std::vector<Candidate> order{c};
  for (Candidate x = 0; x < m; ++x)
    if (x != c) order.push_back(x);
  return TieBreakOrder(std::move(order));
}

// Coalition of manipulators with weights w_1..w_k trying to elect c. The
// rule's tie-break order is the one used for every election.
struct ManipulationInstance {
  CombinedRule rule;
  Profile nm_profile;
  Candidate preferred = 0;
  std::vector<Weight> manip_weights;

  int candidates() const { return nm_profile.candidates(); }
  int coalition_size() const { return static_cast<int>(manip_weights.size()); }
  bool unweighted() const {
    return std::all_of(manip_weights.begin(), manip_weights.end(), [](Weight w) { return w == 1; });
  }
};

enum class SolverPath { Trivial, Proof, UniformFallback, BruteForceFallback, BruteForce };

inline const char* to_string(SolverPath p) {
  switch (p) {
    case SolverPath::Trivial: return "trivial";
    case SolverPath::Proof: return "proof";
    case SolverPath::UniformFallback: return "uniform-fallback";
    case SolverPath::BruteForceFallback: return "brute-force-fallback";
    case SolverPath::BruteForce: return "brute-force";
  }
  return "?";
}

struct ManipulationOutcome {
  bool feasible = false;
  std::vector<Ranking> ballots;  // one per manipulator, same order as manip_weights
  SolverPath path = SolverPath::Proof;
};

inline Profile with_manipulators(const ManipulationInstance& inst, const std::vector<Ranking>& ballots) {
  if (ballots.size() != inst.manip_weights.size()) throw Error("one ballot per manipulator expected");
  Profile p = inst.nm_profile;
  for (std::size_t i = 0; i < ballots.size(); ++i) p.add(ballots[i], inst.manip_weights[i]);
  return p;
}

// Re-checks a certificate with the winner engine.
inline bool elects_preferred(const ManipulationInstance& inst, const std::vector<Ranking>& ballots) {
  const Profile p = with_manipulators(inst, ballots);
  if (p.total_weight() == 0) return false;
  return winner_of(inst.rule, p) == inst.preferred;
}

// All m! rankings in lexicographic order.
inline std::vector<Ranking> all_rankings(int m) {
  std::vector<Candidate> order(m);
  for (Candidate c = 0; c < m; ++c) order[c] = c;
  std::vector<Ranking> out;
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

inline constexpr double kDefaultBruteForceBudget = 2e7;

// Number of tuples the brute force visits: manipulators of equal weight are
// interchangeable, so within each weight class only non-decreasing ranking
// indices are enumerated.
inline double brute_force_size(int m, const std::vector<Weight>& weights) {
  double rankings = 1;
  for (int i = 2; i <= m; ++i) rankings *= i;
  std::map<Weight, int> groups;
  for (Weight w : weights) ++groups[w];
  double total = 1;
  for (const auto& [w, g] : groups) {
    double c = 1;  // C(rankings + g - 1, g)
    for (int i = 1; i <= g; ++i) c = c * (rankings + g - i) / i;
    total *= c;
  }
  return total;
}

// Exhaustive search over manipulator ballots in lexicographic order of the
// tuple of ranking indices. Sorting the ballots of equally weighted
// manipulators never makes a tuple lexicographically larger, so the first
// success among the enumerated tuples is the first success overall.
inline ManipulationOutcome brute_force_manipulate(const ManipulationInstance& inst,
                                                  double budget = kDefaultBruteForceBudget) {
  const int m = inst.candidates();
  const int k = inst.coalition_size();
  if (inst.preferred < 0 || inst.preferred >= m) throw Error("preferred candidate out of range");
  if (m > 10 || brute_force_size(m, inst.manip_weights) > budget) {
    throw BudgetExceeded("brute force over " + std::to_string(k) + " manipulators and " + std::to_string(m) +
                         " candidates exceeds the budget");
  }
  ManipulationOutcome out;
  out.path = SolverPath::BruteForce;
  if (k == 0) {
    out.feasible = inst.nm_profile.total_weight() > 0 && winner_of(inst.rule, inst.nm_profile) == inst.preferred;
    return out;
  }

  const auto rankings = all_rankings(m);
  const int r = static_cast<int>(rankings.size());
  std::vector<int> prev_same(k, -1);  // previous manipulator with the same weight
  for (int i = 0; i < k; ++i)
    for (int j = i - 1; j >= 0; --j)
      if (inst.manip_weights[j] == inst.manip_weights[i]) {
        prev_same[i] = j;
        break;
      }

  std::vector<int> choice(k, 0);
  Profile p = inst.nm_profile;
  const std::size_t base = p.size();
  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == k) return winner_of(inst.rule, p) == inst.preferred;
    const int from = prev_same[i] >= 0 ? choice[prev_same[i]] : 0;
    for (int x = from; x < r; ++x) {
      choice[i] = x;
      p.add(rankings[x], inst.manip_weights[i]);
      const bool ok = self(self, i + 1);
      p.truncate(base + i);
      if (ok) return true;
    }
    return false;
  };
  if (dfs(dfs, 0)) {
    out.feasible = true;
    for (int i = 0; i < k; ++i) out.ballots.push_back(rankings[choice[i]]);
  }
  return out;
}

namespace detail {

// c first (if given), then `second` (if given), the remaining candidates in
// ascending id, and `last` (if given) moved to the bottom.
inline Ranking arrange(int m, Candidate first, Candidate second, Candidate last) {
  std::vector<Candidate> order;
  if (first >= 0) order.push_back(first);
  if (second >= 0 && second != first) order.push_back(second);
  for (Candidate x = 0; x < m; ++x)
    if (x != first && x != second && x != last) order.push_back(x);
  if (last >= 0 && last != first && last != second) order.push_back(last);
  return Ranking(std::move(order));
}

inline bool is_kind(const RuleSpec& r, RuleKind k) { return r.kind == k; }

// Bases as a sorted multiset of kinds for precondition checks.
inline std::vector<RuleKind> base_kinds(const CombinedRule& rule) {
  const auto flat = rule.flat_bases();
  if (!flat) return {};
  std::vector<RuleKind> kinds;
  for (const auto& b : *flat) kinds.push_back(b.kind);
  std::sort(kinds.begin(), kinds.end());
  return kinds;
}

inline ManipulationOutcome certify(const ManipulationInstance& inst, std::vector<Ranking> ballots, SolverPath path) {
  ManipulationOutcome out;
  out.path = path;
  if (elects_preferred(inst, ballots)) {
    out.feasible = true;
    out.ballots = std::move(ballots);
  }
  return out;
}

// Bucklin alone, three candidates. Ranking c first everywhere is dominant.
// If c has no first-round majority it needs one in round two; a rival ahead
// of c in the tie-break must then stay at or below half in round two, which
// constrains the weight A of manipulators putting x (not y) second. Any A in
// the allowed interval that is a subset sum of the weights works.
inline ManipulationOutcome bucklin_3cand(const ManipulationInstance& inst, Candidate x, Candidate y) {
  const Candidate c = inst.preferred;
  const TieBreakOrder& tb = inst.rule.tiebreak;
  const auto& w = inst.manip_weights;
  Weight W = 0;
  for (Weight v : w) W += v;
  const Weight T = inst.nm_profile.total_weight() + W;
  const auto second = scoring_scores(inst.nm_profile, ScoringVector::approval(2, 3));

  Weight lo = 0, hi = W;
  if (tb.before(x, c)) hi = std::min(hi, (T - 2 * second[x]) >= 0 ? (T - 2 * second[x]) / 2 : Weight{-1});
  if (tb.before(y, c)) lo = std::max(lo, (2 * second[y] + 2 * W - T + 1) / 2);

  // reach[s] = index of the last weight used to first reach sum s.
  std::vector<int> reach(static_cast<std::size_t>(W + 1), -2);
  reach[0] = -1;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    for (Weight s = W; s >= w[i]; --s)
      if (reach[s] == -2 && reach[s - w[i]] != -2 && reach[s - w[i]] < i) reach[s] = i;

  std::vector<bool> put_x(w.size(), false);
  for (Weight a = std::max<Weight>(lo, 0); a <= hi; ++a) {
    if (reach[a] == -2) continue;
    for (Weight s = a; s > 0; s -= w[reach[s]]) put_x[reach[s]] = true;
    break;
  }
  std::vector<Ranking> ballots;
  for (std::size_t i = 0; i < w.size(); ++i)
    ballots.push_back(put_x[i] ? Ranking({c, x, y}) : Ranking({c, y, x}));
  return certify(inst, std::move(ballots), SolverPath::Proof);
}

}  // namespace detail

// plurality+veto, unweighted manipulators. Pass 1 fixes c as the plurality
// winner and tries every candidate a as the veto winner (a = c included);
// pass 2 fixes c as the veto winner and tries every a as the plurality
// winner. Each attempt builds the one coalition profile the argument allows
// and lets the winner engine decide the run-off.
inline ManipulationOutcome solve_plurality_veto(const ManipulationInstance& inst) {
  const auto kinds = detail::base_kinds(inst.rule);
  if (kinds != std::vector<RuleKind>{RuleKind::Plurality, RuleKind::Veto}) {
    throw Error("solve_plurality_veto needs the rule plurality+veto");
  }
  if (!inst.unweighted()) throw Error("solve_plurality_veto needs unit-weight manipulators");

  const int m = inst.candidates();
  const int k = inst.coalition_size();
  const Candidate c = inst.preferred;
  const TieBreakOrder& tb = inst.rule.tiebreak;

  if (k == 0 || m <= 2) {
    std::vector<Ranking> ballots(k, detail::arrange(m, c, -1, -1));
    return detail::certify(inst, std::move(ballots), SolverPath::Trivial);
  }

  const auto plur = scoring_scores(inst.nm_profile, ScoringVector::plurality(m));
  const auto veto = scoring_scores(inst.nm_profile, ScoringVector::veto(m));

  // Vetoes each candidate must receive so that `target` wins veto; `target`
  // and the candidates in `fixed` are never placed last. Empty on failure.
  auto veto_demands = [&](Candidate target, std::vector<Candidate> fixed) -> std::optional<std::vector<Candidate>> {
    std::vector<Candidate> lasts;
    for (Candidate s = 0; s < m; ++s) {
      if (s == target) continue;
      Weight need = 0;
      if (veto[s] >= veto[target]) need = veto[s] - veto[target] + (tb.before(s, target) ? 1 : 0);
      if (need == 0) continue;
      if (std::find(fixed.begin(), fixed.end(), s) != fixed.end()) return std::nullopt;
      if (static_cast<Weight>(lasts.size()) + need > k) return std::nullopt;
      lasts.insert(lasts.end(), need, s);
    }
    return lasts;
  };

  // Pass 1: c first everywhere, a second, a wins veto.
  for (Candidate a = 0; a < m; ++a) {
    const auto lasts = a == c ? veto_demands(c, {c}) : veto_demands(a, {c, a});
    if (!lasts) continue;
    std::vector<Ranking> ballots;
    for (int i = 0; i < k; ++i) {
      const Candidate last = i < static_cast<int>(lasts->size()) ? (*lasts)[i] : -1;
      ballots.push_back(detail::arrange(m, c, a == c ? -1 : a, last));
    }
    auto out = detail::certify(inst, std::move(ballots), SolverPath::Proof);
    if (out.feasible) return out;
  }

  // Pass 2: a takes exactly the first places it needs to win plurality, c
  // takes the rest; c wins veto.
  for (Candidate a = 0; a < m; ++a) {
    if (a == c) continue;
    int need = -1;
    for (int d = 0; d <= k && need < 0; ++d) {
      const Weight sa = plur[a] + d;
      bool wins = true;
      for (Candidate x = 0; x < m && wins; ++x) {
        if (x == a) continue;
        const Weight sx = plur[x] + (x == c ? k - d : 0);
        wins = sx < sa || (sx == sa && tb.before(a, x));
      }
      if (wins) need = d;
    }
    if (need < 0) continue;
    const auto lasts = veto_demands(c, {c, a});
    if (!lasts) continue;
    std::vector<Ranking> ballots;
    for (int i = 0; i < k; ++i) {
      const Candidate last = i < static_cast<int>(lasts->size()) ? (*lasts)[i] : -1;
      ballots.push_back(i < need ? detail::arrange(m, a, c, last) : detail::arrange(m, c, a, last));
    }
    auto out = detail::certify(inst, std::move(ballots), SolverPath::Proof);
    if (out.feasible) return out;
  }
  ManipulationOutcome none;
  none.path = SolverPath::Proof;
  return none;
}

// X+Y for scoring rules X, Y and a single manipulator. For every other
// finalist a (a = c included) and every pair of positions (i, j) for c and
// a, the remaining candidates must be placed so that c tops one rule and a
// the other; that placement is a perfect matching between candidates and
// free positions.
inline ManipulationOutcome solve_single_scoring_pair(const ManipulationInstance& inst) {
  const auto flat = inst.rule.flat_bases();
  if (!flat || flat->size() != 2 || !(*flat)[0].is_scoring() || !(*flat)[1].is_scoring()) {
    throw Error("solve_single_scoring_pair needs a combination of two scoring rules");
  }
  if (inst.coalition_size() != 1 || !inst.unweighted()) {
    throw Error("solve_single_scoring_pair needs exactly one unit-weight manipulator");
  }
  const int m = inst.candidates();
  const Candidate c = inst.preferred;
  const TieBreakOrder& tb = inst.rule.tiebreak;
  if (m == 1) return detail::certify(inst, {Ranking::identity(1)}, SolverPath::Trivial);

  const ScoringVector vx = (*flat)[0].scoring_vector(m);
  const ScoringVector vy = (*flat)[1].scoring_vector(m);
  const auto sx = scoring_scores(inst.nm_profile, vx);
  const auto sy = scoring_scores(inst.nm_profile, vy);

  // true iff `w` (at total tw) beats `d` (at total td) under the tie-break.
  auto above = [&](Weight tw, Candidate w, Weight td, Candidate d) { return tw > td || (tw == td && tb.before(w, d)); };

  struct Side {
    const ScoringVector* v;
    const std::vector<Weight>* s;
  };
  const Side sides[2] = {{&vx, &sx}, {&vy, &sy}};

  for (Candidate a = 0; a < m; ++a) {
    for (int orient = 0; orient < (a == c ? 1 : 2); ++orient) {
      const Side& cs = sides[orient];      // rule c must win
      const Side& as = sides[1 - orient];  // rule a must win
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (a == c ? j != i : j == i) continue;
          const Weight c_on_c = (*cs.s)[c] + (*cs.v)[i];
          const Weight a_on_a = (*as.s)[a] + (*as.v)[j];
          if (a != c) {
            if (!above(c_on_c, c, (*cs.s)[a] + (*cs.v)[j], a)) continue;
            if (!above(a_on_a, a, (*as.s)[c] + (*as.v)[i], c)) continue;
          }
          std::vector<Candidate> others;
          for (Candidate d = 0; d < m; ++d)
            if (d != c && d != a) others.push_back(d);
          std::vector<int> slots;
          for (int t = 0; t < m; ++t)
            if (t != i && t != j) slots.push_back(t);

          BipartiteGraph g(static_cast<int>(others.size()), static_cast<int>(slots.size()));
          for (std::size_t u = 0; u < others.size(); ++u) {
            const Candidate d = others[u];
            for (std::size_t v = 0; v < slots.size(); ++v) {
              const int t = slots[v];
              if (above(c_on_c, c, (*cs.s)[d] + (*cs.v)[t], d) && above(a_on_a, a, (*as.s)[d] + (*as.v)[t], d)) {
                g.add_edge(static_cast<int>(u), static_cast<int>(v));
              }
            }
          }
          const Matching match = max_bipartite_matching(g);
          if (!match.perfect(g)) continue;

          std::vector<Candidate> order(m, -1);
          order[i] = c;
          order[j] = a;
          for (std::size_t u = 0; u < others.size(); ++u) order[slots[match.left_to_right[u]]] = others[u];
          auto out = detail::certify(inst, {Ranking(std::move(order))}, SolverPath::Proof);
          if (out.feasible) return out;
        }
      }
    }
  }
  ManipulationOutcome none;
  none.path = SolverPath::Proof;
  return none;
}

// Weighted coalitions over three candidates for bucklin, copeland+cup,
// copeland+bucklin and bucklin+cup. The pairwise picture with c ranked first
// by every manipulator decides the case; where the case analysis says
// nothing, uniform ballots and then (budget permitting) the brute force are
// tried and the outcome is flagged as a fallback.
inline ManipulationOutcome solve_weighted_3cand(const ManipulationInstance& inst, bool allow_brute_fallback = true,
                                                double budget = kDefaultBruteForceBudget) {
  using K = RuleKind;
  const auto kinds = detail::base_kinds(inst.rule);
  const bool bucklin_alone = kinds == std::vector<K>{K::Bucklin};
  const bool copeland_cup = kinds == std::vector<K>{K::Cup, K::Copeland};
  const bool copeland_bucklin = kinds == std::vector<K>{K::Copeland, K::Bucklin};
  const bool bucklin_cup = kinds == std::vector<K>{K::Cup, K::Bucklin};
  if (!(bucklin_alone || copeland_cup || copeland_bucklin || bucklin_cup)) {
    throw Error("solve_weighted_3cand supports bucklin, copeland+cup, copeland+bucklin, bucklin+cup");
  }
  if (inst.candidates() != 3) throw Error("solve_weighted_3cand needs exactly 3 candidates");

  const Candidate c = inst.preferred;
  const int k = inst.coalition_size();
  std::vector<Candidate> rest;
  for (Candidate x = 0; x < 3; ++x)
    if (x != c) rest.push_back(x);

  auto uniform = [&](Candidate second) {
    return std::vector<Ranking>(k, Ranking({c, second, second == rest[0] ? rest[1] : rest[0]}));
  };
  if (k == 0) return detail::certify(inst, {}, SolverPath::Trivial);

  if (bucklin_alone) return detail::bucklin_3cand(inst, rest[0], rest[1]);

  PairwiseTally t = pairwise_tally(inst.nm_profile);
  for (Weight w : inst.manip_weights) t.add(Ranking({c, rest[0], rest[1]}), w);
  const bool beaten0 = t.beats(rest[0], c), beaten1 = t.beats(rest[1], c);
  const bool wins0 = t.beats(c, rest[0]), wins1 = t.beats(c, rest[1]);

  if (beaten0 && beaten1) {
    // Condorcet loser even with every manipulator's support.
    return detail::certify(inst, uniform(rest[0]), SolverPath::Proof);
  }
  if (wins0 && wins1) return detail::certify(inst, uniform(rest[0]), SolverPath::Proof);
  // The case argument assumes ties go to c. Under another tie-break a split
  // coalition can manufacture a helpful pairwise tie, so a failure there
  // proves nothing and the fallbacks below take over.
  const bool c_favoured = inst.rule.tiebreak.order()[0] == c;
  if (beaten0 != beaten1) {
    const Candidate b = beaten0 ? rest[1] : rest[0];
    auto out = detail::certify(inst, uniform(b), SolverPath::Proof);
    if (out.feasible || c_favoured) return out;
  }

  // Remaining pictures involve pairwise ties with c.
  for (Candidate second : rest) {
    auto out = detail::certify(inst, uniform(second), SolverPath::UniformFallback);
    if (out.feasible) return out;
  }
  for (const Ranking& r : all_rankings(3)) {
    auto out = detail::certify(inst, std::vector<Ranking>(k, r), SolverPath::UniformFallback);
    if (out.feasible) return out;
  }
  if (allow_brute_fallback && brute_force_size(3, inst.manip_weights) <= budget) {
    auto out = brute_force_manipulate(inst, budget);
    out.path = SolverPath::BruteForceFallback;
    return out;
  }
  ManipulationOutcome none;
  none.path = SolverPath::UniformFallback;
  return none;
}

enum class SolverChoice { Auto, Brute, PluralityVeto, ScoringPair, Weighted3 };

// Picks the specialised solver whose preconditions hold, else brute force.
inline ManipulationOutcome manipulate(const ManipulationInstance& inst, SolverChoice choice = SolverChoice::Auto,
                                      double budget = kDefaultBruteForceBudget) {
  switch (choice) {
    case SolverChoice::Brute: return brute_force_manipulate(inst, budget);
    case SolverChoice::PluralityVeto: return solve_plurality_veto(inst);
    case SolverChoice::ScoringPair: return solve_single_scoring_pair(inst);
    case SolverChoice::Weighted3: return solve_weighted_3cand(inst, true, budget);
    case SolverChoice::Auto: break;
  }
  using K = RuleKind;
  const auto kinds = detail::base_kinds(inst.rule);
  if (inst.unweighted() && kinds == std::vector<K>{K::Plurality, K::Veto}) return solve_plurality_veto(inst);
  const auto flat = inst.rule.flat_bases();
  if (inst.coalition_size() == 1 && inst.unweighted() && flat && flat->size() == 2 && (*flat)[0].is_scoring() &&
      (*flat)[1].is_scoring()) {
    return solve_single_scoring_pair(inst);
  }
  if (inst.candidates() == 3 &&
      (kinds == std::vector<K>{K::Bucklin} || kinds == std::vector<K>{K::Cup, K::Copeland} ||
       kinds == std::vector<K>{K::Copeland, K::Bucklin} || kinds == std::vector<K>{K::Cup, K::Bucklin})) {
    return solve_weighted_3cand(inst, true, budget);
  }
  return brute_force_manipulate(inst, budget);
}

}  // namespace runoff
