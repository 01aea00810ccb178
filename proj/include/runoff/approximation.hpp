#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "runoff/combinator.hpp"
#include "runoff/ilp.hpp"
#include "runoff/manipulation.hpp"

namespace runoff {

enum class ApproxAlgorithm { Greedy, Plur, AdaptGreedy, Opt };

inline const char* to_string(ApproxAlgorithm a) {
  switch (a) {
    case ApproxAlgorithm::Greedy: return "greedy";
    case ApproxAlgorithm::Plur: return "plur";
    case ApproxAlgorithm::AdaptGreedy: return "adapt";
    case ApproxAlgorithm::Opt: return "opt";
  }
  return "?";
}

inline ApproxAlgorithm parse_algorithm(const std::string& s) {
  for (auto a : {ApproxAlgorithm::Greedy, ApproxAlgorithm::Plur, ApproxAlgorithm::AdaptGreedy, ApproxAlgorithm::Opt})
    if (s == to_string(a)) return a;
  throw Error("unknown algorithm '" + s + "' (greedy, plur, adapt, opt)");
}

struct ApproxReport {
  ApproxAlgorithm algorithm{};
  int manipulators_used = 0;
  std::vector<Ranking> ballots;
  bool winner_check = false;  // the winner engine elects c with these ballots
};

// Raised when no k <= max_k works for the algorithm.
class MaxKExceeded : public std::runtime_error {
 public:
  explicit MaxKExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Candidates other than those in `skip`, ordered by ascending score with the
// tie-break order deciding equal scores.
inline std::vector<Candidate> ascending_by_score(std::span<const Weight> scores, const TieBreakOrder& tb,
                                                 std::span<const Candidate> skip) {
  std::vector<Candidate> out;
  for (Candidate x = 0; x < static_cast<Candidate>(scores.size()); ++x)
    if (std::find(skip.begin(), skip.end(), x) == skip.end()) out.push_back(x);
  std::stable_sort(out.begin(), out.end(), [&](Candidate a, Candidate b) {
    return scores[a] != scores[b] ? scores[a] < scores[b] : tb.before(a, b);
  });
  return out;
}

inline void add_borda(std::vector<Weight>& scores, const Ranking& r) {
  const int m = r.size();
  for (int p = 0; p < m; ++p) scores[r.at(p)] += m - 1 - p;
}

inline Profile extend(const Profile& nm, const std::vector<Ranking>& ballots, std::size_t count) {
  Profile p = nm;
  for (std::size_t i = 0; i < count; ++i) p.add(ballots[i]);
  return p;
}

inline bool elects(const CombinedRule& rule, const Profile& nm, const std::vector<Ranking>& ballots, Candidate c) {
  const Profile p = extend(nm, ballots, ballots.size());
  return p.total_weight() > 0 && winner_of(rule, p) == c;
}

}  // namespace detail

// One manipulator's ballot for Borda: c first, then the others from the
// second position down in ascending order of their current score, so the
// strongest rival lands last. Equal scores follow the tie-break order.
inline Ranking greedy_borda_ballot(std::span<const Weight> current_scores, Candidate c, const TieBreakOrder& tb) {
  const Candidate skip[] = {c};
  std::vector<Candidate> order{c};
  for (Candidate x : detail::ascending_by_score(current_scores, tb, skip)) order.push_back(x);
  return Ranking(std::move(order));
}

// Same shape with current plurality scores.
inline Ranking greedy_plurality_ballot(std::span<const Weight> current_plurality, Candidate c, const TieBreakOrder& tb) {
  return greedy_borda_ballot(current_plurality, c, tb);
}

// The first `k` ballots of the Greedy (Borda) or Plur sequence.
inline std::vector<Ranking> greedy_sequence(ApproxAlgorithm alg, const Profile& nm, Candidate c, const TieBreakOrder& tb,
                                            int k) {
  const int m = nm.candidates();
  std::vector<Weight> scores = alg == ApproxAlgorithm::Plur ? scoring_scores(nm, ScoringVector::plurality(m))
                                                            : scoring_scores(nm, ScoringVector::borda(m));
  std::vector<Ranking> out;
  for (int i = 0; i < k; ++i) {
    Ranking r = greedy_borda_ballot(scores, c, tb);
    if (alg == ApproxAlgorithm::Plur) {
      scores[c] += 1;
    } else {
      detail::add_borda(scores, r);
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

// Completes partially fixed ballots in order: the free positions of each
// ballot get the unplaced candidates in ascending order of current Borda
// score, and the scores are updated before the next ballot.
inline std::vector<Ranking> greedy_fill(const Profile& nm, const std::vector<std::vector<Candidate>>& prefixes,
                                        const TieBreakOrder& tb) {
  const int m = nm.candidates();
  std::vector<Weight> scores = scoring_scores(nm, ScoringVector::borda(m));
  std::vector<Ranking> out;
  for (const auto& prefix : prefixes) {
    std::vector<Candidate> order = prefix;
    for (Candidate x : ascending_by_score(scores, tb, prefix)) order.push_back(x);
    Ranking r(std::move(order));
    add_borda(scores, r);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool wins_scoring(const std::vector<Weight>& s, Candidate who, const TieBreakOrder& tb) {
  for (Candidate x = 0; x < static_cast<Candidate>(s.size()); ++x) {
    if (x == who) continue;
    if (s[x] > s[who] || (s[x] == s[who] && tb.before(x, who))) return false;
  }
  return true;
}

}  // namespace detail

// One AdaptGreedy attempt with k unit manipulators for plurality+borda.
// Greedy first; if c then wins neither base the attempt fails. Otherwise
// every rival a is tried as the partner finalist: (i) a gets exactly the
// first places it needs to top plurality and c takes the other first places
// plus second place behind a; (ii) c gets as many first places as possible
// while a still tops Borda, with a right behind c in those ballots and c
// right behind a in the rest. Remaining positions are filled by Greedy.
inline std::optional<std::vector<Ranking>> adapt_greedy_step(const CombinedRule& rule, const Profile& nm, Candidate c,
                                                             int k) {
  const auto kinds = detail::base_kinds(rule);
  if (kinds != std::vector<RuleKind>{RuleKind::Plurality, RuleKind::Borda}) {
    throw Error("AdaptGreedy needs the rule plurality+borda");
  }
  const int m = nm.candidates();
  const TieBreakOrder& tb = rule.tiebreak;

  auto greedy = greedy_sequence(ApproxAlgorithm::Greedy, nm, c, tb, k);
  const Profile after = detail::extend(nm, greedy, greedy.size());
  if (after.total_weight() == 0) return std::nullopt;
  if (winner_of(rule, after) == c) return greedy;
  const bool wins_plur = rule_winner(RuleSpec::plurality(), after, tb) == c;
  const bool wins_borda = rule_winner(RuleSpec::borda(), after, tb) == c;
  if (!wins_plur && !wins_borda) return std::nullopt;

  const auto plur = scoring_scores(nm, ScoringVector::plurality(m));
  for (Candidate a = 0; a < m; ++a) {
    if (a == c) continue;

    // (i) a wins plurality with as few first places as possible.
    int need = -1;
    for (int d = 0; d <= k && need < 0; ++d) {
      std::vector<Weight> s = plur;
      s[a] += d;
      s[c] += k - d;
      if (detail::wins_scoring(s, a, tb)) need = d;
    }
    if (need >= 0) {
      std::vector<std::vector<Candidate>> prefixes(need, std::vector<Candidate>{a, c});
      prefixes.insert(prefixes.end(), k - need, std::vector<Candidate>{c});
      auto ballots = detail::greedy_fill(nm, prefixes, tb);
      if (detail::elects(rule, nm, ballots, c)) return ballots;
    }

    // (ii) a wins Borda while c keeps the most first places.
    for (int t = k; t >= 0; --t) {
      std::vector<std::vector<Candidate>> prefixes(t, std::vector<Candidate>{c, a});
      prefixes.insert(prefixes.end(), k - t, std::vector<Candidate>{a, c});
      auto ballots = detail::greedy_fill(nm, prefixes, tb);
      const Profile p = detail::extend(nm, ballots, ballots.size());
      if (!detail::wins_scoring(scoring_scores(p, ScoringVector::borda(m)), a, tb)) continue;
      if (winner_of(rule, p) == c) return ballots;
      break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact minimum number of unit manipulators.

namespace detail {

inline constexpr int kIlpMaxCandidates = 9;

inline bool ilp_supported(const CombinedRule& rule, int m) {
  const auto flat = rule.flat_bases();
  if (!flat || flat->empty() || flat->size() > 2 || m < 3 || m > kIlpMaxCandidates) return false;
  for (const auto& b : *flat) {
    if (!b.is_scoring() || b.kind == RuleKind::Scoring) return false;
    if (b.kind == RuleKind::Approval && b.k >= m) return false;
  }
  return true;
}

}  // namespace detail

// Minimum coalition for rules made of one or two named scoring rules. Every
// way c can end up elected is a scenario: c tops every base, or c tops one
// base while some a tops the other and c wins the two-candidate run-off
// (a majority contest, since every named scoring rule is majority on two
// candidates). Each scenario is linear in the number of manipulators casting
// each of the m! ballots, so its minimum is an integer program.
// With `c_first_only` the coalition may only cast ballots ranking c first;
// the result is then an upper bound on the true minimum.
inline std::optional<std::vector<Ranking>> exact_min_ballots_ilp(const CombinedRule& rule, const Profile& nm,
                                                                 Candidate c, int max_k, bool c_first_only = false) {
  const int m = nm.candidates();
  if (!detail::ilp_supported(rule, m)) throw Error("exact ILP search needs one or two named scoring rules, 3 <= m <= " + std::to_string(detail::kIlpMaxCandidates));
  const auto flat = *rule.flat_bases();
  const TieBreakOrder& tb = rule.tiebreak;
  auto types = all_rankings(m);
  if (c_first_only) std::erase_if(types, [&](const Ranking& r) { return r.top() != c; });
  const int n = static_cast<int>(types.size());

  std::vector<ScoringVector> vectors;
  std::vector<std::vector<Weight>> base_scores;
  for (const auto& b : flat) {
    vectors.push_back(b.scoring_vector(m));
    base_scores.push_back(scoring_scores(nm, vectors.back()));
  }
  const PairwiseTally tally = pairwise_tally(nm);

  // rows: `who` tops base `b`
  auto add_win_rows = [&](CoveringIlp& ilp, std::size_t b, Candidate who) {
    const auto& v = vectors[b];
    const auto& s = base_scores[b];
    for (Candidate y = 0; y < m; ++y) {
      if (y == who) continue;
      std::vector<double> row(n);
      for (int j = 0; j < n; ++j)
        row[j] = static_cast<double>(v[types[j].position_of(who)] - v[types[j].position_of(y)]);
      const double margin = tb.before(who, y) ? 0 : 1;
      ilp.add_row(std::move(row), margin - static_cast<double>(s[who] - s[y]));
    }
  };
  // row: c beats a in the run-off
  auto add_runoff_row = [&](CoveringIlp& ilp, Candidate a) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = types[j].prefers(c, a) ? 1.0 : -1.0;
    const double margin = tb.before(c, a) ? 0 : 1;
    ilp.add_row(std::move(row), margin - static_cast<double>(tally(c, a) - tally(a, c)));
  };

  std::optional<CoveringIlp::Solution> best;
  auto consider = [&](CoveringIlp& ilp) {
    const std::int64_t limit = best ? best->objective - 1 : max_k;
    if (limit < 0) return;
    if (auto s = ilp.solve(limit)) best = std::move(s);
  };

  {
    CoveringIlp ilp(n);
    for (std::size_t b = 0; b < flat.size(); ++b) add_win_rows(ilp, b, c);
    consider(ilp);
  }
  if (flat.size() == 2) {
    for (std::size_t cb = 0; cb < 2; ++cb) {
      for (Candidate a = 0; a < m; ++a) {
        if (a == c) continue;
        CoveringIlp ilp(n);
        add_win_rows(ilp, cb, c);
        add_win_rows(ilp, 1 - cb, a);
        add_runoff_row(ilp, a);
        consider(ilp);
      }
    }
  }
  if (!best) return std::nullopt;
  std::vector<Ranking> ballots;
  for (int j = 0; j < n; ++j)
    for (std::int64_t r = 0; r < best->x[j]; ++r) ballots.push_back(types[j]);
  return ballots;
}

// Smallest k <= max_k for which some multiset of k ballots elects c, by
// enumerating multisets in lexicographic order for k = 0, 1, 2, ...
inline std::optional<std::vector<Ranking>> exact_min_ballots_brute(const CombinedRule& rule, const Profile& nm,
                                                                   Candidate c, int max_k,
                                                                   double budget = kDefaultBruteForceBudget) {
  const int m = nm.candidates();
  for (int k = 0; k <= max_k; ++k) {
    ManipulationInstance inst{rule, nm, c, std::vector<Weight>(k, 1)};
    const auto out = brute_force_manipulate(inst, budget);
    if (out.feasible) return out.ballots;
  }
  (void)m;
  return std::nullopt;
}

// Smallest k <= max_k at which `alg` produces ballots electing c.
inline ApproxReport min_manipulators(ApproxAlgorithm alg, const CombinedRule& rule, const Profile& nm, Candidate c,
                                     int max_k) {
  if (c < 0 || c >= nm.candidates()) throw Error("preferred candidate out of range");
  ApproxReport report;
  report.algorithm = alg;
  auto finish = [&](std::vector<Ranking> ballots) {
    report.manipulators_used = static_cast<int>(ballots.size());
    report.winner_check = detail::elects(rule, nm, ballots, c);
    report.ballots = std::move(ballots);
    return report;
  };

  switch (alg) {
    case ApproxAlgorithm::Greedy:
    case ApproxAlgorithm::Plur: {
      auto seq = greedy_sequence(alg, nm, c, rule.tiebreak, max_k);
      Profile p = nm;
      for (int k = 0; k <= max_k; ++k) {
        if (k > 0) p.add(seq[k - 1]);
        if (p.total_weight() > 0 && winner_of(rule, p) == c) {
          seq.resize(k);
          return finish(std::move(seq));
        }
      }
      break;
    }
    case ApproxAlgorithm::AdaptGreedy:
      for (int k = 0; k <= max_k; ++k) {
        if (auto ballots = adapt_greedy_step(rule, nm, c, k)) return finish(std::move(*ballots));
      }
      break;
    case ApproxAlgorithm::Opt: {
      auto ballots = detail::ilp_supported(rule, nm.candidates()) ? exact_min_ballots_ilp(rule, nm, c, max_k)
                                                                  : exact_min_ballots_brute(rule, nm, c, max_k);
      if (ballots) return finish(std::move(*ballots));
      break;
    }
  }
  throw MaxKExceeded(std::string(to_string(alg)) + " needs more than " + std::to_string(max_k) + " manipulators");
}

}  // namespace runoff
