#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "runoff/combinator.hpp"
#include "runoff/profile_space.hpp"

namespace runoff {

struct CondorcetResult {
  std::optional<Candidate> winner;  // beats every other candidate strictly
  std::optional<Candidate> loser;   // strictly beaten by every other candidate
};

inline CondorcetResult find_condorcet(const PairwiseTally& t) {
  const int m = t.candidates();
  CondorcetResult out;
  for (Candidate i = 0; i < m; ++i) {
    bool wins_all = true, loses_all = true;
    for (Candidate j = 0; j < m; ++j) {
      if (i == j) continue;
      wins_all = wins_all && t.beats(i, j);
      loses_all = loses_all && t.beats(j, i);
    }
    if (m > 1 && wins_all) out.winner = i;
    if (m > 1 && loses_all) out.loser = i;
  }
  return out;
}

inline CondorcetResult find_condorcet(const Profile& p) { return find_condorcet(pairwise_tally(p)); }

enum class PropertyKind { Unanimity, Majority, CondorcetConsistency, CondorcetLoser, Monotonicity, Consistency };

inline const char* to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::Unanimity: return "unanimity";
    case PropertyKind::Majority: return "majority";
    case PropertyKind::CondorcetConsistency: return "condorcet";
    case PropertyKind::CondorcetLoser: return "condorcet-loser";
    case PropertyKind::Monotonicity: return "monotonicity";
    case PropertyKind::Consistency: return "consistency";
  }
  return "?";
}

inline PropertyKind parse_property(const std::string& s) {
  for (auto k : {PropertyKind::Unanimity, PropertyKind::Majority, PropertyKind::CondorcetConsistency,
                 PropertyKind::CondorcetLoser, PropertyKind::Monotonicity, PropertyKind::Consistency}) {
    if (s == to_string(k)) return k;
  }
  throw Error("unknown property '" + s +
              "' (unanimity, majority, condorcet, condorcet-loser, monotonicity, consistency)");
}

inline int property_arity(PropertyKind k) { return k == PropertyKind::Consistency ? 2 : 1; }

// A violation. For monotonicity profiles = {before, after the lift}; for
// consistency profiles = {P1, P2} and `union_winner` holds the winner of
// their union; otherwise a single profile.
struct Witness {
  PropertyKind kind{};
  std::vector<Profile> profiles;
  std::vector<Candidate> winners;  // winner of each stored profile
  Candidate union_winner = -1;
  std::string detail;
};

namespace detail {

inline std::optional<Candidate> unanimous_top(const Profile& p) {
  if (p.empty()) return std::nullopt;
  const Candidate top = p.ballots().front().ranking.top();
  for (const auto& b : p.ballots())
    if (b.ranking.top() != top) return std::nullopt;
  return top;
}

inline std::optional<Candidate> majority_top(const Profile& p) {
  std::vector<Weight> firsts(p.candidates(), 0);
  for (const auto& b : p.ballots()) firsts[b.ranking.top()] += b.weight;
  for (Candidate c = 0; c < p.candidates(); ++c)
    if (2 * firsts[c] > p.total_weight()) return c;
  return std::nullopt;
}

// `who` moved `steps` places up in `r`.
inline Ranking lift(const Ranking& r, Candidate who, int steps) {
  std::vector<Candidate> order(r.order().begin(), r.order().end());
  int pos = r.position_of(who);
  for (int s = 0; s < steps; ++s, --pos) std::swap(order[pos], order[pos - 1]);
  return Ranking(std::move(order));
}

// P with one unit of ballot `index` replaced by `replacement`.
inline Profile replace_one_unit(const Profile& p, std::size_t index, const Ranking& replacement) {
  Profile out(p.candidates());
  const auto ballots = p.ballots();
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (i != index) {
      out.add(ballots[i].ranking, ballots[i].weight);
      continue;
    }
    if (ballots[i].weight > 1) out.add(ballots[i].ranking, ballots[i].weight - 1);
    out.add(replacement, 1);
  }
  return out;
}

}  // namespace detail

// Checks one property on the given input(s). Properties whose premise does
// not hold pass vacuously.
inline std::optional<Witness> check_profile(const CombinedRule& rule, PropertyKind kind,
                                            std::span<const Profile> profiles) {
  if (static_cast<int>(profiles.size()) != property_arity(kind)) {
    throw Error(std::string(to_string(kind)) + " takes " + std::to_string(property_arity(kind)) + " profile(s)");
  }
  const Profile& p = profiles[0];
  auto witness = [&](std::string detail) {
    Witness w{kind, {p}, {winner_of(rule, p)}, -1, std::move(detail)};
    return std::optional<Witness>(std::move(w));
  };

  switch (kind) {
    case PropertyKind::Unanimity: {
      const auto top = detail::unanimous_top(p);
      if (top && winner_of(rule, p) != *top) return witness("unanimous top " + std::to_string(*top) + " loses");
      return std::nullopt;
    }
    case PropertyKind::Majority: {
      const auto top = detail::majority_top(p);
      if (top && winner_of(rule, p) != *top) return witness("majority top " + std::to_string(*top) + " loses");
      return std::nullopt;
    }
    case PropertyKind::CondorcetConsistency: {
      const auto cw = find_condorcet(p).winner;
      if (cw && winner_of(rule, p) != *cw) return witness("Condorcet winner " + std::to_string(*cw) + " loses");
      return std::nullopt;
    }
    case PropertyKind::CondorcetLoser: {
      const auto cl = find_condorcet(p).loser;
      if (cl && winner_of(rule, p) == *cl) return witness("Condorcet loser " + std::to_string(*cl) + " wins");
      return std::nullopt;
    }
    case PropertyKind::Monotonicity: {
      const Candidate w = winner_of(rule, p);
      const auto ballots = p.ballots();
      for (std::size_t i = 0; i < ballots.size(); ++i) {
        const int pos = ballots[i].ranking.position_of(w);
        for (int steps = 1; steps <= pos; ++steps) {
          const Ranking lifted = detail::lift(ballots[i].ranking, w, steps);
          Profile q = detail::replace_one_unit(p, i, lifted);
          const Candidate after = winner_of(rule, q);
          if (after != w) {
            Witness out{kind, {p, q}, {w, after}, -1,
                        "lifting " + std::to_string(w) + " by " + std::to_string(steps) + " in ballot " +
                            std::to_string(i) + " changes the winner from " + std::to_string(w) + " to " +
                            std::to_string(after)};
            return out;
          }
        }
      }
      return std::nullopt;
    }
    case PropertyKind::Consistency: {
      const Profile& q = profiles[1];
      const Candidate w1 = winner_of(rule, p), w2 = winner_of(rule, q);
      if (w1 != w2) return std::nullopt;
      Profile joined = p;
      joined.append(q);
      const Candidate wu = winner_of(rule, joined);
      if (wu == w1) return std::nullopt;
      return Witness{kind, {p, q}, {w1, w2}, wu,
                     "both parts elect " + std::to_string(w1) + " but their union elects " + std::to_string(wu)};
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> check_profile(const CombinedRule& rule, PropertyKind kind, const Profile& p) {
  return check_profile(rule, kind, std::span<const Profile>(&p, 1));
}

// Feeds the witness's own input back through the checker.
inline bool witness_replays(const CombinedRule& rule, const Witness& w) {
  const auto inputs = std::span<const Profile>(w.profiles).first(property_arity(w.kind));
  const auto again = check_profile(rule, w.kind, inputs);
  return again && again->profiles == w.profiles && again->winners == w.winners && again->union_winner == w.union_winner;
}

// First witness in enumeration order (shorter profiles first, then
// lexicographic), or in sample order when the space is too large to
// enumerate. Consistency pairs range over multisets of rankings.
inline std::optional<Witness> search_counterexample(const CombinedRule& rule, PropertyKind kind,
                                                    const ProfileSpace& space) {
  std::optional<Witness> found;
  if (kind != PropertyKind::Consistency) {
    for_each_profile(space, [&](const Profile& p) {
      found = check_profile(rule, kind, p);
      return found.has_value();
    });
    return found;
  }

  std::vector<Profile> pool;
  double multisets = 0;
  {
    const double r = static_cast<double>(factorial(space.m));
    double c = 1;  // running C(r + len - 1, len)
    for (int len = 1; len <= space.max_ballots; ++len) multisets += (c = c * (r + len - 1) / len);
  }
  if (space.exhaustive && space.max_weight == 1 && multisets * multisets <= ProfileSpace::kExhaustiveCap) {
    for_each_multiset_profile(space.m, space.max_ballots, [&](const Profile& p) {
      pool.push_back(p);
      return false;
    });
    std::vector<Candidate> winners;
    for (const auto& p : pool) winners.push_back(winner_of(rule, p));
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (winners[i] != winners[j]) continue;
        const Profile pair[2] = {pool[i], pool[j]};
        if (auto w = check_profile(rule, kind, pair)) return w;
      }
    }
    return std::nullopt;
  }
  for (std::uint64_t i = 0; i < space.samples; ++i) {
    const Profile pair[2] = {sample_profile(space, 2 * i), sample_profile(space, 2 * i + 1)};
    if (auto w = check_profile(rule, kind, pair)) return w;
  }
  return std::nullopt;
}

}  // namespace runoff
