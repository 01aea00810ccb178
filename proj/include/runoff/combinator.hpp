#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "runoff/rules.hpp"

namespace runoff {

// A base rule, or a parenthesised combination used as a base.
struct RuleExpr {
  RuleSpec rule;
  std::vector<RuleExpr> parts;  // non-empty for a nested combination

  RuleExpr() = default;
  RuleExpr(RuleSpec r) : rule(std::move(r)) {}  // NOLINT: implicit by design of the grammar
  static RuleExpr combination(std::vector<RuleExpr> parts) {
    if (parts.empty()) throw Error("empty combination");
    RuleExpr e;
    e.parts = std::move(parts);
    return e;
  }

  bool nested() const { return !parts.empty(); }

  RuleExpr restricted_to(int m) const {
    if (!nested()) return RuleExpr(rule.restricted_to(m));
    RuleExpr e = *this;
    for (auto& p : e.parts) p = p.restricted_to(m);
    return e;
  }

  std::string name() const {
    if (!nested()) return rule.name();
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + parts[i].name();
    return s + ")";
  }
};

// X_1 + ... + X_k with a fixed tie-break order. A single base behaves exactly
// like that base rule.
struct CombinedRule {
  std::vector<RuleExpr> bases;
  TieBreakOrder tiebreak;

  CombinedRule() = default;
  CombinedRule(std::vector<RuleExpr> b, TieBreakOrder tb) : bases(std::move(b)), tiebreak(std::move(tb)) {
    if (bases.empty()) throw Error("combined rule needs at least one base rule");
  }
  CombinedRule(RuleSpec base, TieBreakOrder tb) : CombinedRule(std::vector<RuleExpr>{RuleExpr(std::move(base))}, std::move(tb)) {}

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < bases.size(); ++i) s += (i ? "+" : "") + bases[i].name();
    return s;
  }

  // Plain base rules, or nothing if some base is itself a combination.
  std::optional<std::vector<RuleSpec>> flat_bases() const {
    std::vector<RuleSpec> out;
    for (const auto& b : bases) {
      if (b.nested()) return std::nullopt;
      out.push_back(b.rule);
    }
    return out;
  }
};

namespace detail {

inline std::vector<RuleExpr> parse_sum(std::string_view t, std::size_t& pos, bool inner);

inline RuleExpr parse_term(std::string_view t, std::size_t& pos) {
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  if (pos < t.size() && t[pos] == '(') {
    ++pos;
    auto parts = parse_sum(t, pos, true);
    if (pos >= t.size() || t[pos] != ')') throw Error("missing ')' in rule expression");
    ++pos;
    return parts.size() == 1 ? parts.front() : RuleExpr::combination(std::move(parts));
  }
  // A rule name, possibly with its own argument list: approval(2), scoring(2,1,0).
  const std::size_t start = pos;
  int depth = 0;
  while (pos < t.size()) {
    const char ch = t[pos];
    if (ch == '(') ++depth;
    if (ch == ')') {
      if (depth == 0) break;
      --depth;
    }
    if (ch == '+' && depth == 0) break;
    ++pos;
  }
  const auto piece = t.substr(start, pos - start);
  if (lower_trim(piece).empty()) throw Error("empty rule in expression '" + std::string(t) + "'");
  return RuleExpr(parse_rule(piece));
}

inline std::vector<RuleExpr> parse_sum(std::string_view t, std::size_t& pos, bool inner) {
  std::vector<RuleExpr> out{parse_term(t, pos)};
  while (true) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos >= t.size() || (inner && t[pos] == ')')) return out;
    if (t[pos] != '+') throw Error("expected '+' in rule expression '" + std::string(t) + "'");
    ++pos;
    out.push_back(parse_term(t, pos));
  }
}

}  // namespace detail

// `A + B + C`, left-associative, whitespace-insensitive; parentheses group a
// combination so it can act as a single base, e.g. `(plurality+borda)+plurality`.
inline std::vector<RuleExpr> parse_rule_expr(std::string_view text) {
  std::size_t pos = 0;
  auto out = detail::parse_sum(text, pos, false);
  if (pos != text.size()) throw Error("unbalanced ')' in rule expression");
  return out;
}

struct CombinedResult {
  Candidate winner = -1;
  std::vector<std::vector<Candidate>> trace;  // W at every level, original ids
};

namespace detail {

inline CombinedResult combine(const std::vector<RuleExpr>& bases, const Profile& profile, const TieBreakOrder& tiebreak);

inline Candidate base_winner(const RuleExpr& e, const Profile& p, const TieBreakOrder& tb) {
  if (!e.nested()) return rule_winner(e.rule, p, tb);
  return combine(e.parts, p, tb).winner;
}

inline CombinedResult combine(const std::vector<RuleExpr>& bases, const Profile& profile, const TieBreakOrder& tiebreak) {
  CombinedResult out;
  const Profile* current = &profile;
  Restriction holder;
  TieBreakOrder tb = tiebreak;
  std::vector<Candidate> ids(profile.candidates());
  for (Candidate c = 0; c < profile.candidates(); ++c) ids[c] = c;
  std::vector<RuleExpr> level_bases = bases;

  while (true) {
    const int m = current->candidates();
    std::vector<char> in_w(m, 0);
    for (const auto& base : level_bases) in_w[base_winner(base, *current, tb)] = 1;
    std::vector<Candidate> w;
    for (Candidate c = 0; c < m; ++c)
      if (in_w[c]) w.push_back(c);

    std::vector<Candidate> level;
    for (Candidate c : w) level.push_back(ids[c]);
    out.trace.push_back(std::move(level));

    if (w.size() == 1) {
      out.winner = ids[w.front()];
      return out;
    }
    if (static_cast<int>(w.size()) == m) {
      out.winner = ids[apply_tiebreak(w, tb)];
      return out;
    }
    Restriction r = restrict_profile(*current, w);
    tb = restrict_tiebreak(tb, r);
    std::vector<Candidate> next_ids;
    for (Candidate c : r.to_original) next_ids.push_back(ids[c]);
    ids = std::move(next_ids);
    holder = std::move(r);
    current = &holder.profile;
    for (auto& b : level_bases) b = b.restricted_to(static_cast<int>(w.size()));
  }
}

}  // namespace detail

// Collects every base's tie-broken winner into W. One winner ends the
// recursion; W equal to the current candidate set falls back to the
// tie-break; otherwise the combination is re-run on the profile restricted
// to W.
inline CombinedResult combined_winner(const CombinedRule& rule, const Profile& profile) {
  if (rule.bases.empty()) throw Error("combined rule needs at least one base rule");
  require_nonempty(profile);
  if (rule.tiebreak.size() != profile.candidates()) throw Error("tie-break order does not cover all candidates");
  return detail::combine(rule.bases, profile, rule.tiebreak);
}

inline Candidate winner_of(const CombinedRule& rule, const Profile& profile) {
  return combined_winner(rule, profile).winner;
}

}  // namespace runoff
