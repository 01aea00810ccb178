#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "runoff/core.hpp"

namespace runoff {

// Positional weights w_1 >= ... >= w_m >= 0.
struct ScoringVector {
  std::vector<Weight> weights;

  int size() const { return static_cast<int>(weights.size()); }
  Weight operator[](int position) const { return weights[position]; }

  static ScoringVector plurality(int m) { return approval(1, m); }
  static ScoringVector veto(int m) { return approval(m - 1, m); }
  static ScoringVector approval(int k, int m) {
    std::vector<Weight> w(m, 0);
    std::fill_n(w.begin(), std::clamp(k, 0, m), 1);
    return {std::move(w)};
  }
  static ScoringVector borda(int m) {
    std::vector<Weight> w(m);
    for (int p = 0; p < m; ++p) w[p] = m - 1 - p;
    return {std::move(w)};
  }

  // Non-negative and non-increasing; w_1 > w_m is checked where vectors are
  // supplied by users (truncated run-off vectors may be flat).
  void check_shape() const {
    for (int p = 0; p < size(); ++p) {
      if (weights[p] < 0) throw Error("scoring weights must be non-negative");
      if (p > 0 && weights[p] > weights[p - 1]) throw Error("scoring vector must be non-increasing");
    }
  }
};

// Binary knockout tree whose leaves are the candidates.
class Agenda {
 public:
  struct Node {
    Candidate leaf = -1;  // >= 0 for leaves
    int left = -1;
    int right = -1;
  };

  int leaf(Candidate c) {
    nodes_.push_back({c, -1, -1});
    return root_ = static_cast<int>(nodes_.size()) - 1;
  }
  int join(int left, int right) {
    nodes_.push_back({-1, left, right});
    return root_ = static_cast<int>(nodes_.size()) - 1;
  }

  // Balanced tree over candidates in tie-break order. When m is not a power
  // of two the earliest candidates get byes into the second round.
  static Agenda balanced(const TieBreakOrder& order) {
    Agenda a;
    const int m = order.size();
    if (m < 1) throw Error("agenda needs at least one candidate");
    int width = 1;
    while (width < m) width *= 2;
    const int byes = width - m;

    std::vector<int> level;
    for (int k = 0; k < byes; ++k) level.push_back(a.leaf(order.order()[k]));
    for (int k = byes; k + 1 < m; k += 2) {
      const int l = a.leaf(order.order()[k]);
      const int r = a.leaf(order.order()[k + 1]);
      level.push_back(a.join(l, r));
    }
    if (m == 1) level = {a.leaf(order.order()[0])};
    while (level.size() > 1) {
      std::vector<int> next;
      for (std::size_t k = 0; k + 1 < level.size(); k += 2) next.push_back(a.join(level[k], level[k + 1]));
      level = std::move(next);
    }
    a.root_ = level.front();
    return a;
  }

  // Nested pairs of integer ids, e.g. "((0,1),2)".
  static Agenda parse(std::string_view text) {
    Agenda a;
    std::size_t pos = 0;
    a.root_ = a.parse_node(text, pos);
    a.skip_ws(text, pos);
    if (pos != text.size()) throw Error("trailing characters in agenda");
    return a;
  }

  int root() const { return root_; }
  const Node& node(int id) const { return nodes_[id]; }

  void validate(int m) const {
    if (root_ < 0) throw Error("empty agenda");
    std::vector<int> seen(m, 0);
    int leaves = 0;
    for (const auto& n : nodes_) {
      if (n.leaf < 0) continue;
      if (n.leaf >= m || seen[n.leaf]++) throw Error("agenda leaves must be distinct candidates");
      ++leaves;
    }
    if (leaves != m) throw Error("agenda must contain every candidate exactly once");
  }

  std::string to_string() const {
    std::string out;
    render(root_, out);
    return out;
  }

 private:
  void render(int id, std::string& out) const {
    const auto& n = nodes_[id];
    if (n.leaf >= 0) {
      out += std::to_string(n.leaf);
      return;
    }
    out += '(';
    render(n.left, out);
    out += ',';
    render(n.right, out);
    out += ')';
  }

  static void skip_ws(std::string_view t, std::size_t& pos) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }

  int parse_node(std::string_view t, std::size_t& pos) {
    skip_ws(t, pos);
    if (pos >= t.size()) throw Error("unexpected end of agenda");
    if (t[pos] == '(') {
      ++pos;
      const int l = parse_node(t, pos);
      skip_ws(t, pos);
      if (pos >= t.size() || t[pos] != ',') throw Error("expected ',' in agenda");
      ++pos;
      const int r = parse_node(t, pos);
      skip_ws(t, pos);
      if (pos >= t.size() || t[pos] != ')') throw Error("expected ')' in agenda");
      ++pos;
      return join(l, r);
    }
    std::size_t end = pos;
    while (end < t.size() && std::isdigit(static_cast<unsigned char>(t[end]))) ++end;
    if (end == pos) throw Error("expected candidate id in agenda");
    const int c = std::stoi(std::string(t.substr(pos, end - pos)));
    pos = end;
    return leaf(c);
  }

  std::vector<Node> nodes_;
  int root_ = -1;
};

enum class RuleKind { Plurality, Veto, Approval, Borda, Scoring, Cup, Copeland, Maximin, Stv, Bucklin };

struct RuleSpec {
  RuleKind kind = RuleKind::Plurality;
  int k = 0;                         // Approval
  std::vector<Weight> weights;       // Scoring
  std::optional<Agenda> agenda;      // Cup; empty means balanced-by-tiebreak

  static RuleSpec of(RuleKind kind) {
    RuleSpec r;
    r.kind = kind;
    return r;
  }
  static RuleSpec plurality() { return of(RuleKind::Plurality); }
  static RuleSpec veto() { return of(RuleKind::Veto); }
  static RuleSpec borda() { return of(RuleKind::Borda); }
  static RuleSpec cup() { return of(RuleKind::Cup); }
  static RuleSpec cup(Agenda a) { return {RuleKind::Cup, 0, {}, std::move(a)}; }
  static RuleSpec copeland() { return of(RuleKind::Copeland); }
  static RuleSpec maximin() { return of(RuleKind::Maximin); }
  static RuleSpec stv() { return of(RuleKind::Stv); }
  static RuleSpec bucklin() { return of(RuleKind::Bucklin); }
  static RuleSpec approval(int k) {
    if (k < 1) throw Error("approval(k) needs k >= 1");
    RuleSpec r = of(RuleKind::Approval);
    r.k = k;
    return r;
  }
  static RuleSpec scoring(std::vector<Weight> w) {
    ScoringVector v{w};
    v.check_shape();
    if (v.size() >= 2 && v.weights.front() <= v.weights.back()) {
      throw Error("scoring vector needs w1 > wm");
    }
    RuleSpec r = of(RuleKind::Scoring);
    r.weights = std::move(w);
    return r;
  }

  bool is_scoring() const {
    return kind == RuleKind::Plurality || kind == RuleKind::Veto || kind == RuleKind::Approval ||
           kind == RuleKind::Borda || kind == RuleKind::Scoring;
  }

  // Scoring vector for m candidates; throws on arity mismatch.
  ScoringVector scoring_vector(int m) const {
    switch (kind) {
      case RuleKind::Plurality: return ScoringVector::plurality(m);
      case RuleKind::Veto: return ScoringVector::veto(m);
      case RuleKind::Borda: return ScoringVector::borda(m);
      case RuleKind::Approval:
        if (k >= m && m > 1) {
          throw Error("approval(" + std::to_string(k) + ") needs more than k candidates");
        }
        return ScoringVector::approval(k, m);
      case RuleKind::Scoring: {
        if (static_cast<int>(weights.size()) != m) {
          throw Error("scoring vector has length " + std::to_string(weights.size()) + " but m=" +
                      std::to_string(m));
        }
        ScoringVector v{weights};
        v.check_shape();
        return v;
      }
      default: throw Error(name() + " is not a scoring rule");
    }
  }

  // The same rule re-instantiated for a run-off over m candidates: named
  // vectors are re-derived, explicit vectors lose their tail, explicit
  // agendas are replaced by the balanced default, and approval(k) with
  // k >= m approves all but the last candidate.
  RuleSpec restricted_to(int m) const {
    RuleSpec r = *this;
    if (kind == RuleKind::Scoring && static_cast<int>(weights.size()) > m) {
      r.weights.resize(m);
    } else if (kind == RuleKind::Approval && k >= m) {
      r.k = std::max(1, m - 1);
    } else if (kind == RuleKind::Cup) {
      r.agenda.reset();
    }
    return r;
  }

  std::string name() const {
    switch (kind) {
      case RuleKind::Plurality: return "plurality";
      case RuleKind::Veto: return "veto";
      case RuleKind::Approval: return "approval(" + std::to_string(k) + ")";
      case RuleKind::Borda: return "borda";
      case RuleKind::Scoring: {
        std::string s = "scoring(";
        for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
        return s + ")";
      }
      case RuleKind::Cup: return agenda ? "cup" + agenda->to_string() : "cup";
      case RuleKind::Copeland: return "copeland";
      case RuleKind::Maximin: return "maximin";
      case RuleKind::Stv: return "stv";
      case RuleKind::Bucklin: return "bucklin";
    }
    return "?";
  }

  friend bool operator==(const RuleSpec& a, const RuleSpec& b) {
    return a.kind == b.kind && a.k == b.k && a.weights == b.weights &&
           a.agenda.has_value() == b.agenda.has_value() &&
           (!a.agenda || a.agenda->to_string() == b.agenda->to_string());
  }
};

namespace detail {

inline std::string lower_trim(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

inline std::vector<Weight> parse_int_list(std::string_view s) {
  std::vector<Weight> out;
  std::string item;
  std::istringstream is{std::string(s)};
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw Error("bad integer '" + item + "'");
    }
    if (used != item.size()) throw Error("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// plurality | veto | approval(k) | borda | scoring(w1,...,wm) | cup |
// copeland | maximin | stv | bucklin   (case and whitespace insensitive)
inline RuleSpec parse_rule(std::string_view text) {
  const std::string s = detail::lower_trim(text);
  if (s == "plurality") return RuleSpec::plurality();
  if (s == "veto") return RuleSpec::veto();
  if (s == "borda") return RuleSpec::borda();
  if (s == "cup") return RuleSpec::cup();
  if (s == "copeland") return RuleSpec::copeland();
  if (s == "maximin") return RuleSpec::maximin();
  if (s == "stv") return RuleSpec::stv();
  if (s == "bucklin") return RuleSpec::bucklin();
  auto args = [&](std::string_view head) -> std::optional<std::string_view> {
    if (s.size() > head.size() + 1 && s.starts_with(head) && s[head.size()] == '(' && s.back() == ')') {
      return std::string_view(s).substr(head.size() + 1, s.size() - head.size() - 2);
    }
    return std::nullopt;
  };
  if (auto a = args("approval")) {
    const auto v = detail::parse_int_list(*a);
    if (v.size() != 1) throw Error("approval takes one argument");
    return RuleSpec::approval(static_cast<int>(v[0]));
  }
  if (auto a = args("scoring")) return RuleSpec::scoring(detail::parse_int_list(*a));
  throw Error("unknown rule '" + std::string(text) + "'");
}

// Per-candidate totals sum_b weight(b) * w[pos_b(c)].
inline std::vector<Weight> scoring_scores(const Profile& profile, const ScoringVector& vector) {
  const int m = profile.candidates();
  if (vector.size() != m) {
    throw Error("scoring vector length " + std::to_string(vector.size()) + " does not match m=" +
                std::to_string(m));
  }
  std::vector<Weight> score(m, 0);
  for (const auto& b : profile.ballots()) {
    for (int p = 0; p < m; ++p) score[b.ranking.at(p)] += b.weight * vector[p];
  }
  return score;
}

// Smallest k whose weighted k-approval score exceeds half the total weight.
inline std::vector<int> bucklin_scores(const Profile& profile) {
  const int m = profile.candidates();
  std::vector<Weight> at(static_cast<std::size_t>(m) * m, 0);  // at[c*m + p]
  for (const auto& b : profile.ballots()) {
    for (int p = 0; p < m; ++p) at[static_cast<std::size_t>(b.ranking.at(p)) * m + p] += b.weight;
  }
  std::vector<int> score(m, m);
  for (Candidate c = 0; c < m; ++c) {
    Weight approvals = 0;
    for (int p = 0; p < m; ++p) {
      approvals += at[static_cast<std::size_t>(c) * m + p];
      if (2 * approvals > profile.total_weight()) {
        score[c] = p + 1;
        break;
      }
    }
  }
  return score;
}

inline int bucklin_score(const Profile& profile, Candidate c) { return bucklin_scores(profile).at(c); }

inline std::vector<Weight> copeland_scores(const PairwiseTally& t) {
  const int m = t.candidates();
  std::vector<Weight> score(m, 0);
  for (Candidate i = 0; i < m; ++i)
    for (Candidate j = 0; j < m; ++j)
      if (i != j && t.beats(i, j)) ++score[i];
  return score;
}

inline std::vector<Weight> maximin_scores(const PairwiseTally& t) {
  const int m = t.candidates();
  std::vector<Weight> score(m, m > 1 ? t.total_weight() : 0);
  for (Candidate i = 0; i < m; ++i)
    for (Candidate j = 0; j < m; ++j)
      if (i != j) score[i] = std::min(score[i], t(i, j));
  return score;
}

// Pairwise majority; exact ties go to the tie-break order.
inline Candidate majority_winner(const PairwiseTally& t, Candidate x, Candidate y, const TieBreakOrder& tb) {
  const Weight xy = t(x, y), yx = t(y, x);
  if (xy != yx) return xy > yx ? x : y;
  return tb.before(x, y) ? x : y;
}

inline Candidate cup_winner(const PairwiseTally& t, const Agenda& agenda, const TieBreakOrder& tb) {
  auto eval = [&](auto&& self, int id) -> Candidate {
    const auto& n = agenda.node(id);
    if (n.leaf >= 0) return n.leaf;
    return majority_winner(t, self(self, n.left), self(self, n.right), tb);
  };
  return eval(eval, agenda.root());
}

inline Candidate cup_winner(const Profile& profile, const Agenda& agenda, const TieBreakOrder& tb) {
  agenda.validate(profile.candidates());
  return cup_winner(pairwise_tally(profile), agenda, tb);
}

// Rounds of eliminating the weakest first-place candidate until someone holds
// a strict majority. Among equally weak candidates, the one latest in the
// tie-break order goes first.
inline Candidate stv_winner(const Profile& profile, const TieBreakOrder& tb) {
  const int m = profile.candidates();
  std::vector<char> active(m, 1);
  int remaining = m;
  const Weight total = profile.total_weight();
  std::vector<Weight> firsts(m);
  while (true) {
    std::fill(firsts.begin(), firsts.end(), 0);
    for (const auto& b : profile.ballots()) {
      for (Candidate c : b.ranking.order()) {
        if (active[c]) {
          firsts[c] += b.weight;
          break;
        }
      }
    }
    Candidate loser = -1;
    for (Candidate c = 0; c < m; ++c) {
      if (!active[c]) continue;
      if (2 * firsts[c] > total || remaining == 1) return c;
      if (loser < 0 || firsts[c] < firsts[loser] || (firsts[c] == firsts[loser] && tb.before(loser, c))) {
        loser = c;
      }
    }
    active[loser] = 0;
    --remaining;
  }
}

struct RuleResult {
  std::vector<Candidate> cowinners;
  Candidate winner = -1;
};

namespace detail {

template <typename Better>
std::vector<Candidate> best_set(const std::vector<Weight>& score, Better better) {
  std::vector<Candidate> out;
  for (Candidate c = 0; c < static_cast<Candidate>(score.size()); ++c) {
    if (out.empty() || better(score[c], score[out.front()])) {
      out = {c};
    } else if (score[c] == score[out.front()]) {
      out.push_back(c);
    }
  }
  return out;
}

inline std::vector<Candidate> argmax(const std::vector<Weight>& s) { return best_set(s, std::greater<>{}); }

}  // namespace detail

inline RuleResult rule_cowinners(const RuleSpec& rule, const Profile& profile, const TieBreakOrder& tb) {
  require_nonempty(profile);
  const int m = profile.candidates();
  if (tb.size() != m) throw Error("tie-break order does not cover all candidates");

  RuleResult r;
  if (m == 1) {
    r.cowinners = {0};
  } else if (rule.is_scoring()) {
    r.cowinners = detail::argmax(scoring_scores(profile, rule.scoring_vector(m)));
  } else {
    switch (rule.kind) {
      case RuleKind::Cup: {
        const Agenda agenda = rule.agenda ? *rule.agenda : Agenda::balanced(tb);
        agenda.validate(m);
        r.cowinners = {cup_winner(pairwise_tally(profile), agenda, tb)};
        break;
      }
      case RuleKind::Copeland: r.cowinners = detail::argmax(copeland_scores(pairwise_tally(profile))); break;
      case RuleKind::Maximin: r.cowinners = detail::argmax(maximin_scores(pairwise_tally(profile))); break;
      case RuleKind::Stv: r.cowinners = {stv_winner(profile, tb)}; break;
      case RuleKind::Bucklin: {
        const auto b = bucklin_scores(profile);
        r.cowinners = detail::best_set(std::vector<Weight>(b.begin(), b.end()), std::less<>{});
        break;
      }
      default: throw Error("unhandled rule");
    }
  }
  r.winner = apply_tiebreak(r.cowinners, tb);
  return r;
}

inline Candidate rule_winner(const RuleSpec& rule, const Profile& profile, const TieBreakOrder& tb) {
  return rule_cowinners(rule, profile, tb).winner;
}

}  // namespace runoff
