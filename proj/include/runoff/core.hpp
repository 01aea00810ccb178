#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "runoff/error.hpp"

namespace runoff {

using Candidate = int;
using Weight = std::int64_t;

// A strict total order over candidates 0..m-1, most preferred first.
class Ranking {
 public:
  Ranking() = default;

  explicit Ranking(std::vector<Candidate> order) : order_(std::move(order)) {
    const int m = static_cast<int>(order_.size());
    if (m == 0) throw Error("ranking needs at least one candidate");
    position_.assign(order_.size(), -1);
    for (int p = 0; p < m; ++p) {
      const Candidate c = order_[p];
      if (c < 0 || c >= m || position_[c] != -1) {
        throw Error("ranking is not a permutation of 0.." + std::to_string(m - 1));
      }
      position_[c] = p;
    }
  }

  static Ranking identity(int m) {
    std::vector<Candidate> order(m);
    std::iota(order.begin(), order.end(), 0);
    return Ranking(std::move(order));
  }

  int size() const { return static_cast<int>(order_.size()); }
  Candidate at(int position) const { return order_[position]; }
  int position_of(Candidate c) const { return position_[c]; }
  Candidate top() const { return order_.front(); }
  Candidate bottom() const { return order_.back(); }
  bool prefers(Candidate i, Candidate j) const { return position_[i] < position_[j]; }
  std::span<const Candidate> order() const { return order_; }

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.order_ == b.order_; }
  friend auto operator<=>(const Ranking& a, const Ranking& b) { return a.order_ <=> b.order_; }

 private:
  std::vector<Candidate> order_;
  std::vector<int> position_;
};

struct WeightedBallot {
  Ranking ranking;
  Weight weight = 1;

  friend bool operator==(const WeightedBallot&, const WeightedBallot&) = default;
};

// Weighted multiset of rankings over m candidates. Identical rankings may be
// stored as separate ballots or merged; every operation treats both alike.
class Profile {
 public:
  Profile() = default;
  explicit Profile(int m) : m_(m) {
    if (m < 1) throw Error("profile needs at least one candidate");
  }

  void add(Ranking ranking, Weight weight = 1) {
    if (ranking.size() != m_) {
      throw Error("ranking length " + std::to_string(ranking.size()) + " does not match m=" +
                  std::to_string(m_));
    }
    if (weight < 1) throw Error("ballot weight must be positive");
    total_ += weight;
    ballots_.push_back({std::move(ranking), weight});
  }

  void add(std::vector<Candidate> order, Weight weight = 1) { add(Ranking(std::move(order)), weight); }

  void append(const Profile& other) {
    if (other.m_ != m_) throw Error("cannot join profiles over different candidate counts");
    for (const auto& b : other.ballots_) add(b.ranking, b.weight);
  }

  int candidates() const { return m_; }
  Weight total_weight() const { return total_; }
  std::span<const WeightedBallot> ballots() const { return ballots_; }
  std::size_t size() const { return ballots_.size(); }
  bool empty() const { return ballots_.empty(); }

  // Removes the last `count` ballots; used by searches that push/pop trial votes.
  void truncate(std::size_t count) {
    while (ballots_.size() > count) {
      total_ -= ballots_.back().weight;
      ballots_.pop_back();
    }
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int m_ = 0;
  Weight total_ = 0;
  std::vector<WeightedBallot> ballots_;
};

// Checks that `p` is usable as an election: at least one ballot.
inline void require_nonempty(const Profile& p) {
  if (p.total_weight() < 1) throw Error("profile has no ballots");
}

// Earlier candidates win ties.
class TieBreakOrder {
 public:
  TieBreakOrder() = default;
  explicit TieBreakOrder(std::vector<Candidate> order) : ranking_(std::move(order)) {}

  static TieBreakOrder ascending(int m) { return TieBreakOrder(Ranking::identity(m)); }

  int size() const { return ranking_.size(); }
  int rank_of(Candidate c) const { return ranking_.position_of(c); }
  bool before(Candidate a, Candidate b) const { return ranking_.prefers(a, b); }
  std::span<const Candidate> order() const { return ranking_.order(); }

  friend bool operator==(const TieBreakOrder&, const TieBreakOrder&) = default;

 private:
  explicit TieBreakOrder(Ranking r) : ranking_(std::move(r)) {}
  Ranking ranking_;
};

inline Candidate apply_tiebreak(std::span<const Candidate> candidates, const TieBreakOrder& order) {
  if (candidates.empty()) throw Error("tie-break over an empty candidate set");
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](Candidate a, Candidate b) { return order.before(a, b); });
}

class PairwiseTally {
 public:
  explicit PairwiseTally(int m) : m_(m), n_(static_cast<std::size_t>(m) * m, 0) {}

  int candidates() const { return m_; }
  Weight total_weight() const { return total_; }

  // Weight of ballots ranking i above j.
  Weight operator()(Candidate i, Candidate j) const { return n_[index(i, j)]; }

  // Strict majority: 2 N(i,j) > n.
  bool beats(Candidate i, Candidate j) const {
    if (i == j) throw Error("beats() needs two distinct candidates");
    return 2 * n_[index(i, j)] > total_;
  }

  void add(const Ranking& r, Weight w) {
    const int m = m_;
    for (int p = 0; p < m; ++p) {
      const Candidate hi = r.at(p);
      for (int q = p + 1; q < m; ++q) n_[index(hi, r.at(q))] += w;
    }
    total_ += w;
  }

  PairwiseTally& operator+=(const PairwiseTally& other) {
    if (other.m_ != m_) throw Error("tally size mismatch");
    for (std::size_t k = 0; k < n_.size(); ++k) n_[k] += other.n_[k];
    total_ += other.total_;
    return *this;
  }

  friend bool operator==(const PairwiseTally&, const PairwiseTally&) = default;

 private:
  std::size_t index(Candidate i, Candidate j) const { return static_cast<std::size_t>(i) * m_ + j; }

  int m_;
  Weight total_ = 0;
  std::vector<Weight> n_;
};

inline PairwiseTally pairwise_tally(const Profile& profile) {
  PairwiseTally t(profile.candidates());
  for (const auto& b : profile.ballots()) t.add(b.ranking, b.weight);
  return t;
}

// Profile restricted to a subset of candidates, re-indexed 0..|keep|-1 in
// ascending order of the original ids.
struct Restriction {
  Profile profile;
  std::vector<Candidate> to_original;  // new id -> old id
  std::vector<Candidate> to_restricted;  // old id -> new id, -1 if removed
};

inline Restriction restrict_profile(const Profile& profile, std::span<const Candidate> keep) {
  const int m = profile.candidates();
  Restriction out;
  out.to_restricted.assign(m, -1);
  for (Candidate c : keep) {
    if (c < 0 || c >= m) throw Error("restriction candidate out of range");
    out.to_restricted[c] = 0;
  }
  for (Candidate c = 0; c < m; ++c) {
    if (out.to_restricted[c] == 0) {
      out.to_restricted[c] = static_cast<Candidate>(out.to_original.size());
      out.to_original.push_back(c);
    }
  }
  if (out.to_original.empty()) throw Error("cannot restrict to an empty candidate set");

  out.profile = Profile(static_cast<int>(out.to_original.size()));
  std::vector<Candidate> order;
  for (const auto& b : profile.ballots()) {
    order.clear();
    for (Candidate c : b.ranking.order()) {
      if (out.to_restricted[c] >= 0) order.push_back(out.to_restricted[c]);
    }
    out.profile.add(Ranking(order), b.weight);
  }
  return out;
}

inline TieBreakOrder restrict_tiebreak(const TieBreakOrder& order, const Restriction& r) {
  std::vector<Candidate> kept;
  for (Candidate c : order.order()) {
    if (r.to_restricted[c] >= 0) kept.push_back(r.to_restricted[c]);
  }
  return TieBreakOrder(std::move(kept));
}

}  // namespace runoff
