#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "runoff/error.hpp"

namespace runoff {

// min sum_j x_j  s.t.  A x >= b,  x >= 0 integer.
// Dense dual simplex (the all-slack basis is dual feasible because every cost
// is 1) inside a depth-first branch and bound. Sized for a few dozen rows and
// a few thousand columns with small integer coefficients.
class CoveringIlp {
 public:
  explicit CoveringIlp(int columns) : n_(columns) {}

  void add_row(std::vector<double> coeffs, double rhs) {
    if (static_cast<int>(coeffs.size()) != n_) throw Error("ILP row has the wrong width");
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(rhs);
  }

  int columns() const { return n_; }

  struct Solution {
    std::int64_t objective = 0;
    std::vector<std::int64_t> x;
  };

  // Optimal integer solution with objective <= limit, if any.
  std::optional<Solution> solve(std::int64_t limit, std::uint64_t node_budget = 2'000'000) {
    best_.reset();
    limit_ = limit;
    nodes_ = 0;
    node_budget_ = node_budget;
    std::vector<Bound> bounds;
    branch(bounds);
    return best_;
  }

 private:
  static constexpr double kEps = 1e-7;

  struct Bound {
    int column;
    bool upper;  // x_j <= value, else x_j >= value
    double value;
  };

  struct Lp {
    bool feasible = false;
    double objective = 0;
    std::vector<double> x;
  };

  Lp solve_lp(const std::vector<Bound>& bounds) const {
    const int rows = static_cast<int>(rows_.size() + bounds.size());
    const int cols = n_ + rows;  // structural + surplus
    // Row i: -a_i x + s_i = -b_i, basis = surplus columns.
    std::vector<std::vector<double>> t(rows, std::vector<double>(cols + 1, 0.0));
    for (int i = 0; i < rows; ++i) {
      std::vector<double>& r = t[i];
      if (i < static_cast<int>(rows_.size())) {
        for (int j = 0; j < n_; ++j) r[j] = -rows_[i][j];
        r[cols] = -rhs_[i];
      } else {
        const Bound& bd = bounds[i - rows_.size()];
        // x_j <= v  ->  -x_j >= -v ;  x_j >= v
        const double sign = bd.upper ? -1.0 : 1.0;
        r[bd.column] = -sign;
        r[cols] = -sign * bd.value;
      }
      r[n_ + i] = 1.0;
    }
    std::vector<double> reduced(cols, 0.0);
    // Tiny distinct cost perturbations break the massive dual degeneracy of
    // equal costs; the reported objective is recomputed from x.
    for (int j = 0; j < n_; ++j) reduced[j] = 1.0 + 1e-7 * (static_cast<double>(j) + 1) / n_;
    std::vector<int> basis(rows);
    for (int i = 0; i < rows; ++i) basis[i] = n_ + i;

    Lp lp;
    for (int iter = 0; iter < 50 * (rows + cols); ++iter) {
      // Most infeasible row first; Bland's rule later to rule out cycling.
      const bool bland = iter > 20 * rows;
      int leave = -1;
      double most = -kEps;
      for (int i = 0; i < rows; ++i) {
        if (t[i][cols] >= -kEps) continue;
        if (bland ? (leave < 0 || basis[i] < basis[leave]) : t[i][cols] < most) {
          most = t[i][cols];
          leave = i;
        }
      }
      if (leave < 0) {
        lp.feasible = true;
        lp.x.assign(n_, 0.0);
        for (int i = 0; i < rows; ++i)
          if (basis[i] < n_) lp.x[basis[i]] = t[i][cols];
        for (double v : lp.x) lp.objective += v;
        return lp;
      }
      int enter = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int j = 0; j < cols; ++j) {
        const double a = t[leave][j];
        if (a < -kEps) {
          const double r = reduced[j] / -a;
          if (r < ratio - 1e-9) {
            ratio = r;
            enter = j;
          }
        }
      }
      if (enter < 0) return lp;  // primal infeasible

      std::vector<double>& pr = t[leave];
      const double piv = pr[enter];
      for (double& v : pr) v /= piv;
      for (int i = 0; i < rows; ++i) {
        if (i == leave) continue;
        const double f = t[i][enter];
        if (std::abs(f) < 1e-15) continue;
        std::vector<double>& r = t[i];
        for (int j = 0; j <= cols; ++j) r[j] -= f * pr[j];
      }
      const double f = reduced[enter];
      if (f != 0.0)
        for (int j = 0; j < cols; ++j) reduced[j] -= f * pr[j];
      basis[leave] = enter;
    }
    throw Error("simplex iteration limit reached");
  }

  void branch(std::vector<Bound>& bounds) {
    if (++nodes_ > node_budget_) throw BudgetExceeded("branch and bound node budget exhausted");
    const Lp lp = solve_lp(bounds);
    if (!lp.feasible) return;
    const auto bound = static_cast<std::int64_t>(std::ceil(lp.objective - 1e-6));
    const std::int64_t cutoff = best_ ? best_->objective - 1 : limit_;
    if (bound > cutoff) return;

    int frac = -1;
    double worst = 0;
    for (int j = 0; j < n_; ++j) {
      const double f = std::abs(lp.x[j] - std::round(lp.x[j]));
      if (f > 1e-6 && f > worst) {
        worst = f;
        frac = j;
      }
    }
    if (frac < 0) {
      Solution s;
      s.x.resize(n_);
      for (int j = 0; j < n_; ++j) {
        s.x[j] = static_cast<std::int64_t>(std::llround(lp.x[j]));
        s.objective += s.x[j];
      }
      if (!best_ || s.objective < best_->objective) best_ = std::move(s);
      return;
    }
    const double v = lp.x[frac];
    bounds.push_back({frac, false, std::ceil(v)});
    branch(bounds);
    bounds.back() = {frac, true, std::floor(v)};
    branch(bounds);
    bounds.pop_back();
  }

  int n_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::optional<Solution> best_;
  std::int64_t limit_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_budget_ = 0;
};

}  // namespace runoff
