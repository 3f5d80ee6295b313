#include "tropwave/lp.hpp"

#include <optional>
#include <stdexcept>

namespace tropwave {

namespace {

// Dense tableau for  min c.y  s.t.  E y = e (e >= 0),  y >= 0,
// with one artificial column per row appended after the structural ones.
class DualTableau {
 public:
  DualTableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
              std::vector<Rational> cost)
      : m_(rows.size()), k_(cost.size()), cost_(std::move(cost)) {
    width_ = k_ + m_;
    t_.assign(m_, std::vector<Rational>(width_ + 1));
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < k_; ++j) t_[r][j] = rows[r][j];
      t_[r][k_ + r] = 1;
      t_[r][width_] = rhs[r];
      basis_[r] = k_ + r;
    }
  }

  // Returns false if the original system E y = e, y >= 0 has no solution.
  bool phase_one() {
    std::vector<Rational> c(width_);
    for (std::size_t r = 0; r < m_; ++r) c[k_ + r] = 1;
    run(c, width_);
    Rational total = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= k_) total += t_[r][width_];
    }
    if (total != 0) return false;
    // Drive zero-level artificials out of the basis where a structural
    // column allows it; rows where none does are redundant and stay put.
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < k_) continue;
      for (std::size_t j = 0; j < k_; ++j) {
        if (t_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
    return true;
  }

  // Returns false if phase two is unbounded.
  bool phase_two() {
    std::vector<Rational> c(width_);
    for (std::size_t j = 0; j < k_; ++j) c[j] = cost_[j];
    return run(c, k_);
  }

  // Simplex multipliers c_B^T B^{-1}; B^{-1} sits under the artificial columns.
  std::vector<Rational> multipliers() const {
    std::vector<Rational> pi(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational acc = 0;
      for (std::size_t r = 0; r < m_; ++r) {
        const std::size_t b = basis_[r];
        if (b < k_ && cost_[b] != 0 && t_[r][k_ + i] != 0) acc += cost_[b] * t_[r][k_ + i];
      }
      pi[i] = acc;
    }
    return pi;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(const std::vector<Rational>& c, std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (is_basic(j)) continue;
        Rational reduced = c[j];
        for (std::size_t r = 0; r < m_; ++r) {
          if (t_[r][j] != 0 && c[basis_[r]] != 0) reduced -= c[basis_[r]] * t_[r][j];
        }
        if (reduced < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      const std::size_t j = *entering;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][j] <= 0) continue;
        Rational ratio = t_[r][width_] / t_[r][j];
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, j);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const Rational p = t_[row][col];
    for (auto& v : t_[row]) {
      if (v != 0) v /= p;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || t_[r][col] == 0) continue;
      const Rational f = t_[r][col];
      for (std::size_t j = 0; j <= width_; ++j) {
        if (t_[row][j] != 0) t_[r][j] -= f * t_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t m_, k_, width_ = 0;
  std::vector<Rational> cost_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

bool is_strict(Relation r) { return r == Relation::gt || r == Relation::lt; }

bool satisfied(const LinearConstraint& c, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (c.coeffs[i] != 0) lhs += c.coeffs[i] * x[i];
  }
  switch (c.rel) {
    case Relation::ge: return lhs >= c.rhs;
    case Relation::gt: return lhs > c.rhs;
    case Relation::le: return lhs <= c.rhs;
    case Relation::lt: return lhs < c.rhs;
  }
  return false;
}

}  // namespace

LpResult lp_feasible(std::span<const LinearConstraint> constraints, std::size_t num_vars) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != num_vars) throw std::invalid_argument("lp_feasible: coefficient count mismatch");
  }
  LpResult out;
  if (constraints.empty()) {
    out.feasible = true;
    out.witness.assign(num_vars, Rational(0));
    out.slack = 1;
    return out;
  }

  bool any_strict = false;
  for (const auto& c : constraints) any_strict = any_strict || is_strict(c.rel);

  // Primal: max s  s.t.  a.x - s [if slack-carrying] >= b,  s <= 1.
  // Column k of the dual is (-a_k, slack_k) with cost -b_k; the cap column
  // is (0, 1) with cost 1; the dual right-hand side is (0, ..., 0, 1).
  const std::size_t rows = num_vars + 1;
  const std::size_t cols = constraints.size() + 1;
  std::vector<std::vector<Rational>> e(rows, std::vector<Rational>(cols));
  std::vector<Rational> cost(cols);
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    const bool flip = c.rel == Relation::le || c.rel == Relation::lt;
    for (std::size_t i = 0; i < num_vars; ++i) e[i][k] = flip ? c.coeffs[i] : Rational(-c.coeffs[i]);
    const bool carries_slack = !any_strict || is_strict(c.rel);
    e[num_vars][k] = carries_slack ? 1 : 0;
    cost[k] = flip ? c.rhs : Rational(-c.rhs);
  }
  e[num_vars][cols - 1] = 1;
  cost[cols - 1] = 1;
  std::vector<Rational> rhs(rows);
  rhs[num_vars] = 1;

  DualTableau tab(std::move(e), std::move(rhs), std::move(cost));
  if (!tab.phase_one() || !tab.phase_two()) {
    out.feasible = false;
    out.pivots = tab.pivots();
    return out;
  }
  std::vector<Rational> pi = tab.multipliers();
  out.pivots = tab.pivots();
  out.slack = pi[num_vars];
  pi.pop_back();
  out.feasible = any_strict ? out.slack > 0 : out.slack >= 0;
  if (!out.feasible) return out;
  out.witness = std::move(pi);
  for (const auto& c : constraints) {
    if (!satisfied(c, out.witness)) throw std::logic_error("lp_feasible: witness fails a constraint");
  }
  return out;
}

}  // namespace tropwave
