#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tropwave/rational.hpp"

namespace tropwave {

enum class Relation { ge, gt, le, lt };

/// coeffs . x  (rel)  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::ge;
  Rational rhs;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rational> witness;
  /// Optimal common slack. With strict constraints present only they carry
  /// the slack and feasibility means slack > 0; otherwise every constraint
  /// carries it (capped at 1) and feasibility means slack >= 0.
  Rational slack;
  std::size_t pivots = 0;
};

/// Exact feasibility of a system of strict and non-strict linear
/// inequalities in free variables.
///
/// Maximises a common slack s <= 1 by running a two-phase simplex on the dual
/// problem, whose tableau has only num_vars + 1 rows. Bland's rule fixes the
/// pivot sequence, so results are reproducible bit for bit. The returned
/// witness is re-checked against every constraint.
LpResult lp_feasible(std::span<const LinearConstraint> constraints, std::size_t num_vars);

}  // namespace tropwave
