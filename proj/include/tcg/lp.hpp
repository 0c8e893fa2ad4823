#pragma once

#include <cstddef>
#include <vector>

#include "tcg/rational.hpp"

/// Dense two-phase primal simplex over exact rationals with Bland's rule.
/// Problems are `minimize c·x subject to rows, x ≥ 0`.
namespace tcg::lp {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
};

struct Problem {
  std::size_t variables = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  /// Optimal point and value (kOptimal only).
  std::vector<Rational> x;
  Rational objective;
  /// Row duals y at the optimum: c − yᵀA ≥ 0, y_r ≥ 0 on ≥ rows, ≤ 0 on ≤ rows.
  std::vector<Rational> duals;
  /// Farkas multipliers (kInfeasible only): yᵀA ≤ 0 componentwise, yᵀb > 0,
  /// y_r ≥ 0 on ≥ rows, y_r ≤ 0 on ≤ rows, free on = rows.
  std::vector<Rational> farkas;
};

Result minimize(const Problem& problem);

/// Exact check of a Farkas certificate against the problem (used as a self-check).
bool is_farkas_certificate(const Problem& problem, const std::vector<Rational>& y);

}  // namespace tcg::lp
