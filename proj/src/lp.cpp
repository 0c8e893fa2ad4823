#include "tcg/lp.hpp"

#include <limits>
#include <optional>

#include "tcg/error.hpp"

namespace tcg::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Column layout: [structural | one slack per inequality row | one artificial per row].
// Every row is scaled by ±1 so its right-hand side is nonnegative; the
// artificials then form the initial basis.
class Tableau {
 public:
  explicit Tableau(const Problem& p) : m_(p.constraints.size()), n_(p.variables) {
    for (const Constraint& c : p.constraints) {
      if (c.coefficients.size() != n_) throw DomainError("constraint width mismatch");
      if (c.relation != Relation::kEqual) ++slacks_;
    }
    art_begin_ = n_ + slacks_;
    width_ = art_begin_ + m_;
    rows_.assign(m_, std::vector<Rational>(width_ + 1, Rational(0)));
    sign_.assign(m_, 1);
    std::size_t slack = n_;
    for (std::size_t r = 0; r < m_; ++r) {
      const Constraint& c = p.constraints[r];
      sign_[r] = c.rhs < 0 ? -1 : 1;
      const Rational s = sign_[r];
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] = s * c.coefficients[j];
      if (c.relation == Relation::kGreaterEqual) rows_[r][slack++] = -s;
      if (c.relation == Relation::kLessEqual) rows_[r][slack++] = s;
      rows_[r][art_begin_ + r] = 1;
      rows_[r][width_] = s * c.rhs;
    }
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) basis_[r] = art_begin_ + r;
  }

  // Runs simplex on the given cost vector (size width_). Returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    cost_ = cost;
    price();
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!allow_artificial && j >= art_begin_) break;
        if (is_basic(j)) continue;
        if (reduced_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= 0) continue;
        Rational ratio = rows_[r][width_] / rows_[r][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  // Pivots basic artificials out where a non-artificial column can replace them.
  void expel_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (sgn(rows_[r][j]) != 0 && !is_basic(j)) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Rational objective_value() const {
    Rational z = 0;
    for (std::size_t r = 0; r < m_; ++r) z += cost_[basis_[r]] * rows_[r][width_];
    return z;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) x[basis_[r]] = rows_[r][width_];
    }
    return x;
  }

  // y_r in the caller's row orientation: the scaled-row dual is c_art − d_art.
  std::vector<Rational> row_duals() const {
    std::vector<Rational> y(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = art_begin_ + r;
      y[r] = (cost_[j] - reduced_[j]) * sign_[r];
    }
    return y;
  }

  std::size_t width() const { return width_; }
  std::size_t art_begin() const { return art_begin_; }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void price() {
    reduced_ = cost_;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(rows_[r][j]) != 0) reduced_[j] -= cb * rows_[r][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (Rational& e : rows_[r]) {
      if (sgn(e) != 0) e /= p;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= width_; ++j) {
        if (sgn(rows_[r][j]) != 0) rows_[i][j] -= f * rows_[r][j];
      }
    }
    if (sgn(reduced_[c]) != 0) {
      const Rational f = reduced_[c];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(rows_[r][j]) != 0) reduced_[j] -= f * rows_[r][j];
      }
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t slacks_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
};

}  // namespace

Result minimize(const Problem& problem) {
  if (problem.objective.size() != problem.variables) throw DomainError("objective width mismatch");
  Tableau t(problem);
  Result result;

  std::vector<Rational> phase1(t.width(), Rational(0));
  for (std::size_t j = t.art_begin(); j < t.width(); ++j) phase1[j] = 1;
  t.optimize(phase1, true);
  if (t.objective_value() > 0) {
    result.status = Status::kInfeasible;
    result.farkas = t.row_duals();
    if (!is_farkas_certificate(problem, result.farkas)) {
      throw InvariantError("phase-1 multipliers do not certify infeasibility");
    }
    return result;
  }

  t.expel_artificials();
  std::vector<Rational> phase2(t.width(), Rational(0));
  for (std::size_t j = 0; j < problem.variables; ++j) phase2[j] = problem.objective[j];
  if (!t.optimize(phase2, false)) {
    result.status = Status::kUnbounded;
    return result;
  }
  result.status = Status::kOptimal;
  result.x = t.primal();
  result.objective = t.objective_value();
  result.duals = t.row_duals();
  return result;
}

bool is_farkas_certificate(const Problem& problem, const std::vector<Rational>& y) {
  if (y.size() != problem.constraints.size()) return false;
  std::vector<Rational> combo(problem.variables, Rational(0));
  Rational rhs = 0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    const Constraint& c = problem.constraints[r];
    if (c.relation == Relation::kGreaterEqual && y[r] < 0) return false;
    if (c.relation == Relation::kLessEqual && y[r] > 0) return false;
    for (std::size_t j = 0; j < problem.variables; ++j) combo[j] += y[r] * c.coefficients[j];
    rhs += y[r] * c.rhs;
  }
  for (const Rational& a : combo) {
    if (a > 0) return false;
  }
  return rhs > 0;
}

}  // namespace tcg::lp
