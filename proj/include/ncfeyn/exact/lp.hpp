#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ncfeyn/exact/gaussian_rational.hpp"

namespace ncfeyn {

struct LinearRow {
  std::vector<Rational> a;
  Rational b;
};

/// maximize c.z  subject to  le[i].a . z <= le[i].b,  eq[j].a . z == eq[j].b,
/// with every z free in sign.
struct LinearProgram {
  int nvars = 0;
  std::vector<Rational> objective;
  std::vector<LinearRow> le;
  std::vector<LinearRow> eq;
};

struct LPResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<Rational> z;
  Rational value;
  std::vector<Rational> dual_le;  ///< non-negative at an optimum
  std::vector<Rational> dual_eq;
};

namespace detail {

// Dense tableau over [z+ | z- | slacks | artificials | rhs], one artificial
// per row. Bland's rule throughout, so the method terminates.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {
    n_ = lp.nvars;
    m_le_ = lp.le.size();
    m_ = m_le_ + lp.eq.size();
    cols_ = 2 * n_ + m_le_ + m_;
    T_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m_, 0);
    flip_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      const LinearRow& row = i < m_le_ ? lp.le[i] : lp.eq[i - m_le_];
      if (static_cast<int>(row.a.size()) != n_) throw std::invalid_argument("LP row has the wrong length");
      flip_[i] = sgn(row.b) < 0 ? -1 : 1;
      Rational f(flip_[i]);
      for (int j = 0; j < n_; ++j) {
        T_[i][j] = f * row.a[j];
        T_[i][n_ + j] = -f * row.a[j];
      }
      if (i < m_le_) T_[i][2 * n_ + i] = f;
      T_[i][2 * n_ + m_le_ + i] = 1;
      T_[i][cols_] = f * row.b;
      basis_[i] = 2 * n_ + m_le_ + i;
    }
  }

  LPResult solve() {
    LPResult res;
    // Phase 1: minimise the sum of artificials.
    std::vector<Rational> c1(cols_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) c1[2 * n_ + m_le_ + i] = -1;
    if (!optimise(c1, true)) throw std::logic_error("phase one cannot be unbounded");
    if (sgn(objective(c1)) < 0) {
      res.status = LPResult::Status::Infeasible;
      return res;
    }
    drive_out_artificials();
    std::vector<Rational> c2(cols_, Rational(0));
    for (int j = 0; j < n_; ++j) {
      c2[j] = lp_.objective.at(j);
      c2[n_ + j] = -lp_.objective.at(j);
    }
    if (!optimise(c2, false)) {
      res.status = LPResult::Status::Unbounded;
      return res;
    }
    res.status = LPResult::Status::Optimal;
    std::vector<Rational> w(cols_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) w[basis_[i]] = T_[i][cols_];
    res.z.assign(n_, Rational(0));
    for (int j = 0; j < n_; ++j) res.z[j] = w[j] - w[n_ + j];
    res.value = objective(c2);
    // Duals from the reduced costs of the artificial (identity) columns.
    std::vector<Rational> y(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t col = 2 * n_ + m_le_ + i;
      Rational acc(0);
      for (std::size_t r = 0; r < m_; ++r) acc += c2[basis_[r]] * T_[r][col];
      y[i] = acc * Rational(flip_[i]);
    }
    res.dual_le.assign(y.begin(), y.begin() + static_cast<long>(m_le_));
    res.dual_eq.assign(y.begin() + static_cast<long>(m_le_), y.end());
    return res;
  }

 private:
  Rational objective(const std::vector<Rational>& c) const {
    Rational v(0);
    for (std::size_t i = 0; i < m_; ++i) v += c[basis_[i]] * T_[i][cols_];
    return v;
  }

  void pivot(std::size_t r, std::size_t col) {
    Rational piv = T_[r][col];
    for (auto& v : T_[r]) v /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(T_[i][col]) == 0) continue;
      Rational f = T_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(T_[r][j]) != 0) T_[i][j] -= f * T_[r][j];
    }
    basis_[r] = col;
  }

  bool is_artificial(std::size_t col) const { return col >= 2 * n_ + m_le_; }

  // Returns false when unbounded.
  bool optimise(const std::vector<Rational>& c, bool allow_artificial) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_ && !enter; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        Rational reduced = c[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (sgn(T_[i][j]) != 0) reduced -= c[basis_[i]] * T_[i][j];
        if (sgn(reduced) > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(T_[i][*enter]) <= 0) continue;
        Rational ratio = T_[i][cols_] / T_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < 2 * n_ + m_le_; ++j)
        if (sgn(T_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      // A row with no structural entry is redundant; its artificial stays
      // basic at zero and never re-enters elsewhere.
    }
  }

  const LinearProgram& lp_;
  int n_ = 0;
  std::size_t m_le_ = 0, m_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> T_;
  std::vector<std::size_t> basis_;
  std::vector<int> flip_;
};

}  // namespace detail

/// Exact two-phase simplex.
inline LPResult solve_lp(const LinearProgram& lp) { return detail::Simplex(lp).solve(); }

}  // namespace ncfeyn
