#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ncfeyn/exact/matrix.hpp"
#include "ncfeyn/exact/ratfunc.hpp"

namespace ncfeyn {

namespace detail {
template <class T>
bool is_zero(const T& v) {
  return v.is_zero();
}
template <class T>
T exact_divide(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, GaussianRational>) {
    return a / b;
  } else {
    return exact_div(a, b);
  }
}
}  // namespace detail

/// Result of a (possibly partial) fraction-free elimination.
template <class T>
struct BareissResult {
  Matrix<T> reduced;
  int sign = 1;          ///< (-1)^(number of row swaps)
  bool singular = false; ///< a pivot column had no usable entry
};

/// Sylvester/Bareiss elimination of the first `pivots` columns.
///
/// Pivot rows are searched only among rows [k, pivots): the first non-zero
/// entry in the column wins. On success the trailing block (rows and columns
/// >= pivots) holds sign * det of the leading block bordered by that row and
/// column, and reduced(pivots-1, pivots-1) is sign * det of the leading block.
template <class T>
BareissResult<T> bareiss_eliminate(Matrix<T> a, std::size_t pivots) {
  BareissResult<T> out;
  const std::size_t rows = a.rows(), cols = a.cols();
  if (pivots > rows || pivots > cols) throw std::invalid_argument("too many pivots requested");
  std::optional<T> prev;
  for (std::size_t k = 0; k < pivots; ++k) {
    std::size_t p = k;
    while (p < pivots && detail::is_zero(a(p, k))) ++p;
    if (p == pivots) {
      out.singular = true;
      break;
    }
    if (p != k) {
      a.swap_rows(p, k);
      out.sign = -out.sign;
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        T v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = prev ? detail::exact_divide(v, *prev) : std::move(v);
      }
      a(i, k) = T(a(i, k)) - a(i, k);  // exact zero of the right shape
    }
    prev = a(k, k);
  }
  out.reduced = std::move(a);
  return out;
}

/// Determinant over an integral domain with exact division.
template <class T>
T bareiss_determinant(const Matrix<T>& m, const T& one) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return one;
  if (n == 1) return m(0, 0);
  auto r = bareiss_eliminate(m, n - 1);
  if (r.singular) return T(one) - one;
  T d = r.reduced(n - 1, n - 1);
  if (r.sign < 0) d = T(one) - one - d;
  return d;
}

/// Exact determinant of a matrix of rational functions.
///
/// Each row is first scaled by the product of its distinct denominators
/// (monomial denominators are merged through their lcm), Bareiss runs on the
/// resulting polynomial matrix, and the row scales are divided back out.
inline RatFunc det_fraction_free(const Matrix<RatFunc>& m, int nvars) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return RatFunc::constant(nvars, 1);
  Matrix<Poly> cleared(n, n, Poly(nvars));
  Poly scale = Poly::constant(nvars, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent mono(nvars, 0);
    std::vector<Poly> others;
    for (std::size_t j = 0; j < n; ++j) {
      const Poly& d = m(i, j).den();
      if (d.is_constant()) continue;
      if (d.is_monomial()) {
        const auto& e = d.leading_term().first;
        for (int k = 0; k < nvars; ++k) mono[k] = std::max(mono[k], e[k]);
      } else if (std::find(others.begin(), others.end(), d) == others.end()) {
        others.push_back(d);
      }
    }
    Poly row_scale = Poly::monomial(mono, GaussianRational(1));
    for (const auto& o : others) row_scale = row_scale * o;
    for (std::size_t j = 0; j < n; ++j) {
      const RatFunc& e = m(i, j);
      cleared(i, j) = e.num() * exact_div(row_scale, e.den());
    }
    scale = scale * row_scale;
  }
  Poly d = bareiss_determinant(cleared, Poly::constant(nvars, 1));
  return RatFunc(std::move(d), std::move(scale));
}

/// Exact determinant over Q(i) by Gaussian elimination.
inline GaussianRational det_exact(Matrix<GaussianRational> a) {
  const std::size_t n = a.rows();
  GaussianRational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return GaussianRational(0);
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    GaussianRational inv = GaussianRational(1) / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      GaussianRational f = a(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Floating-point determinant, LU with partial pivoting.
inline std::complex<double> det_numeric(Matrix<std::complex<double>> a) {
  const std::size_t n = a.rows();
  std::complex<double> det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) == 0.0) return 0.0;
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      std::complex<double> f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace ncfeyn
