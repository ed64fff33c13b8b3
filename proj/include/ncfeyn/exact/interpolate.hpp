#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ncfeyn/exact/multipoly.hpp"

namespace ncfeyn {

using PointEvaluator = std::function<GaussianRational(std::span<const Rational>)>;

namespace detail {

// Coefficients c_0..c_d of the polynomial through (k, values[k-1]), k = 1..d+1,
// via Newton divided differences expanded to the monomial basis.
inline std::vector<GaussianRational> univariate_fit(const std::vector<GaussianRational>& values) {
  const std::size_t n = values.size();
  std::vector<GaussianRational> dd = values;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / GaussianRational(static_cast<long>(level));
      if (i == level) break;
    }
  // Horner expansion of sum dd[k] * prod_{j<k} (t - (j+1)).
  std::vector<GaussianRational> coeffs(n, GaussianRational(0));
  for (std::size_t k = n; k-- > 0;) {
    // coeffs = coeffs * (t - (k+1)) + dd[k]
    std::vector<GaussianRational> next(n, GaussianRational(0));
    GaussianRational node(static_cast<long>(k + 1));
    for (std::size_t p = 0; p < n; ++p) {
      if (coeffs[p].is_zero()) continue;
      if (p + 1 < n) next[p + 1] += coeffs[p];
      next[p] -= coeffs[p] * node;
    }
    next[0] += dd[k];
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace detail

/// Recovers a polynomial from exact point evaluations on the tensor grid
/// {1, ..., d_l + 1} per variable, then re-checks one off-grid point.
///
/// Throws DegreeBoundExceeded when the off-grid check fails.
inline Poly interpolate(const PointEvaluator& evaluator, const std::vector<int>& degree_bound) {
  const int nvars = static_cast<int>(degree_bound.size());
  std::vector<std::size_t> extent(nvars);
  std::size_t total = 1;
  for (int k = 0; k < nvars; ++k) {
    if (degree_bound[k] < 0) throw std::invalid_argument("negative degree bound");
    extent[k] = static_cast<std::size_t>(degree_bound[k]) + 1;
    total *= extent[k];
  }

  // Values on the grid, row-major with variable 0 slowest.
  std::vector<GaussianRational> grid(total);
  std::vector<Rational> point(nvars);
  std::vector<std::size_t> idx(nvars, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = nvars - 1; k >= 0; --k) {
      idx[k] = rem % extent[k];
      rem /= extent[k];
      point[k] = Rational(static_cast<long>(idx[k] + 1));
    }
    grid[flat] = evaluator(std::span<const Rational>(point));
  }

  // Separable transform: values -> monomial coefficients, one axis at a time.
  std::size_t stride = 1;
  for (int k = nvars - 1; k >= 0; --k) {
    const std::size_t len = extent[k];
    const std::size_t block = stride * len;
    for (std::size_t base = 0; base < total; base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        std::vector<GaussianRational> fiber(len);
        for (std::size_t j = 0; j < len; ++j) fiber[j] = grid[base + off + j * stride];
        auto c = detail::univariate_fit(fiber);
        for (std::size_t j = 0; j < len; ++j) grid[base + off + j * stride] = c[j];
      }
    stride = block;
  }

  Poly result(nvars);
  Exponent e(nvars);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = nvars - 1; k >= 0; --k) {
      e[k] = static_cast<int>(rem % extent[k]);
      rem /= extent[k];
    }
    result.add_term(e, grid[flat]);
  }

  // Off-grid verification point.
  for (int k = 0; k < nvars; ++k)
    point[k] = Rational(static_cast<long>(degree_bound[k] + 2)) + Rational(1, static_cast<unsigned long>(k + 3));
  GaussianRational expect = evaluator(std::span<const Rational>(point));
  GaussianRational got = result.evaluate(std::span<const Rational>(point));
  if (expect != got)
    throw DegreeBoundExceeded("interpolated polynomial disagrees with the evaluator off the grid");
  return result;
}

}  // namespace ncfeyn
