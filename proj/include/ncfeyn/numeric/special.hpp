#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <complex>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace ncfeyn::numeric {

namespace detail {
inline void quiet_gsl() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}
}  // namespace detail

/// log Gamma(z) on some branch; callers only exponentiate sums of these.
/// At a pole the real part is +inf.
inline std::complex<double> log_gamma(std::complex<double> z) {
  detail::quiet_gsl();
  gsl_sf_result lnr, arg;
  int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  if (status != GSL_SUCCESS) return {std::numeric_limits<double>::infinity(), 0.0};
  return {lnr.val, arg.val};
}

inline std::complex<double> gamma(std::complex<double> z) { return std::exp(log_gamma(z)); }

inline double gamma(double x) {
  detail::quiet_gsl();
  gsl_sf_result r;
  if (gsl_sf_gamma_e(x, &r) != GSL_SUCCESS) return std::numeric_limits<double>::quiet_NaN();
  return r.val;
}

/// Gauss-Legendre nodes and weights on [0, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) gsl_integration_glfixed_point(0.0, 1.0, i, &x[i], &w[i], table.get());
  return {std::move(x), std::move(w)};
}

}  // namespace ncfeyn::numeric
