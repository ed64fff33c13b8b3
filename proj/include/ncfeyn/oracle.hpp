#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include "ncfeyn/amplitude.hpp"
#include "ncfeyn/numeric/special.hpp"

namespace ncfeyn::oracle {

struct QuadratureConfig {
  enum class Scheme { TensorGaussLegendre };
  Scheme scheme = Scheme::TensorGaussLegendre;
  int points = 48;  ///< Gauss-Legendre nodes per panel and axis (two panels per axis)
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0;  ///< |I(n) - I(n/2)|
  std::size_t evaluations = 0;
};

namespace detail {

struct DoubleTerm {
  std::complex<double> c;
  Exponent e;
};

template <class C>
std::vector<DoubleTerm> flatten(const MultiPoly<C>& p) {
  std::vector<DoubleTerm> out;
  for (const auto& [e, c] : p.terms()) {
    if constexpr (std::is_same_v<C, Rational>)
      out.push_back({c.get_d(), e});
    else
      out.push_back({c.to_complex(), e});
  }
  return out;
}

inline std::complex<double> eval(const std::vector<DoubleTerm>& terms, std::span<const double> t) {
  std::complex<double> s = 0;
  for (const auto& [c, e] : terms) {
    double m = 1;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int p = 0; p < e[k]; ++p) m *= t[k];
    s += c * m;
  }
  return s;
}

// Smallest multiple of `den` that is >= bound (and >= 1).
inline int substitution_power(double bound, long den) {
  long m = den;
  while (static_cast<double>(m) < bound - 1e-12) m += den;
  return static_cast<int>(m);
}

// Exponent map near t = 0 (t = tau^m / 2) and t = 1 (1 - t = sigma^k / 2)
// and the tensor rule built from them.
struct AxisRule {
  std::vector<double> t;
  std::vector<double> w;  ///< includes the Jacobian and (1 - t^2)^{D/2 - 1}
};

inline AxisRule axis_rule(int n, int m0, int k1, double D) {
  auto [x, w] = numeric::gauss_legendre(static_cast<std::size_t>(n));
  AxisRule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double tau = x[i];
    double t = 0.5 * std::pow(tau, m0);
    double jac = 0.5 * m0 * std::pow(tau, m0 - 1);
    r.t.push_back(t);
    r.w.push_back(w[i] * jac * std::pow(1 - t * t, D / 2 - 1));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sigma = x[i];
    double one_minus = 0.5 * std::pow(sigma, k1);
    double t = 1 - one_minus;
    double jac = 0.5 * k1 * std::pow(sigma, k1 - 1);
    // (1 - t^2) = (1 - t)(1 + t), kept factored for accuracy near t = 1.
    r.t.push_back(t);
    r.w.push_back(w[i] * jac * std::pow(one_minus * (1 + t), D / 2 - 1));
  }
  return r;
}

}  // namespace detail

/// Throws DivergentAtD unless prod dt (1-t^2)^{D/2-1} HU^{-D/2} is integrable
/// on (0,1)^L: every subset S of lines must satisfy |S| > (D/2) deg_S(HU),
/// deg_S being the lowest degree of HU in the variables of S.
inline void check_convergence(const RealPoly& hu, const Rational& D) {
  if (sgn(D) <= 0) throw DivergentAtD("the measure (1-t^2)^{D/2-1} needs D > 0");
  for (const auto& [e, c] : hu.terms())
    if (sgn(c) < 0) throw DivergentAtD("convergence pre-check needs non-negative HU coefficients");
  const int L = hu.nvars();
  for (unsigned long S = 1; S < (1UL << L); ++S) {
    int size = 0, deg = 1 << 20;
    for (int l = 0; l < L; ++l) size += (S >> l) & 1UL;
    for (const auto& [e, c] : hu.terms()) {
      int d = 0;
      for (int l = 0; l < L; ++l)
        if ((S >> l) & 1UL) d += e[l];
      deg = std::min(deg, d);
    }
    if (!(Rational(size) > D / 2 * deg))
      throw DivergentAtD("integral diverges at t -> 0 on a subset of " + std::to_string(size) + " lines");
  }
}

namespace detail {

template <class Integrand>
QuadratureResult tensor_integrate(const RealPoly& hu, const Rational& D_exact, const QuadratureConfig& q,
                                  Integrand&& integrand) {
  const int L = hu.nvars();
  if (L > 4) throw ConfigurationError("direct integration is limited to L <= 4");
  if (q.points < 8) throw ConfigurationError("at least 8 points per axis are required");
  check_convergence(hu, D_exact);
  const double D = D_exact.get_d();
  const Rational half_D = D_exact / 2;
  const long den = half_D.get_den().get_si();

  double bound0 = 1;
  for (unsigned long S = 1; S < (1UL << L); ++S) {
    int size = 0, deg = 1 << 20;
    for (int l = 0; l < L; ++l) size += (S >> l) & 1UL;
    for (const auto& [e, c] : hu.terms()) {
      int d = 0;
      for (int l = 0; l < L; ++l)
        if ((S >> l) & 1UL) d += e[l];
      deg = std::min(deg, d);
    }
    bound0 = std::max(bound0, size / (size - D / 2 * deg));
  }
  const int m0 = substitution_power(bound0, den);
  const int k1 = substitution_power(2 / D, den);

  auto run = [&](int n) {
    auto rule = axis_rule(n, m0, k1, D);
    const std::size_t per_axis = rule.t.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(L), 0);
    std::vector<double> t(static_cast<std::size_t>(L));
    std::complex<double> sum = 0;
    std::size_t count = 0;
    for (;;) {
      double w = 1;
      for (int l = 0; l < L; ++l) {
        t[l] = rule.t[idx[l]];
        w *= rule.w[idx[l]];
      }
      sum += w * integrand(std::span<const double>(t));
      ++count;
      int l = L - 1;
      while (l >= 0 && idx[l] + 1 == per_axis) idx[l--] = 0;
      if (l < 0) break;
      ++idx[l];
    }
    return std::pair{sum, count};
  };

  auto [fine, n_fine] = run(q.points);
  auto [coarse, n_coarse] = run(q.points / 2);
  return {fine, std::abs(fine - coarse), n_fine + n_coarse};
}

}  // namespace detail

/// int_{(0,1)^L} prod dt (1-t^2)^{D/2-1} HU^{-D/2} exp(-HV/HU) at fixed externals.
///
/// Endpoint singularities are removed by t = tau^m / 2 on [0, 1/2] and
/// 1 - t = sigma^k / 2 on [1/2, 1], with m and k chosen from the exponents.
inline QuadratureResult direct_integrate(const NCPolynomials& nc, const Rational& D,
                                         const std::vector<std::array<Rational, 4>>& externals,
                                         const QuadratureConfig& q = {}) {
  const auto hu = detail::flatten(nc.HU);
  const auto hv = detail::flatten(nc.contract(externals));
  const double half_D = D.get_d() / 2;
  if (nc.HU.nvars() == 0) {
    std::complex<double> u = detail::eval(hu, {}), v = detail::eval(hv, {});
    return {std::pow(u, -half_D) * std::exp(-v / u), 0, 1};
  }
  return detail::tensor_integrate(nc.HU, D, q, [&](std::span<const double> t) {
    std::complex<double> u = detail::eval(hu, t);
    std::complex<double> v = hv.empty() ? 0.0 : detail::eval(hv, t);
    return std::pow(u.real(), -half_D) * std::exp(-v / u.real());
  });
}

/// Amplitude smeared against the normalised Gaussian pi^{-2m} exp(-|X|^2) in
/// all m external 4-vectors. The Gaussian integral is done in closed form:
/// each of the two symplectic planes contributes det(I + H/HU)^{-1/2}, with
/// H the 2m x 2m plane matrix (dot * I + wedge * J blocks).
inline QuadratureResult smeared_integrate(const NCPolynomials& nc, const Rational& D, const QuadratureConfig& q = {}) {
  const std::size_t m = nc.num_external();
  std::vector<std::vector<detail::DoubleTerm>> dots(m * m), wedges(m * m);
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) {
      dots[e * m + f] = detail::flatten(nc.dot(e, f));
      wedges[e * m + f] = detail::flatten(nc.wedge(e, f));
    }
  const auto hu = detail::flatten(nc.HU);
  const double half_D = D.get_d() / 2;
  auto integrand = [&](std::span<const double> t) {
    const double u = detail::eval(hu, t).real();
    Matrix<std::complex<double>> A(2 * m, 2 * m);
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = 0; f < m; ++f) {
        std::complex<double> a = detail::eval(dots[e * m + f], t) / u;
        std::complex<double> b = detail::eval(wedges[e * m + f], t) / u;
        A(2 * e, 2 * f) = a + (e == f ? 1.0 : 0.0);
        A(2 * e + 1, 2 * f + 1) = a + (e == f ? 1.0 : 0.0);
        A(2 * e, 2 * f + 1) = b;
        A(2 * e + 1, 2 * f) = -b;
      }
    return std::pow(u, -half_D) / det_numeric(std::move(A));
  };
  if (nc.HU.nvars() == 0) {
    std::array<double, 0> none{};
    return {integrand(std::span<const double>(none)), 0, 1};
  }
  return detail::tensor_integrate(nc.HU, D, q, integrand);
}

/// Max over the points of the relative residuals |HU - pref det+| / |HU| and
/// |HU^2 - pref^2 det+ det-| / |HU^2|, all in floating point.
inline double numeric_det_check(const GaussianModel& gm, const RealPoly& hu, const std::vector<std::vector<Rational>>& points) {
  double worst = 0;
  for (const auto& p : points) {
    std::vector<double> t;
    for (const auto& r : p) t.push_back(r.get_d());
    const std::complex<double> value = hu.evaluate_double(t);
    const double pref = gm.prefactor.evaluate_double(t).real();
    auto [dp, dm] = sheet_determinants(gm, t);
    const double scale = std::max(std::abs(value), 1e-300);
    worst = std::max(worst, std::abs(std::abs(value) - std::abs(pref * dp)) / scale);
    worst = std::max(worst, std::abs(value * value - pref * pref * dp * dm) / (scale * scale));
  }
  return worst;
}

/// Hyper-trees by filtering all 2^L subsets with the two spanning conditions.
inline std::vector<HyperTree> hypertrees_exhaustive(const RibbonGraph& g) {
  const FaceData fd = trace_faces(g);
  const Multigraph dual = dual_graph(g, fd);
  const Multigraph direct = g.direct_graph();
  const int L = g.num_lines();
  std::vector<HyperTree> out;
  for (unsigned long S = 0; S < (1UL << L); ++S) {
    auto in = [&](std::size_t e) { return ((S >> e) & 1UL) != 0; };
    if (!dual.spans(in) || !direct.spans([&](std::size_t e) { return !in(e); })) continue;
    HyperTree ht;
    for (int l = 0; l < L; ++l)
      if (in(static_cast<std::size_t>(l))) ht.lines.push_back(l);
    ht.k = static_cast<int>(ht.lines.size()) - fd.F + 1;
    out.push_back(std::move(ht));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ncfeyn::oracle
