#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncfeyn/amplitude.hpp"
#include "ncfeyn/exact/lp.hpp"
#include "ncfeyn/numeric/special.hpp"

namespace ncfeyn {

struct MellinMonomial {
  Rational coeff;  ///< a_K for HU, s_K^R or s_K^I for HV
  Exponent exps;
};

/// Monomial tables of HU and of HV at a fixed external configuration.
///
/// Mellin variables are ordered x_K (one per HU monomial), then y^R_K, then
/// y^I_K. On the hyperplane sum x + sum y = -D/2 the line forms are
/// phi_l = 1 + sum_K u_{lK} x_K + sum_K v_{lK} y_K.
struct MellinRepresentation {
  int L = 0;
  std::vector<MellinMonomial> hu;
  std::vector<MellinMonomial> hvr;
  std::vector<MellinMonomial> hvi;
  std::vector<std::string> notices;

  enum class Kind { X, YR, YI };

  std::size_t num_vars() const { return hu.size() + hvr.size() + hvi.size(); }

  Kind kind(std::size_t j) const {
    if (j < hu.size()) return Kind::X;
    return j < hu.size() + hvr.size() ? Kind::YR : Kind::YI;
  }

  const MellinMonomial& monomial(std::size_t j) const {
    if (j < hu.size()) return hu[j];
    j -= hu.size();
    if (j < hvr.size()) return hvr[j];
    return hvi[j - hvr.size()];
  }

  /// Coefficient of variable j in phi_l.
  int phi_coeff(int l, std::size_t j) const { return monomial(j).exps.at(l); }
};

struct DecomposeOptions {
  /// Reject negative s^R (the function-valued evaluation needs s^R > 0).
  bool require_function = true;
};

inline MellinRepresentation decompose(const RealPoly& hu, const Poly& hv, const DecomposeOptions& opt = {}) {
  MellinRepresentation m;
  m.L = hu.nvars();
  if (hu.is_zero()) throw ModelViolation("HU vanishes identically");
  for (const auto& [e, c] : hu.terms()) {
    if (sgn(c) <= 0) throw ModelViolation("HU has a non-positive coefficient " + c.get_str());
    for (int v : e)
      if (v < 0 || v > 2) throw ModelViolation("HU exponent outside {0,1,2}");
    m.hu.push_back({c, e});
  }
  for (const auto& [e, c] : hv.terms()) {
    if (sgn(c.re) < 0) {
      if (opt.require_function)
        throw NotEvaluableAsFunction("HV^R has a negative monomial coefficient at these externals");
      m.notices.push_back("negative HV^R coefficient kept (feasibility only)");
    }
    if (sgn(c.re) != 0) m.hvr.push_back({c.re, e});
    if (sgn(c.im) != 0) m.hvi.push_back({c.im, e});
  }
  if (hv.is_zero()) m.notices.push_back("HV vanishes at these externals");
  return m;
}

inline MellinRepresentation decompose(const NCPolynomials& nc, const std::vector<std::array<Rational, 4>>& externals,
                                      const DecomposeOptions& opt = {}) {
  return decompose(nc.HU, nc.contract(externals), opt);
}

// ---------------------------------------------------------------------------
// Feasibility of the domain Delta.

struct DeltaWitness {
  std::vector<Rational> point;
  Rational slack;
};

/// Non-negative weights on the strict inequalities and a multiplier of the
/// hyperplane proving that no point satisfies them all.
struct FarkasCertificate {
  std::vector<Rational> weights;
  Rational hyperplane;
};

struct FeasibilityResult {
  bool feasible = false;
  Rational max_slack;  ///< optimum of the max-slack LP (capped at 1)
  std::optional<DeltaWitness> witness;
  std::optional<FarkasCertificate> certificate;
};

namespace detail {

// The strict inequalities a.z < b defining Delta, in a fixed order.
inline std::vector<LinearRow> delta_rows(const MellinRepresentation& m) {
  const std::size_t n = m.num_vars();
  std::vector<LinearRow> rows;
  auto unit = [&](std::size_t j, long sign) {
    LinearRow r{std::vector<Rational>(n, Rational(0)), Rational(0)};
    r.a[j] = sign;
    return r;
  };
  for (std::size_t j = 0; j < n; ++j) {
    rows.push_back(unit(j, 1));  // sigma, tau < 0
    if (m.kind(j) == MellinRepresentation::Kind::YI) {
      LinearRow r = unit(j, -1);  // tau^I > -1
      r.b = 1;
      rows.push_back(r);
    }
  }
  for (int l = 0; l < m.L; ++l) {  // phi_l > 0
    LinearRow r{std::vector<Rational>(n, Rational(0)), Rational(1)};
    for (std::size_t j = 0; j < n; ++j) r.a[j] = -m.phi_coeff(l, j);
    rows.push_back(r);
  }
  return rows;
}

inline LinearRow hyperplane(const MellinRepresentation& m, const Rational& D) {
  return {std::vector<Rational>(m.num_vars(), Rational(1)), -D / 2};
}

inline LPResult max_slack_lp(const MellinRepresentation& m, const Rational& D) {
  const std::size_t n = m.num_vars();
  LinearProgram lp;
  lp.nvars = static_cast<int>(n) + 1;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  for (auto r : delta_rows(m)) {
    r.a.push_back(Rational(1));
    lp.le.push_back(std::move(r));
  }
  LinearRow cap{std::vector<Rational>(n + 1, Rational(0)), Rational(1)};
  cap.a[n] = 1;
  lp.le.push_back(cap);
  LinearRow h = hyperplane(m, D);
  h.a.push_back(Rational(0));
  lp.eq.push_back(h);
  return solve_lp(lp);
}

}  // namespace detail

/// True iff w lies on the hyperplane and satisfies every strict inequality
/// of Delta with margin at least w.slack > 0 (exact arithmetic).
inline bool verify_witness(const MellinRepresentation& m, const Rational& D, const DeltaWitness& w) {
  if (w.point.size() != m.num_vars() || sgn(w.slack) <= 0) return false;
  Rational sum(0);
  for (const auto& v : w.point) sum += v;
  if (sum != -D / 2) return false;
  for (const auto& r : detail::delta_rows(m)) {
    Rational lhs(0);
    for (std::size_t j = 0; j < r.a.size(); ++j) lhs += r.a[j] * w.point[j];
    if (r.b - lhs < w.slack) return false;
  }
  return true;
}

inline bool verify_certificate(const MellinRepresentation& m, const Rational& D, const FarkasCertificate& c) {
  const auto rows = detail::delta_rows(m);
  if (c.weights.size() != rows.size()) return false;
  Rational total(0), rhs = c.hyperplane * (-D / 2);
  std::vector<Rational> combo(m.num_vars(), c.hyperplane);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(c.weights[i]) < 0) return false;
    total += c.weights[i];
    rhs += c.weights[i] * rows[i].b;
    for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += c.weights[i] * rows[i].a[j];
  }
  if (sgn(total) <= 0) return false;
  for (const auto& v : combo)
    if (sgn(v) != 0) return false;
  return sgn(rhs) <= 0;
}

/// Solves the max-slack LP exactly; returns an interior witness or a
/// certificate of infeasibility.
inline FeasibilityResult delta_feasible(const MellinRepresentation& m, const Rational& D) {
  FeasibilityResult res;
  LPResult lp = detail::max_slack_lp(m, D);
  if (lp.status != LPResult::Status::Optimal) throw std::logic_error("max-slack LP must have an optimum");
  const std::size_t n = m.num_vars();
  res.max_slack = lp.value;
  if (sgn(lp.value) > 0) {
    DeltaWitness w{std::vector<Rational>(lp.z.begin(), lp.z.begin() + static_cast<long>(n)), lp.value};
    if (!verify_witness(m, D, w)) throw std::logic_error("LP witness failed exact verification");
    res.feasible = true;
    res.witness = std::move(w);
  } else {
    FarkasCertificate c{std::vector<Rational>(lp.dual_le.begin(), lp.dual_le.end() - 1), lp.dual_eq.at(0)};
    if (!verify_certificate(m, D, c)) throw std::logic_error("LP dual failed to certify infeasibility");
    res.certificate = std::move(c);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Contour evaluation.

struct ContourConfig {
  double tolerance = 1e-7;   ///< target for both discretisation and truncation error
  double step = 0;           ///< 0: derived from the witness and the tolerance
  double half_width = 0;     ///< 0: derived from the tolerance
  int max_dimension = 3;
  std::size_t max_points = 200'000'000;
  double max_tail = 1e-6;    ///< relative tail bound above which evaluation fails
};

struct EvaluationReport {
  std::complex<double> value;
  double error = 0;  ///< discretisation + tail estimate
  double tail = 0;
  int dimension = 0;
  std::size_t points = 0;
  double step = 0;
  double half_width = 0;
};

namespace detail {

// One Gamma-type factor of the integrand, tabulated along the lattice of
// imaginary parts it can take.
struct ContourFactor {
  std::vector<int> coeff;  ///< integer coefficients over the free grid indices
  int range = 0;           ///< table covers m in [-range, range]
  std::vector<std::complex<double>> table;

  std::complex<double> at(int m) const { return table[static_cast<std::size_t>(m + range)]; }
};

template <class F>
ContourFactor make_factor(std::vector<int> coeff, int N, F&& value_at_m) {
  ContourFactor f;
  f.coeff = std::move(coeff);
  for (int c : f.coeff) f.range += std::abs(c) * N;
  f.table.resize(static_cast<std::size_t>(2 * f.range + 1));
  for (int m = -f.range; m <= f.range; ++m) f.table[static_cast<std::size_t>(m + f.range)] = value_at_m(m);
  return f;
}

}  // namespace detail

/// Trapezoidal quadrature over vertical contours through the witness.
///
/// The last HU variable is eliminated with the hyperplane; the others run
/// over Re = witness, Im in h * [-N, N]. Every Gamma argument is then an
/// integer combination of the grid indices, so each factor is tabulated once.
inline EvaluationReport evaluate_mellin(const MellinRepresentation& m, const Rational& D_exact, const DeltaWitness& w,
                                        const ContourConfig& cfg = {}) {
  using cd = std::complex<double>;
  using numeric::log_gamma;
  if (!verify_witness(m, D_exact, w)) throw ConfigurationError("witness does not lie in Delta");
  const std::size_t nv = m.num_vars();
  const int dim = static_cast<int>(nv) - 1;
  if (dim > cfg.max_dimension)
    throw ContourDimensionExceeded("contour dimension " + std::to_string(dim) + " exceeds the cap " +
                                   std::to_string(cfg.max_dimension));
  const double D = D_exact.get_d();
  const std::size_t elim = m.hu.size() - 1;
  auto free_index = [&](std::size_t j) { return static_cast<int>(j < elim ? j : j - 1); };

  std::vector<double> re(nv);
  for (std::size_t j = 0; j < nv; ++j) re[j] = w.point[j].get_d();

  // Coefficients over the free indices of Im(variable j), in units of h.
  auto var_coeff = [&](std::size_t j) {
    std::vector<int> c(static_cast<std::size_t>(dim), 0);
    if (j == elim)
      std::fill(c.begin(), c.end(), -1);
    else
      c[static_cast<std::size_t>(free_index(j))] = 1;
    return c;
  };

  // Width of the pole-free strip around the contour in every free direction.
  double strip = w.slack.get_d();
  for (int l = 0; l < m.L; ++l) {
    Rational phi(1);
    int worst = 0;
    for (std::size_t j = 0; j < nv; ++j) phi += m.phi_coeff(l, j) * w.point[j];
    for (std::size_t j = 0; j < nv; ++j)
      if (j != elim) worst = std::max(worst, std::abs(m.phi_coeff(l, j) - m.phi_coeff(l, elim)));
    if (worst > 0) strip = std::min(strip, phi.get_d() / worst);
  }

  const double log_tol = std::log(1.0 / cfg.tolerance);
  const double h = cfg.step > 0 ? cfg.step : std::min(0.25, 2 * M_PI * strip / log_tol);
  const double T = cfg.half_width > 0 ? cfg.half_width : (log_tol + 5.0) / M_PI;
  const cd log_gamma_half_D = log_gamma(cd(D / 2, 0));

  // One trapezoidal pass with N steps per free direction.
  auto attempt = [&](int N) {
    std::vector<detail::ContourFactor> factors;
    // Gamma(-x_K) a_K^{x_K}, Gamma(-y) s^y with the phase of i for HV^I.
    for (std::size_t j = 0; j < nv; ++j) {
      const auto& mono = m.monomial(j);
      const double s = std::abs(mono.coeff.get_d());
      const double phase = m.kind(j) == MellinRepresentation::Kind::YI ? (sgn(mono.coeff) > 0 ? M_PI / 2 : -M_PI / 2) : 0;
      const double r = re[j];
      factors.push_back(detail::make_factor(var_coeff(j), N, [&](int k) {
        cd z(r, h * k);
        return std::exp(log_gamma(-z) + z * std::log(s) + cd(0, phase) * z);
      }));
    }
    // 1 / Gamma(-sum x) = 1 / Gamma(D/2 + sum y).
    {
      std::vector<int> c(static_cast<std::size_t>(dim), 0);
      double base = D / 2;
      for (std::size_t j = m.hu.size(); j < nv; ++j) {
        base += re[j];
        auto cj = var_coeff(j);
        for (int k = 0; k < dim; ++k) c[k] += cj[k];
      }
      factors.push_back(detail::make_factor(c, N, [&](int k) { return std::exp(-log_gamma(cd(base, h * k))); }));
    }
    // Gamma(phi/2) Gamma(D/2) / (2 Gamma((phi + D)/2)) per line.
    for (int l = 0; l < m.L; ++l) {
      std::vector<int> c(static_cast<std::size_t>(dim), 0);
      double base = 1;
      for (std::size_t j = 0; j < nv; ++j) {
        const int u = m.phi_coeff(l, j);
        base += u * re[j];
        auto cj = var_coeff(j);
        for (int k = 0; k < dim; ++k) c[k] += u * cj[k];
      }
      factors.push_back(detail::make_factor(c, N, [&](int k) {
        cd phi(base, h * k);
        return 0.5 * std::exp(log_gamma(phi / 2.0) + log_gamma_half_D - log_gamma((phi + D) / 2.0));
      }));
    }

    EvaluationReport rep;
    rep.dimension = dim;
    rep.step = h;
    rep.half_width = h * N;
    if (dim == 0) {
      cd v = 1;
      for (const auto& f : factors) v *= f.at(0);
      rep.value = v;
      rep.points = 1;
      rep.error = 4 * std::numeric_limits<double>::epsilon() * std::abs(v) * static_cast<double>(factors.size());
      return rep;
    }

    // Odometer over [-N, N]^dim; accumulate the full sum, the even sublattice
    // (step 2h) and the outer shell (tail estimate).
    std::vector<int> n(static_cast<std::size_t>(dim), -N);
    cd full = 0, even = 0;
    double shell = 0;
    std::size_t count = 0;
    for (;;) {
      cd v = 1;
      for (const auto& f : factors) {
        int mm = 0;
        for (int k = 0; k < dim; ++k) mm += f.coeff[k] * n[k];
        v *= f.at(mm);
      }
      full += v;
      bool is_even = true, on_shell = false;
      for (int k = 0; k < dim; ++k) {
        is_even = is_even && (n[k] % 2 == 0);
        on_shell = on_shell || std::abs(n[k]) == N;
      }
      if (is_even) even += v;
      if (on_shell) shell += std::abs(v);
      ++count;
      int k = dim - 1;
      while (k >= 0 && n[k] == N) n[k--] = -N;
      if (k < 0) break;
      ++n[k];
    }
    const double measure = std::pow(h / (2 * M_PI), dim);
    const cd fine = full * measure;
    const cd coarse = even * measure * std::pow(2.0, dim);
    const double diff = std::abs(fine - coarse);
    const double scale = std::max(std::abs(fine), 1e-300);
    // Trapezoid errors decay like exp(-c/h): halving h squares the relative error.
    const double disc = diff > 1e-2 * scale ? diff : diff * diff / scale;
    const double tail = shell * measure / (M_PI * h);
    rep.value = fine;
    rep.tail = tail;
    rep.error = disc + tail + 1e-14 * scale;
    rep.points = count;
    return rep;
  };

  // Widen the contour while the tail dominates, unless the width was fixed.
  for (double width = T;; width *= 1.5) {
    const int N = dim == 0 ? 0 : static_cast<int>(std::ceil(width / h));
    const double total_points = std::pow(2.0 * N + 1, dim);
    if (total_points > static_cast<double>(cfg.max_points))
      throw ContourDimensionExceeded("contour grid would need " + std::to_string(total_points) + " points");
    EvaluationReport rep = attempt(N);
    const double scale = std::max(std::abs(rep.value), 1e-300);
    if (rep.tail <= cfg.max_tail * scale) return rep;
    if (cfg.half_width > 0 || width > 8 * T)
      throw TailEstimateTooLarge("contour tail estimate " + std::to_string(rep.tail) + " is too large");
  }
}

// ---------------------------------------------------------------------------
// Pole candidates in D.

struct PoleCandidate {
  Rational lo;
  Rational hi;  ///< equal to lo when the candidate is exact
  std::set<std::string> tags;

  bool exact() const { return lo == hi; }
};

namespace detail {

inline Rational simplest_between(Rational lo, Rational hi) {
  // Stern-Brocot descent for the rational of least denominator in [lo, hi].
  if (lo > hi) std::swap(lo, hi);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational frac_lo = lo - Rational(fl), frac_hi = hi - Rational(fl);
  // 1/x lies in [1/frac_hi, 1/frac_lo].
  Rational inner = simplest_between(1 / frac_hi, 1 / frac_lo);
  Rational r = Rational(fl) + 1 / inner;
  r.canonicalize();
  return r;
}

// Numerator Gamma arguments as affine forms: (coefficients over z, coefficient of D, constant).
struct AffineArgument {
  std::vector<Rational> z;
  Rational d;
  Rational c;
};

inline std::vector<AffineArgument> gamma_arguments(const MellinRepresentation& m) {
  const std::size_t n = m.num_vars();
  std::vector<AffineArgument> out;
  for (std::size_t j = 0; j < n; ++j) {
    AffineArgument a{std::vector<Rational>(n, Rational(0)), Rational(0), Rational(0)};
    a.z[j] = -1;
    out.push_back(a);
  }
  for (int l = 0; l < m.L; ++l) {
    AffineArgument a{std::vector<Rational>(n, Rational(0)), Rational(0), Rational(1, 2)};
    for (std::size_t j = 0; j < n; ++j) a.z[j] = frac(m.phi_coeff(l, j), 2);
    out.push_back(a);
  }
  out.push_back({std::vector<Rational>(n, Rational(0)), Rational(1, 2), Rational(0)});
  return out;
}

// min and max of a.z over the closure of Delta at D, or nullopt if empty.
inline std::optional<std::pair<Rational, Rational>> range_on_closure(const MellinRepresentation& m, const Rational& D,
                                                                     const std::vector<Rational>& a) {
  LinearProgram lp;
  lp.nvars = static_cast<int>(m.num_vars());
  lp.le = delta_rows(m);
  lp.eq.push_back(hyperplane(m, D));
  lp.objective = a;
  LPResult hi = solve_lp(lp);
  if (hi.status == LPResult::Status::Infeasible) return std::nullopt;
  for (auto& v : lp.objective) v = -v;
  LPResult lo = solve_lp(lp);
  if (hi.status != LPResult::Status::Optimal || lo.status != LPResult::Status::Optimal)
    return std::pair<Rational, Rational>{Rational(-1), Rational(1)};  // unbounded: not constant
  return std::pair<Rational, Rational>{-lo.value, hi.value};
}

}  // namespace detail

inline Rational max_slack(const MellinRepresentation& m, const Rational& D) { return detail::max_slack_lp(m, D).value; }

/// Candidate singular points of the amplitude in D within the open range
/// (D_lo, D_hi): zero crossings of the max-slack value eps*(D), and points
/// where a numerator Gamma argument is pinned to a non-positive integer on
/// the whole closure of Delta.
inline std::vector<PoleCandidate> pole_scan(const MellinRepresentation& m, const Rational& D_lo, const Rational& D_hi,
                                            const Rational& resolution) {
  if (sgn(resolution) <= 0 || D_hi <= D_lo) throw ConfigurationError("bad pole-scan range or resolution");
  std::vector<Rational> grid;
  for (Rational D = D_lo; D <= D_hi; D += resolution) grid.push_back(D);
  if (grid.back() != D_hi) grid.push_back(D_hi);

  std::vector<PoleCandidate> found;
  auto add = [&](Rational lo, Rational hi, const std::string& tag) {
    if (lo <= D_lo || hi >= D_hi) return;
    found.push_back({std::move(lo), std::move(hi), {tag}});
  };

  // Feasibility boundary.
  std::vector<Rational> eps;
  for (const auto& D : grid) eps.push_back(max_slack(m, D));
  const Rational width_stop(1, 1L << 16);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    bool a = sgn(eps[i]) > 0, b = sgn(eps[i + 1]) > 0;
    if (a == b) continue;
    Rational lo = grid[i], hi = grid[i + 1];
    while (hi - lo > width_stop) {
      Rational mid = (lo + hi) / 2;
      if ((sgn(max_slack(m, mid)) > 0) == a) lo = mid;
      else hi = mid;
    }
    Rational q = detail::simplest_between(lo, hi);
    if (sgn(max_slack(m, q)) == 0) add(q, q, "feasibility-boundary");
    else add(lo, hi, "feasibility-boundary");
  }

  // Gamma lattice: fit the pinned value affinely between grid points where it
  // is constant, then confirm every predicted point exactly.
  // Where eps* > 0 the closure is full-dimensional in the hyperplane, so only
  // multiples of sum(z) = -D/2 are pinned and no LP is needed.
  for (const auto& arg : detail::gamma_arguments(m)) {
    std::optional<Rational> multiple;
    if (!arg.z.empty() && std::all_of(arg.z.begin(), arg.z.end(), [&](const Rational& v) { return v == arg.z[0]; }))
      multiple = arg.z[0];
    std::vector<std::pair<Rational, Rational>> pinned;  // (D, value)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Rational& D = grid[i];
      if (sgn(eps[i]) > 0) {
        if (multiple) pinned.emplace_back(D, *multiple * (-D / 2) + arg.d * D + arg.c);
        else if (arg.z.empty() || std::all_of(arg.z.begin(), arg.z.end(), [](const Rational& v) { return sgn(v) == 0; }))
          pinned.emplace_back(D, arg.d * D + arg.c);
        continue;
      }
      if (sgn(eps[i]) < 0) continue;
      auto r = detail::range_on_closure(m, D, arg.z);
      if (r && r->first == r->second) pinned.emplace_back(D, r->first + arg.d * D + arg.c);
    }
    std::set<Rational> trial;
    for (std::size_t i = 0; i + 1 < pinned.size(); ++i) {
      const auto& [D1, g1] = pinned[i];
      const auto& [D2, g2] = pinned[i + 1];
      Rational slope = (g2 - g1) / (D2 - D1);
      if (sgn(slope) == 0) {
        if (sgn(g1) <= 0 && g1.get_den() == 1) trial.insert(D1);
        continue;
      }
      // g(D) = g1 + slope (D - D1) = -k for k = 0, 1, ...
      for (long k = 0; k < 64; ++k) {
        Rational D = D1 + (Rational(-k) - g1) / slope;
        if (D > D_lo && D < D_hi) trial.insert(D);
      }
    }
    for (const auto& [D, g] : pinned)
      if (sgn(g) <= 0 && g.get_den() == 1) trial.insert(D);
    for (const auto& D : trial) {
      auto r = detail::range_on_closure(m, D, arg.z);
      if (!r || r->first != r->second) continue;
      Rational g = r->first + arg.d * D + arg.c;
      if (sgn(g) <= 0 && g.get_den() == 1) add(D, D, "gamma-lattice");
    }
  }

  // Merge exact duplicates and sort.
  std::map<std::pair<Rational, Rational>, std::set<std::string>> merged;
  for (auto& c : found) merged[{c.lo, c.hi}].insert(c.tags.begin(), c.tags.end());
  std::vector<PoleCandidate> out;
  for (auto& [k, tags] : merged) out.push_back({k.first, k.second, tags});
  return out;
}

}  // namespace ncfeyn
