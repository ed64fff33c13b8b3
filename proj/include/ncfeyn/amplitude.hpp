#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncfeyn/exact/determinant.hpp"
#include "ncfeyn/exact/interpolate.hpp"
#include "ncfeyn/exact/matrix.hpp"
#include "ncfeyn/exact/ratfunc.hpp"
#include "ncfeyn/model.hpp"
#include "ncfeyn/ribbon.hpp"

namespace ncfeyn {

/// A 2x2 block a*I + b*J (J the symplectic generator) seen through the two
/// eigen-sheets of J: plus = a + i b, minus = a - i b.
struct TwoSheetElement {
  RatFunc plus;
  RatFunc minus;

  RatFunc dot_part() const { return (plus + minus) * GaussianRational(Rational(1, 2)); }
  RatFunc wedge_part() const { return (plus - minus) * GaussianRational(Rational(0), Rational(-1, 2)); }
};

struct InternalVariable {
  enum class Kind { Short, Long, Hypermomentum };
  Kind kind;
  int index;  ///< line index, or vertex index for hypermomenta
  std::string label;
};

struct ExternalVariable {
  enum class Kind { Leg, RootMomentum };
  Kind kind;
  int index;  ///< external-leg index, or the root vertex
  std::string label;
};

/// Affine relation sum_e coeff_e x_e = 0 among external positions.
struct DeltaConstraint {
  std::vector<std::pair<int, Rational>> terms;
};

struct BuildOptions {
  bool vertex_oscillations = true;  ///< false switches off the Moyal phases (diagnostics)
};

/// Exponent of the position-space integrand after the short/long change of
/// variables, written per 2D symplectic block as
///     -kappa * (X^T M X + X^T P E + E^T R E)
/// with X the internal variables (u_l, v_l per line, a hypermomentum per
/// non-root vertex) and E the external ones (leg positions, then the root
/// hypermomentum, which is kept unintegrated).
///
/// Variables are scaled so all entries are rational: legs enter as
/// sqrt(2) x_e and hypermomenta as p / (sqrt(2) kappa); `external_scale`
/// converts back to physical units.
struct GaussianModel {
  ModelParams params;
  int root = 0;
  int num_lines = 0;
  std::vector<InternalVariable> internal;
  std::vector<ExternalVariable> external;
  Matrix<TwoSheetElement> M;
  Matrix<TwoSheetElement> P;
  Matrix<TwoSheetElement> R;
  RealPoly prefactor;
  std::vector<DeltaConstraint> delta_constraints;

  std::size_t n() const { return internal.size(); }
  std::size_t m() const { return external.size(); }

  /// Factor turning the model-unit Schur complement entry (e,f) into the
  /// coefficient of the physical quadratic form.
  Rational hv_factor(std::size_t e, std::size_t f) const {
    auto scale = [&](std::size_t k) {
      return external[k].kind == ExternalVariable::Kind::Leg ? 0 : 1;
    };
    const Rational& kappa = params.kappa();
    int kinds = scale(e) + scale(f);
    if (kinds == 0) return 2 * kappa;   // sqrt2 * sqrt2 * kappa
    if (kinds == 1) return Rational(1); // sqrt2 / (sqrt2 kappa) * kappa
    return 1 / (2 * kappa);             // kappa / (2 kappa^2)
  }
};

namespace detail {

using LinearForm = std::vector<std::pair<int, Rational>>;

class QuadraticFormBuilder {
 public:
  QuadraticFormBuilder(std::size_t size, int nvars)
      : nvars_(nvars), dot_(size, size, RatFunc(nvars)), wedge_(size, size, RatFunc(nvars)) {}

  void add_dot(const LinearForm& x, const LinearForm& y, const RatFunc& c) {
    for (const auto& [j, cj] : x)
      for (const auto& [k, ck] : y) {
        RatFunc w = c * GaussianRational(cj * ck);
        if (j == k) {
          dot_(j, k) += w;
        } else {
          RatFunc half = w * GaussianRational(Rational(1, 2));
          dot_(j, k) += half;
          dot_(k, j) += half;
        }
      }
  }

  void add_wedge(const LinearForm& x, const LinearForm& y, const GaussianRational& c) {
    for (const auto& [j, cj] : x)
      for (const auto& [k, ck] : y) {
        if (j == k) continue;
        RatFunc half = RatFunc::constant(nvars_, c * GaussianRational(cj * ck / 2));
        wedge_(j, k) += half;
        wedge_(k, j) -= half;
      }
  }

  TwoSheetElement sheet(std::size_t j, std::size_t k) const {
    RatFunc ib = wedge_(j, k) * GaussianRational::i();
    return {dot_(j, k) + ib, dot_(j, k) - ib};
  }

 private:
  int nvars_;
  Matrix<RatFunc> dot_;
  Matrix<RatFunc> wedge_;
};

}  // namespace detail

/// Assembles the Gaussian integrand of a graph.
inline GaussianModel build_gaussian(const RibbonGraph& g, const ModelParams& p, BuildOptions opt = {}) {
  p.validate();
  if (!check_orientable(g)) throw OrientabilityError("graph is not orientable");
  if (!g.direct_graph().spans([](std::size_t) { return true; })) throw DisconnectedError("graph is disconnected");

  const int L = g.num_lines();
  GaussianModel gm;
  gm.params = p;
  gm.root = g.root();
  gm.num_lines = L;

  for (int l = 0; l < L; ++l) {
    gm.internal.push_back({InternalVariable::Kind::Short, l, "u_" + g.lines()[l].name});
    gm.internal.push_back({InternalVariable::Kind::Long, l, "v_" + g.lines()[l].name});
  }
  std::vector<int> hyper_index(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == g.root()) continue;
    hyper_index[v] = static_cast<int>(gm.internal.size());
    gm.internal.push_back({InternalVariable::Kind::Hypermomentum, v, "p_" + g.vertex_name(v)});
  }
  const int n = static_cast<int>(gm.internal.size());
  for (int e = 0; e < g.num_externals(); ++e)
    gm.external.push_back({ExternalVariable::Kind::Leg, e, g.externals()[e].name});
  hyper_index[g.root()] = n + g.num_externals();
  gm.external.push_back({ExternalVariable::Kind::RootMomentum, g.root(), "p_" + g.vertex_name(g.root())});
  const int size = n + static_cast<int>(gm.external.size());

  detail::QuadraticFormBuilder qf(size, L);

  // sqrt(2) * position of the field at half-edge h.
  auto slot_form = [&](int h) -> detail::LinearForm {
    int l = g.line_of(h);
    if (l < 0) return {{n + g.external_of(h), Rational(1)}};
    const auto& line = g.lines()[l];
    int x_end = RibbonGraph::is_antifield(line.a) ? line.a : line.b;
    if (h == x_end) return {{2 * l, Rational(1)}, {2 * l + 1, Rational(1)}};
    return {{2 * l, Rational(-1)}, {2 * l + 1, Rational(1)}};
  };

  for (int l = 0; l < L; ++l) {
    detail::LinearForm u{{2 * l, Rational(1)}}, v{{2 * l + 1, Rational(1)}};
    RatFunc t(Poly::variable(L, l));
    RatFunc one = RatFunc::constant(L, 1);
    if (p.model == Model::GW) {
      qf.add_dot(u, u, one / t);
      qf.add_dot(v, v, t);
    } else {
      qf.add_dot(u, u, (one + t * t) / (t * GaussianRational(2)));
      qf.add_wedge(u, v, GaussianRational(Rational(0), Rational(-2)));
    }
  }

  const GaussianRational osc(Rational(0), p.s());
  for (int vtx = 0; vtx < g.num_vertices(); ++vtx) {
    std::array<detail::LinearForm, 4> xi;
    for (int k = 0; k < 4; ++k) xi[k] = slot_form(4 * vtx + k);
    if (opt.vertex_oscillations) {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          GaussianRational c = (i + j + 1) % 2 == 0 ? osc : -osc;
          qf.add_wedge(xi[i], xi[j], c);
        }
    }
    detail::LinearForm q{{hyper_index[vtx], Rational(1)}};
    for (int k = 0; k < 4; ++k) {
      GaussianRational c(Rational(0), Rational(k % 2 == 0 ? -1 : 1));
      qf.add_dot(q, xi[k], RatFunc::constant(L, c));
    }
  }

  const std::size_t m = gm.external.size();
  gm.M = Matrix<TwoSheetElement>(n, n);
  gm.P = Matrix<TwoSheetElement>(n, m);
  gm.R = Matrix<TwoSheetElement>(m, m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) gm.M(j, k) = qf.sheet(j, k);
  for (int j = 0; j < n; ++j)
    for (std::size_t e = 0; e < m; ++e) {
      TwoSheetElement w = qf.sheet(j, n + e);
      gm.P(j, e) = {w.plus * GaussianRational(2), w.minus * GaussianRational(2)};
    }
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) gm.R(e, f) = qf.sheet(n + e, n + f);

  Exponent ones(L, 1);
  gm.prefactor = RealPoly::monomial(ones, Rational(1));

  bool root_has_line = false;
  for (int k = 0; k < 4; ++k) root_has_line = root_has_line || !g.is_external(4 * g.root() + k);
  if (!root_has_line) {
    DeltaConstraint dc;
    for (int k = 0; k < 4; ++k) dc.terms.emplace_back(g.external_of(4 * g.root() + k), Rational(k % 2 == 0 ? 1 : -1));
    gm.delta_constraints.push_back(std::move(dc));
  }
  return gm;
}

/// Plus-sheet matrix of the internal quadratic form.
inline Matrix<RatFunc> plus_sheet(const Matrix<TwoSheetElement>& m) {
  return m.map([](const TwoSheetElement& e) { return e.plus; });
}

inline Matrix<RatFunc> minus_sheet(const Matrix<TwoSheetElement>& m) {
  return m.map([](const TwoSheetElement& e) { return e.minus; });
}

/// The non-commutative polynomials of a rooted graph.
///
/// The amplitude reads  K * int prod dt (1-t^2)^{D/2-1} HU^{-D/2} exp(-HV/HU)
/// with HV = sum_{e,f} dot(e,f) x_e.x_f + wedge(e,f) x_e^x_f over the
/// external variables (legs, then the root hypermomentum).
struct NCPolynomials {
  RealPoly HU;
  Matrix<Poly> dot;    ///< symmetric
  Matrix<Poly> wedge;  ///< antisymmetric
  std::vector<std::string> labels;
  int root = 0;

  std::size_t num_external() const { return labels.size(); }

  /// HV^R (real=true) or HV^I as a symmetric matrix over the 4 Euclidean
  /// components of each external variable.
  Matrix<RealPoly> component_matrix(bool real) const {
    const std::size_t m = labels.size();
    const int L = HU.nvars();
    Matrix<RealPoly> out(4 * m, 4 * m, RealPoly(L));
    static constexpr int J[4][4] = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = 0; f < m; ++f) {
        RealPoly a = real ? real_part(dot(e, f)) : imag_part(dot(e, f));
        RealPoly b = real ? real_part(wedge(e, f)) : imag_part(wedge(e, f));
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            RealPoly v(L);
            if (mu == nu) v += a;
            if (J[mu][nu] != 0) v += b * Rational(J[mu][nu]);
            out(4 * e + mu, 4 * f + nu) = std::move(v);
          }
      }
    return out;
  }
  Matrix<RealPoly> HVR() const { return component_matrix(true); }
  Matrix<RealPoly> HVI() const { return component_matrix(false); }

  /// HV(t) at a fixed configuration of the external variables (4-vectors).
  Poly contract(const std::vector<std::array<Rational, 4>>& config) const {
    const std::size_t m = labels.size();
    if (config.size() != m) throw ConfigurationError("external configuration has the wrong number of vectors");
    Poly hv(HU.nvars());
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = 0; f < m; ++f) {
        const auto& x = config[e];
        const auto& y = config[f];
        Rational d = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
        Rational w = x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
        if (sgn(d) != 0) hv += dot(e, f) * GaussianRational(d);
        if (sgn(w) != 0) hv += wedge(e, f) * GaussianRational(w);
      }
    return hv;
  }
};

namespace detail {

inline RealPoly normalize_hu(const Poly& det_times_prefactor) {
  if (!has_real_coefficients(det_times_prefactor))
    throw NonRealResult("HU has non-real coefficients");
  RealPoly hu = real_part(det_times_prefactor);
  if (!hu.is_zero() && sgn(hu.leading_term().second) < 0) hu *= Rational(-1);
  return hu;
}

inline void check_hu_shape(const RealPoly& hu) {
  for (const auto& [e, c] : hu.terms())
    for (int v : e)
      if (v < 0 || v > 2) throw NonPolynomialResult("HU has a per-variable degree outside 0..2");
}

}  // namespace detail

/// Sign (+1/-1) that normalises prefactor * det+(M) to HU.
inline int hu_sign(const Poly& raw) {
  if (raw.is_zero()) return 1;
  return sgn(raw.leading_term().second.re) < 0 ? -1 : 1;
}

/// HU = prefactor * det+(M), normalised to a positive leading coefficient.
///
/// Both symplectic sheets give the same determinant for a block-symmetric M,
/// so the 2D block determinant is det+ * det- = (HU / prefactor)^2 and the
/// D-dimensional Gaussian contributes HU^{-D/2}.
inline RealPoly compute_HU(const GaussianModel& gm) {
  const int L = gm.num_lines;
  RatFunc det = det_fraction_free(plus_sheet(gm.M), L);
  RatFunc full = det * RatFunc(to_complex_poly(gm.prefactor));
  if (!full.is_polynomial()) throw NonPolynomialResult("prefactor * det(M) is not a polynomial");
  RealPoly hu = detail::normalize_hu(full.as_polynomial());
  detail::check_hu_shape(hu);
  return hu;
}

/// Exact value of prefactor * det+(M) at a rational point (no normalisation).
inline GaussianRational hu_raw_value(const GaussianModel& gm, std::span<const Rational> t) {
  const std::size_t n = gm.n();
  Matrix<GaussianRational> m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(j, k) = gm.M(j, k).plus.evaluate(t);
  return det_exact(std::move(m)) * GaussianRational(gm.prefactor.evaluate(t));
}

/// HU through exact point evaluations and tensor-grid interpolation.
inline RealPoly compute_HU_interpolated(const GaussianModel& gm) {
  const int L = gm.num_lines;
  Poly raw = interpolate([&](std::span<const Rational> t) { return hu_raw_value(gm, t); }, std::vector<int>(L, 2));
  RealPoly hu = detail::normalize_hu(raw);
  detail::check_hu_shape(hu);
  return hu;
}

/// HV by one Sylvester elimination of the bordered plus-sheet matrix:
/// after eliminating the internal block, the trailing entries are
/// det+(M) times the Schur complement R - P^T M^{-1} P / 4.
inline NCPolynomials compute_HV(const GaussianModel& gm, const RealPoly& hu) {
  const int L = gm.num_lines;
  const std::size_t n = gm.n(), m = gm.m();
  if (hu.is_zero()) throw ModelViolation("HU vanishes identically: the Gaussian is degenerate");

  Matrix<RatFunc> bordered(n + m, n + m, RatFunc(L));
  const GaussianRational half(Rational(1, 2));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) bordered(j, k) = gm.M(j, k).plus;
    for (std::size_t e = 0; e < m; ++e) {
      bordered(j, n + e) = gm.P(j, e).plus * half;
      // The (e, j) block of the form is the block transpose of (j, e),
      // which swaps the sheets.
      bordered(n + e, j) = gm.P(j, e).minus * half;
    }
  }
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) bordered(n + e, n + f) = gm.R(e, f).plus;

  // Clear denominators row by row.
  Matrix<Poly> cleared(n + m, n + m, Poly(L));
  Poly row_scales = Poly::constant(L, 1);
  for (std::size_t i = 0; i < n + m; ++i) {
    Exponent mono(L, 0);
    for (std::size_t j = 0; j < n + m; ++j) {
      const Poly& d = bordered(i, j).den();
      if (d.is_constant()) continue;
      if (!d.is_monomial()) throw NonPolynomialResult("unexpected non-monomial denominator in the Gaussian form");
      const auto& ex = d.leading_term().first;
      for (int k = 0; k < L; ++k) mono[k] = std::max(mono[k], ex[k]);
    }
    Poly scale = Poly::monomial(mono, GaussianRational(1));
    for (std::size_t j = 0; j < n + m; ++j)
      cleared(i, j) = bordered(i, j).num() * exact_div(scale, bordered(i, j).den());
    if (i < n) row_scales = row_scales * scale;
    else if (!scale.is_constant()) throw NonPolynomialResult("external row carries a t-dependent denominator");
  }

  auto elim = bareiss_eliminate(std::move(cleared), n);
  if (elim.singular) throw ModelViolation("internal quadratic form is singular");

  // Recover the normalisation sign of HU from the eliminated block itself.
  Poly det_cleared = n == 0 ? Poly::constant(L, 1) : elim.reduced(n - 1, n - 1);
  if (n > 0 && elim.sign < 0) det_cleared = -det_cleared;
  RatFunc raw_hu = RatFunc(det_cleared * to_complex_poly(gm.prefactor), row_scales);
  int sign = hu_sign(raw_hu.num());
  if (raw_hu != RatFunc(to_complex_poly(hu) * GaussianRational(sign)))
    throw NonPolynomialResult("bordered elimination disagrees with HU");

  Matrix<Poly> hv_plus(m, m, Poly(L));
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) {
      Poly entry = elim.reduced(n + e, n + f);
      if (elim.sign < 0) entry = -entry;
      RatFunc v(entry * to_complex_poly(gm.prefactor) * GaussianRational(sign), row_scales);
      if (!v.is_polynomial()) throw NonPolynomialResult("HV entry is not a polynomial");
      hv_plus(e, f) = v.as_polynomial();
    }

  NCPolynomials out;
  out.HU = hu;
  out.root = gm.root;
  out.dot = Matrix<Poly>(m, m, Poly(L));
  out.wedge = Matrix<Poly>(m, m, Poly(L));
  const GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
  for (std::size_t e = 0; e < m; ++e) {
    out.labels.push_back(gm.external[e].label);
    for (std::size_t f = 0; f < m; ++f) {
      GaussianRational factor(gm.hv_factor(e, f));
      out.dot(e, f) = (hv_plus(e, f) + hv_plus(f, e)) * half * factor;
      out.wedge(e, f) = (hv_plus(e, f) - hv_plus(f, e)) * minus_half_i * factor;
    }
  }
  return out;
}

/// Terms of minimal total degree, in graded-lex order.
inline std::vector<std::pair<Exponent, Rational>> leading_terms(const RealPoly& hu) {
  if (hu.is_zero()) throw std::domain_error("leading terms of the zero polynomial");
  const int d = hu.min_total_degree();
  std::vector<std::pair<Exponent, Rational>> out;
  for (const auto& [e, c] : hu.terms())
    if (total_degree(e) == d) out.emplace_back(e, c);
  return out;
}

/// Floating-point plus/minus sheet determinants of M at t.
inline std::pair<std::complex<double>, std::complex<double>> sheet_determinants(const GaussianModel& gm,
                                                                                std::span<const double> t) {
  const std::size_t n = gm.n();
  Matrix<std::complex<double>> mp(n, n), mm(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      mp(j, k) = gm.M(j, k).plus.evaluate_double(t);
      mm(j, k) = gm.M(j, k).minus.evaluate_double(t);
    }
  return {det_numeric(std::move(mp)), det_numeric(std::move(mm))};
}

}  // namespace ncfeyn
