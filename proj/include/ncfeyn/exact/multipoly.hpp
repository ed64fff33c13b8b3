#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncfeyn/errors.hpp"
#include "ncfeyn/exact/gaussian_rational.hpp"

namespace ncfeyn {

/// Exponent vector. Negative entries are allowed so that Laurent
/// intermediates (1/t) can be represented; `is_polynomial()` tells them apart.
using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order, largest first: higher total degree wins,
/// ties broken by the first differing exponent (t1 > t2 > ...).
struct GradedLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  if constexpr (std::is_same_v<C, GaussianRational>) {
    return c.is_zero();
  } else {
    return sgn(c) == 0;
  }
}
template <class C>
std::complex<double> coeff_to_complex(const C& c) {
  if constexpr (std::is_same_v<C, GaussianRational>) {
    return c.to_complex();
  } else {
    return {c.get_d(), 0.0};
  }
}
template <class C>
std::string coeff_str(const C& c) {
  if constexpr (std::is_same_v<C, GaussianRational>) {
    return c.str();
  } else {
    return c.get_str();
  }
}
}  // namespace detail

/// Sparse multivariate polynomial in t_1..t_n with exact coefficients.
/// Zero coefficients are never stored; terms iterate in graded-lex order,
/// leading term first.
template <class Coeff>
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Coeff, GradedLexGreater>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Coeff& c) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(int nvars, int index, int power = 1) {
    Exponent e(nvars, 0);
    e.at(index) = power;
    return monomial(std::move(e), Coeff(1));
  }
  static MultiPoly monomial(Exponent e, const Coeff& c) {
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(std::move(e), c);
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
                              std::all_of(terms_.begin()->first.begin(),
                                          terms_.begin()->first.end(), [](int v) { return v == 0; }));
  }

  bool is_monomial() const { return terms_.size() == 1; }

  bool is_polynomial() const {
    for (const auto& [e, c] : terms_)
      for (int v : e)
        if (v < 0) return false;
    return true;
  }

  Coeff coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff constant_term() const { return coeff(Exponent(nvars_, 0)); }

  void add_term(const Exponent& e, const Coeff& c) {
    if (static_cast<int>(e.size()) != nvars_) throw VariableMismatch("exponent length mismatch");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  const std::pair<const Exponent, Coeff>& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.begin();
  }

  int degree() const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      d = first ? total_degree(e) : std::max(d, total_degree(e));
      first = false;
    }
    return d;
  }

  int min_total_degree() const {
    if (terms_.empty()) throw std::domain_error("min degree of zero polynomial");
    int d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
    return d;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  int min_degree_in(int var) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      d = first ? e[var] : std::min(d, e[var]);
      first = false;
    }
    return d;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Coeff& s) {
    if (detail::coeff_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const Coeff& s) { return a *= s; }
  friend MultiPoly operator*(const Coeff& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// this -= c * t^e * b, in place.
  void sub_scaled(const Exponent& e, const Coeff& c, const MultiPoly& b) {
    Exponent s(nvars_);
    for (const auto& [eb, cb] : b.terms_) {
      for (int k = 0; k < nvars_; ++k) s[k] = e[k] + eb[k];
      add_term(s, -(c * cb));
    }
  }

  /// Multiplies by t^e (e may be negative).
  MultiPoly shifted(const Exponent& e) const {
    MultiPoly r(nvars_);
    for (const auto& [ex, c] : terms_) {
      Exponent s = ex;
      for (int k = 0; k < nvars_; ++k) s[k] += e[k];
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  template <class Point>
  Coeff evaluate(std::span<const Point> t) const {
    if (static_cast<int>(t.size()) != nvars_) throw VariableMismatch("evaluation point has wrong dimension");
    Coeff sum(0);
    for (const auto& [e, c] : terms_) {
      Coeff m = c;
      for (int k = 0; k < nvars_; ++k)
        if (e[k] != 0) m *= Coeff(pow(Coeff(t[k]), e[k]));
      sum += m;
    }
    return sum;
  }

  std::complex<double> evaluate_double(std::span<const double> t) const {
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double m = 1.0;
      for (int k = 0; k < nvars_; ++k)
        for (int p = 0; p < std::abs(e[k]); ++p) m = e[k] > 0 ? m * t[k] : m / t[k];
      sum += detail::coeff_to_complex(c) * m;
    }
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string cs = detail::coeff_str(c);
      bool unit = total_degree(e) != 0 || std::any_of(e.begin(), e.end(), [](int v) { return v != 0; });
      bool neg = !cs.empty() && cs[0] == '-';
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      std::string mag = neg ? cs.substr(1) : cs;
      bool is_one = mag == "1";
      if (!unit || !is_one) os << mag;
      bool need_star = unit && !is_one;
      for (int k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        if (need_star) os << "*";
        os << "t" << (k + 1);
        if (e[k] != 1) os << "^" << e[k];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw VariableMismatch("polynomials live in different variable lists");
  }

  int nvars_;
  Terms terms_;
};

using Poly = MultiPoly<GaussianRational>;
using RealPoly = MultiPoly<Rational>;

/// Exact quotient a / b in the polynomial ring, or nullopt when b does not
/// divide a.
template <class C>
std::optional<MultiPoly<C>> exact_quotient(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.nvars() != b.nvars()) throw VariableMismatch("polynomials live in different variable lists");
  MultiPoly<C> q(a.nvars()), r = a;
  const auto& [lb_e, lb_c] = b.leading_term();
  Exponent m(a.nvars());
  while (!r.is_zero()) {
    const auto& [lr_e, lr_c] = r.leading_term();
    for (int k = 0; k < a.nvars(); ++k) {
      m[k] = lr_e[k] - lb_e[k];
      if (m[k] < 0) return std::nullopt;
    }
    C c = lr_c / lb_c;
    q.add_term(m, c);
    r.sub_scaled(m, c, b);
  }
  return q;
}

/// Same as exact_quotient but throws when the division is not exact.
template <class C>
MultiPoly<C> exact_div(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  auto q = exact_quotient(a, b);
  if (!q) throw std::domain_error("inexact polynomial division");
  return *std::move(q);
}

inline RealPoly real_part(const Poly& p) {
  RealPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.re);
  return r;
}

inline RealPoly imag_part(const Poly& p) {
  RealPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.im);
  return r;
}

inline Poly to_complex_poly(const RealPoly& p) {
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, GaussianRational(c));
  return r;
}

inline Poly conj(const Poly& p) {
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.conj());
  return r;
}

inline bool has_real_coefficients(const Poly& p) {
  for (const auto& [e, c] : p.terms())
    if (!c.is_real()) return false;
  return true;
}

/// Largest monomial dividing every term (componentwise minimum exponent).
template <class C>
Exponent monomial_content(const MultiPoly<C>& p) {
  Exponent e(p.nvars(), 0);
  bool first = true;
  for (const auto& [ex, c] : p.terms()) {
    for (int k = 0; k < p.nvars(); ++k) e[k] = first ? ex[k] : std::min(e[k], ex[k]);
    first = false;
  }
  return e;
}

}  // namespace ncfeyn
