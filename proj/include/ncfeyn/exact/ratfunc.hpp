#pragma once

#include <string>
#include <utility>

#include "ncfeyn/exact/multipoly.hpp"

namespace ncfeyn {

/// Quotient of two polynomials over Q(i).
///
/// Reduction is partial: common monomial factors are cancelled, an exactly
/// dividing denominator is absorbed, and the denominator's leading
/// coefficient is normalised to 1. No multivariate gcd is attempted.
class RatFunc {
 public:
  explicit RatFunc(int nvars = 0) : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.nvars(), 1)) {  // NOLINT
    normalize();
  }
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
  }

  static RatFunc constant(int nvars, const GaussianRational& c) { return RatFunc(Poly::constant(nvars, c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// The numerator when the denominator is 1; throws otherwise.
  const Poly& as_polynomial() const {
    if (!is_polynomial()) throw NonPolynomialResult("rational function has a non-trivial denominator");
    return num_;
  }

  RatFunc& operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ = den_ * o.den_;
    }
    normalize();
    return *this;
  }
  RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
  RatFunc& operator*=(const RatFunc& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  RatFunc& operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
  }
  RatFunc& operator*=(const GaussianRational& c) {
    num_ *= c;
    return *this;
  }

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator*(RatFunc a, const GaussianRational& c) { return a *= c; }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  template <class Point>
  GaussianRational evaluate(std::span<const Point> t) const {
    GaussianRational d = den_.evaluate(t);
    if (d.is_zero()) throw std::domain_error("rational function evaluated on its pole");
    return num_.evaluate(t) / d;
  }

  std::complex<double> evaluate_double(std::span<const double> t) const {
    return num_.evaluate_double(t) / den_.evaluate_double(t);
  }

  std::string str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.nvars(), 1);
      return;
    }
    // Lift negative exponents and cancel the common monomial factor.
    Exponent cn = monomial_content(num_), cd = monomial_content(den_);
    Exponent shift_n(cn.size()), shift_d(cn.size());
    for (std::size_t k = 0; k < cn.size(); ++k) {
      int common = std::min(cn[k], cd[k]);
      shift_n[k] = -common;
      shift_d[k] = -common;
    }
    num_ = num_.shifted(shift_n);
    den_ = den_.shifted(shift_d);
    if (!den_.is_constant()) {
      if (auto q = exact_quotient(num_, den_)) {
        num_ = *std::move(q);
        den_ = Poly::constant(num_.nvars(), 1);
      }
    }
    GaussianRational lc = den_.leading_term().second;
    if (!lc.is_one()) {
      GaussianRational inv = GaussianRational(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

}  // namespace ncfeyn
