#pragma once

#include <map>
#include <string>
#include <utility>

#include "motivic/mpoly.hpp"
#include "motivic/upoly.hpp"

namespace motivic {

/// Fraction of two MPolys.
///
/// Univariate fractions (numerator and denominator in the same single
/// variable) are always fully gcd-reduced. Multivariate fractions only get
/// monomial content and exact-quotient cancellation; `canonical()` reports
/// whether the stored form is the reduced one. In every canonical form the
/// denominator is a primitive integer polynomial with positive leading
/// coefficient.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1), canonical_(true) {}
  RatFunc(const MPoly& p) : num_(p), den_(1), canonical_(true) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : RatFunc(MPoly(c)) {}                 // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(MPoly(c)) {}                             // NOLINT(google-explicit-constructor)
  RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce_in_place(); }

  const MPoly& numer() const { return num_; }
  const MPoly& denom() const { return den_; }
  bool canonical() const { return canonical_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// Union of the numerator and denominator variables.
  std::vector<std::string> variables() const { return MPoly::merged_variables(num_.variables(), den_.variables()); }

  /// True iff every variable is `var` (or the fraction is constant).
  bool is_univariate_in(std::string_view var) const {
    for (const auto& v : variables())
      if (v != var) return false;
    return true;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc pow(int k) const {
    if (k < 0) return RatFunc(1) / pow(-k);
    return RatFunc(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
  }

  /// Exact equality by cross-multiplication; no canonical form required.
  friend bool equal(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  /// Structural equality of the stored forms.
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Replaces `var` by a rational function.
  RatFunc substitute(std::string_view var, const RatFunc& value) const {
    return substitute_poly(num_, var, value) / substitute_poly(den_, var, value);
  }

  Rational evaluate(const std::map<std::string, Rational, std::less<>>& point) const {
    Rational d = den_.evaluate(point);
    if (d == 0) throw Error(ErrorCode::ZeroDenominator, "denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
  }

  std::string to_string() const {
    if (den_ == MPoly(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  static RatFunc substitute_poly(const MPoly& p, std::string_view var, const RatFunc& value) {
    if (!p.has_variable(var)) return RatFunc(p);
    auto coeffs = p.coefficients_in(var);
    // Horner over rational functions.
    RatFunc acc(coeffs.back());
    for (auto i = coeffs.size() - 1; i-- > 0;) acc = acc * value + RatFunc(coeffs[i]);
    return acc;
  }

  void normalize_scalar() {
    // Denominator primitive over Z with positive leading coefficient.
    Rational c = den_.content();
    if (den_.leading_coefficient() < 0) c = -c;
    if (c != 1) {
      Rational inv = Rational(1) / c;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  void reduce_in_place() {
    if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
    canonical_ = true;
    if (num_.is_zero()) {
      den_ = MPoly(1);
      return;
    }
    auto vars = variables();
    if (vars.size() <= 1) {
      if (!vars.empty() && !den_.is_constant()) {
        const std::string& x = vars[0];
        auto n = upoly::from_mpoly(num_, x);
        auto d = upoly::from_mpoly(den_, x);
        auto g = upoly::gcd(n, d);
        if (g.size() > 1) {
          num_ = upoly::to_mpoly(upoly::divmod(n, g).first, x);
          den_ = upoly::to_mpoly(upoly::divmod(d, g).first, x);
        }
      }
      normalize_scalar();
      return;
    }
    // Multivariate: cancel common monomial content, then try exact quotients.
    auto all = MPoly::merged_variables(num_.variables(), den_.variables());
    auto mn = aligned_monomial_content(num_.remap_to(all), all.size());
    auto md = aligned_monomial_content(den_.remap_to(all), all.size());
    MPoly::Exponents common(all.size());
    bool any = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      common[i] = std::min(mn[i], md[i]);
      any = any || common[i] > 0;
    }
    if (any) {
      num_ = divide_aligned(num_.remap_to(all), common, all);
      den_ = divide_aligned(den_.remap_to(all), common, all);
    }
    if (den_.is_constant()) {
      normalize_scalar();
      return;
    }
    if (auto q = num_.exact_divide(den_)) {
      num_ = *q;
      den_ = MPoly(1);
      return;
    }
    if (auto q = den_.exact_divide(num_)) {
      den_ = *q;
      num_ = MPoly(1);
      normalize_scalar();
      return;
    }
    normalize_scalar();
    canonical_ = false;
  }

  static MPoly::Exponents aligned_monomial_content(const MPoly::TermMap& t, std::size_t n) {
    MPoly::Exponents m(n, 0);
    bool first = true;
    for (const auto& [e, c] : t) {
      if (first) {
        m = e;
        first = false;
      } else {
        for (std::size_t i = 0; i < n; ++i) m[i] = std::min(m[i], e[i]);
      }
    }
    return m;
  }

  static MPoly divide_aligned(const MPoly::TermMap& t, const MPoly::Exponents& m,
                              const std::vector<std::string>& vars) {
    MPoly::TermMap out;
    for (const auto& [e, c] : t) {
      MPoly::Exponents q = e;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= m[i];
      out.emplace(std::move(q), c);
    }
    return MPoly(vars, std::move(out));
  }

  MPoly num_;
  MPoly den_;
  bool canonical_ = true;
};

}  // namespace motivic
