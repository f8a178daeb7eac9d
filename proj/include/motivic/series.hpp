#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "motivic/ratfunc.hpp"

namespace motivic {

/// Power series in one variable truncated after `order()`; coefficient i
/// multiplies variable^i. An empty coefficient list is the zero-length series.
template <class Coeff>
struct TruncSeries {
  std::string variable = "T";
  std::vector<Coeff> coeffs;

  TruncSeries() = default;
  TruncSeries(std::string var, std::vector<Coeff> c) : variable(std::move(var)), coeffs(std::move(c)) {}

  static TruncSeries zero(std::size_t order, std::string var = "T") {
    return TruncSeries(std::move(var), std::vector<Coeff>(order + 1, Coeff(0)));
  }

  std::size_t length() const { return coeffs.size(); }
  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const Coeff& operator[](std::size_t i) const { return coeffs[i]; }
  Coeff& operator[](std::size_t i) { return coeffs[i]; }
};

/// Truncated product, keeping terms of degree <= order.
template <class Coeff>
TruncSeries<Coeff> multiply(const TruncSeries<Coeff>& a, const TruncSeries<Coeff>& b, std::size_t order) {
  auto out = TruncSeries<Coeff>::zero(order, a.variable);
  for (std::size_t i = 0; i < a.length() && i <= order; ++i) {
    if (a[i] == Coeff(0)) continue;
    for (std::size_t j = 0; j < b.length() && i + j <= order; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

template <class Coeff>
TruncSeries<Coeff> add(const TruncSeries<Coeff>& a, const TruncSeries<Coeff>& b) {
  auto n = std::max(a.length(), b.length());
  TruncSeries<Coeff> out(a.variable, std::vector<Coeff>(n, Coeff(0)));
  for (std::size_t i = 0; i < a.length(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.length(); ++i) out[i] = out[i] + b[i];
  return out;
}

/// Taylor coefficients of f at var = 0 through degree `order`, each a rational
/// function in the remaining variables. Throws NonExpandable when the
/// denominator vanishes at var = 0.
inline TruncSeries<RatFunc> taylor(const RatFunc& f, const std::string& var, std::size_t order) {
  auto n = f.numer().coefficients_in(var);
  auto d = f.denom().coefficients_in(var);
  if (d.empty() || d[0].is_zero())
    throw Error(ErrorCode::NonExpandable, "denominator " + f.denom().to_string() + " vanishes at " + var + " = 0");
  TruncSeries<RatFunc> out(var, {});
  RatFunc d0(d[0]);
  for (std::size_t k = 0; k <= order; ++k) {
    RatFunc acc = k < n.size() ? RatFunc(n[k]) : RatFunc(0);
    for (std::size_t i = 1; i <= k && i < d.size(); ++i) {
      if (d[i].is_zero()) continue;
      acc = acc - RatFunc(d[i]) * out.coeffs[k - i];
    }
    out.coeffs.push_back(acc / d0);
  }
  return out;
}

}  // namespace motivic
