#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motivic/mpoly.hpp"

namespace motivic::upoly {

// Dense univariate polynomial over Q; entry i multiplies x^i, no trailing zeros.
using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

/// `p` must not involve variables other than `var`.
inline UPoly from_mpoly(const MPoly& p, std::string_view var) {
  if (p.variables().size() > 1 || (p.variables().size() == 1 && p.variables()[0] != var))
    throw Error(ErrorCode::InvalidArgument, "polynomial " + p.to_string() + " is not univariate in " + std::string(var));
  UPoly out(p.is_zero() ? 0 : (p.is_constant() ? 1 : p.degree_in(var) + 1));
  for (const auto& [e, c] : p.terms()) out[e.empty() ? 0 : e[0]] = c;
  trim(out);
  return out;
}

inline MPoly to_mpoly(const UPoly& p, const std::string& var) {
  MPoly::TermMap t;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) t.emplace(MPoly::Exponents{static_cast<std::uint32_t>(i)}, p[i]);
  return MPoly({var}, std::move(t));
}

inline UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Euclidean division; returns (quotient, remainder).
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw Error(ErrorCode::ZeroDenominator, "univariate division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1);
  const Rational& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / lb;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

/// Monic gcd (zero if both are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

inline Rational evaluate(const UPoly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

/// Multiplicity of `root` as a zero of p (p nonzero).
inline int root_multiplicity(UPoly p, const Rational& root) {
  int m = 0;
  UPoly lin{-root, Rational(1)};
  while (!p.empty()) {
    auto [q, r] = divmod(p, lin);
    if (!r.empty()) break;
    p = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace motivic::upoly
