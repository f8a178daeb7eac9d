#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "motivic/parse.hpp"
#include "motivic/series.hpp"

namespace motivic {

/// Affine variety given by integer polynomials in x1..xm.
struct AffineSystem {
  int numVars = 0;
  std::vector<MPoly> polys;
};

inline std::string coordinate_name(int j) { return "x" + std::to_string(j); }

/// Jet coefficient a^(j)_k of x_j(t) = sum_k a^(j)_k t^k.
inline std::string jet_var(int j, int k) { return "a" + std::to_string(j) + "_" + std::to_string(k); }

namespace detail {

/// j for a variable named x<j>, else 0.
inline int coordinate_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x') return 0;
  int j = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9' || j > 100000) return 0;
    j = j * 10 + (c - '0');
  }
  return j;
}

}  // namespace detail

/// Checks the AffineSystem invariants; numVars grows to cover every x_j used.
inline AffineSystem make_affine_system(std::vector<MPoly> polys, int num_vars = 0) {
  AffineSystem sys{num_vars, std::move(polys)};
  for (const auto& p : sys.polys) {
    if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial in affine system");
    if (!p.all_integer_coefficients())
      throw Error(ErrorCode::NonIntegerCoefficients, p.to_string() + " has non-integer coefficients");
    for (const auto& v : p.variables()) {
      int j = detail::coordinate_index(v);
      if (j == 0) throw Error(ErrorCode::ParseError, "variable " + v + " is not of the form x1, x2, ...");
      sys.numVars = std::max(sys.numVars, j);
    }
  }
  if (sys.numVars == 0) sys.numVars = 1;
  return sys;
}

/// One polynomial per non-empty line; '#' starts a comment.
inline AffineSystem parse_poly_file(std::string_view text, int num_vars = 0) {
  std::vector<MPoly> polys;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    polys.push_back(parse_poly(line));
  }
  if (polys.empty()) throw Error(ErrorCode::ParseError, "polynomial file has no polynomials");
  return make_affine_system(std::move(polys), num_vars);
}

/// Equations of the n-jet space: groups[k][i] is the t^k coefficient of
/// polys[i](x(t)).
struct JetSystem {
  int level = 0;
  int numVars = 0;  // m; the jet space has m (level + 1) coordinates
  std::vector<std::vector<MPoly>> groups;

  std::vector<MPoly> equations() const {
    std::vector<MPoly> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
  }

  /// All jet coordinates, j outer and k inner.
  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (int j = 1; j <= numVars; ++j)
      for (int k = 0; k <= level; ++k) out.push_back(jet_var(j, k));
    return out;
  }
};

/// Coefficients of t^0..t^order of p evaluated on power series, one per
/// variable of p.
inline TruncSeries<MPoly> truncate_compose(const MPoly& p,
                                           const std::map<std::string, TruncSeries<MPoly>, std::less<>>& series,
                                           std::size_t order) {
  std::vector<std::vector<TruncSeries<MPoly>>> powers;  // powers[i][e] = series_i^e
  for (const auto& v : p.variables()) {
    auto it = series.find(v);
    if (it == series.end()) throw Error(ErrorCode::InvalidArgument, "no series given for variable " + v);
    if (it->second.order() < order || it->second.length() == 0)
      throw Error(ErrorCode::OrderMismatch, "series for " + v + " has order " + std::to_string(it->second.order()) +
                                                " < " + std::to_string(order));
    std::vector<TruncSeries<MPoly>> pw;
    auto one = TruncSeries<MPoly>::zero(order, "t");
    one[0] = MPoly(1);
    pw.push_back(one);
    for (std::uint32_t e = 1; e <= p.degree_in(v); ++e) pw.push_back(multiply(pw.back(), it->second, order));
    powers.push_back(std::move(pw));
  }
  auto out = TruncSeries<MPoly>::zero(order, "t");
  for (const auto& [e, c] : p.terms()) {
    auto acc = TruncSeries<MPoly>::zero(order, "t");
    acc[0] = MPoly(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) acc = multiply(acc, powers[i][e[i]], order);
    out = add(out, acc);
  }
  return out;
}

/// Equations of L_n(X): substitute x_j(t) = sum_{k <= n} a^(j)_k t^k and read
/// off t^0..t^n.
inline JetSystem jet_equations(const AffineSystem& sys, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "jet level must be >= 0");
  const auto order = static_cast<std::size_t>(n);
  std::map<std::string, TruncSeries<MPoly>, std::less<>> series;
  for (int j = 1; j <= sys.numVars; ++j) {
    auto s = TruncSeries<MPoly>::zero(order, "t");
    for (int k = 0; k <= n; ++k) s[k] = MPoly::var(jet_var(j, k));
    series.emplace(coordinate_name(j), std::move(s));
  }
  JetSystem js{n, sys.numVars, std::vector<std::vector<MPoly>>(order + 1)};
  for (const auto& p : sys.polys) {
    auto c = truncate_compose(p, series, order);
    for (std::size_t k = 0; k <= order; ++k) js.groups[k].push_back(c[k]);
  }
  return js;
}

}  // namespace motivic
