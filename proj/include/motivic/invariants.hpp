#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "motivic/strata.hpp"
#include "motivic/termsum.hpp"

namespace motivic {

namespace detail {

inline void require_context(const ResolutionData& data, std::initializer_list<Context> allowed, const char* op) {
  if (std::find(allowed.begin(), allowed.end(), data.context) == allowed.end())
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + " does not accept a document in context " + to_string(data.context));
}

inline const MPoly& class_of(const StratumRecord& s) {
  if (!s.classL) throw Error(ErrorCode::InvalidArgument, "a stratum lacks classL, needed at the class-L level");
  return *s.classL;
}

inline void no_symbols(const ResolutionData& data, const char* op) {
  for (const auto& s : data.strata)
    if (s.symbol) throw Error(ErrorCode::InvalidArgument, std::string(op) + " cannot carry the symbolic chi " + *s.symbol);
}

template <class FactorOf>
TermSum class_sum(const ResolutionData& data, FactorOf factor_of) {
  std::vector<Term> terms;
  for (const auto& s : data.strata) {
    Term t{class_of(s), {}};
    for (const auto& id : s.subset) t.factors.push_back(factor_of(data.component(id)));
    terms.push_back(std::move(t));
  }
  return TermSum(Level::class_l, std::move(terms));
}

template <class FactorOf>
TermSum euler_sum(const ResolutionData& data, FactorOf factor_of) {
  std::vector<Term> terms;
  for (const auto& s : data.strata) {
    Term t{MPoly(s.chi), {}};
    for (const auto& id : s.subset) t.factors.push_back(factor_of(data.component(id)));
    terms.push_back(std::move(t));
  }
  return TermSum(Level::euler, std::move(terms));
}

inline std::vector<std::string> symbols_of(const ResolutionData& data) {
  std::vector<std::string> out;
  for (const auto& s : data.strata)
    if (s.symbol) out.push_back(*s.symbol);
  return out;
}

}  // namespace detail

/// Normal crossings integral of L^(-ord D): one factor (1 + N_i, 0) per component.
inline TermSum nc_integral(const ResolutionData& data) {
  detail::require_context(data, {Context::nc_integral}, "nc_integral");
  detail::no_symbols(data, "nc_integral");
  return detail::class_sum(data, [](const ComponentRecord& c) { return Factor{1 + *c.N, 0}; });
}

/// Motivic volume of the arc space: factors (rho_i, 0).
inline TermSum motivic_volume(const ResolutionData& data) {
  detail::require_context(data, {Context::volume}, "motivic_volume");
  detail::no_symbols(data, "motivic_volume");
  return detail::class_sum(data, [](const ComponentRecord& c) { return Factor{*c.nu, 0}; });
}

/// Motivic zeta function Z(T): factors (nu_i, N_i).
inline TermSum motivic_zeta(const ResolutionData& data) {
  detail::require_context(data, {Context::zeta}, "motivic_zeta");
  detail::no_symbols(data, "motivic_zeta");
  return detail::class_sum(data, [](const ComponentRecord& c) { return Factor{*c.nu, *c.N}; });
}

/// J(T) = (Z(L^m T) - L^m) / (L^m T - 1), assembled over the factor base of Z.
inline RatFunc J_from_Z(const TermSum& z, int m) {
  if (z.level() != Level::class_l || z.root_index() != 1)
    throw Error(ErrorCode::UnsupportedLevel, "J_from_Z needs a class-L zeta sum with integer nu");
  for (const auto& t : z.terms())
    for (const auto& f : t.factors)
      if (f.N <= 0) throw Error(ErrorCode::InvalidArgument, "J_from_Z needs zeta-context factors (N > 0)");
  const MPoly Lm = MPoly::var("L").pow(static_cast<unsigned>(m));
  const MPoly shifted = Lm * MPoly::var("T");
  std::vector<FracTerm> fracs;
  for (auto& ft : to_fracterms(z)) {
    FracTerm g{ft.numer.substitute("T", shifted), {}};
    for (const auto& d : ft.den_factors) g.den_factors.push_back(d.substitute("T", shifted));
    fracs.push_back(std::move(g));
  }
  fracs.push_back({-Lm, {}});
  for (auto& ft : fracs) ft.den_factors.push_back(shifted - MPoly(1));
  return assemble(fracs);
}

/// Topological zeta function: sum chi(E_I°) prod 1/(nu_i + s N_i).
inline RatFunc z_top(const ResolutionData& data) {
  detail::require_context(data, {Context::zeta}, "z_top");
  detail::no_symbols(data, "z_top");
  return to_ratfunc(detail::euler_sum(data, [](const ComponentRecord& c) { return Factor{*c.nu, *c.N}; }));
}

/// Candidate poles -nu_i/N_i of the components with N_i != 0.
inline std::vector<Rational> candidate_poles(const ResolutionData& data) {
  std::vector<Rational> out;
  for (const auto& c : data.components)
    if (c.N && c.nu && *c.N != 0) out.push_back(-*c.nu / *c.N);
  return out;
}

struct Pole {
  Rational location;
  int multiplicity;
};

struct PoleList {
  std::vector<Pole> poles;  // ascending location
  /// Degree of the denominator left after removing all candidate roots; 0 when
  /// every pole is a candidate.
  int residual_degree = 0;
};

/// Poles of a univariate function of s among the candidates, with multiplicity.
inline PoleList extract_poles(const RatFunc& f, const std::vector<Rational>& candidates) {
  if (!f.is_univariate_in("s")) throw Error(ErrorCode::InvalidArgument, "extract_poles needs a function of s alone");
  RatFunc g = ratfunc_reduce(f);
  auto den = upoly::from_mpoly(g.denom(), "s");
  std::vector<Rational> cands = candidates;
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  PoleList out;
  for (const auto& c : cands) {
    int m = upoly::root_multiplicity(den, c);
    if (m == 0) continue;
    out.poles.push_back({c, m});
    for (int i = 0; i < m; ++i) den = upoly::divmod(den, upoly::UPoly{-c, Rational(1)}).first;
  }
  out.residual_degree = upoly::degree(den);
  return out;
}

struct PoleVerdict {
  Pole pole;
  Rational exponent;  // frac(location)
  bool satisfied;
};

/// For each pole s0: is e^(2 pi i s0) among the eigenvalues e^(2 pi i q)?
inline std::vector<PoleVerdict> monodromy_check(const PoleList& poles, const std::vector<Rational>& exponents) {
  std::vector<Rational> reduced;
  for (const auto& q : exponents) reduced.push_back(frac(q));
  std::vector<PoleVerdict> out;
  for (const auto& p : poles.poles) {
    Rational e = frac(p.location);
    out.push_back({p, e, std::find(reduced.begin(), reduced.end(), e) != reduced.end()});
  }
  return out;
}

struct StringyInvariants {
  Rational eSt;
  std::vector<std::string> eStSymbols;  // symbolic additive parts of eSt
  std::optional<TermSum> ESt;           // hodge level, when every stratum has hodge data
  std::optional<TermSum> calESt;        // class-L level, when every stratum has classL
};

/// e_st, E_st and the class-level stringy invariant from log discrepancies.
inline StringyInvariants stringy_invariants(const ResolutionData& data) {
  detail::require_context(data, {Context::stringy, Context::stringy_zeta}, "stringy_invariants");
  for (const auto& c : data.components)
    if (*c.a <= 0)
      throw Error(ErrorCode::NotLogTerminal, "component " + c.id + " has log discrepancy " + to_string(*c.a) + " <= 0");
  auto factor_of = [](const ComponentRecord& c) { return Factor{*c.a, 0}; };
  StringyInvariants out;
  out.eSt = specialize_chi(detail::euler_sum(data, factor_of));
  out.eStSymbols = detail::symbols_of(data);
  bool all_class = true, all_hodge = true;
  for (const auto& s : data.strata) {
    all_class = all_class && s.classL.has_value() && !s.symbol;
    all_hodge = all_hodge && (s.hodge.has_value() || s.classL.has_value()) && !s.symbol;
  }
  if (all_class) {
    out.calESt = detail::class_sum(data, factor_of);
    out.ESt = specialize_hodge(*out.calESt);
  } else if (all_hodge) {
    std::vector<Term> terms;
    const MPoly uv = MPoly::var("u") * MPoly::var("v");
    for (const auto& s : data.strata) {
      Term t{s.hodge ? *s.hodge : s.classL->substitute("L", uv), {}};
      for (const auto& id : s.subset) t.factors.push_back(factor_of(data.component(id)));
      terms.push_back(std::move(t));
    }
    out.ESt = TermSum(Level::hodge, std::move(terms));
  }
  return out;
}

/// A rational function of s plus named symbolic constants.
struct SymbolicValue {
  RatFunc value;
  std::vector<std::string> symbols;
};

/// Stringy zeta function: sum chi(E_I°) prod 1/(nu_i + s N_i), N_i <= 0.
inline SymbolicValue stringy_zeta(const ResolutionData& data) {
  detail::require_context(data, {Context::stringy_zeta}, "stringy_zeta");
  TermSum t = detail::euler_sum(data, [](const ComponentRecord& c) { return Factor{*c.nu, *c.N}; });
  return {to_ratfunc(t), detail::symbols_of(data)};
}

struct PoleAtOne {
  int multiplicity;
};

/// Value at s = 1, or the order of the pole there.
inline std::variant<Rational, PoleAtOne> limit_s1(const RatFunc& f) {
  if (!f.is_univariate_in("s")) throw Error(ErrorCode::InvalidArgument, "limit_s1 needs a function of s alone");
  RatFunc g = ratfunc_reduce(f);
  auto den = upoly::from_mpoly(g.denom(), "s");
  int m = upoly::root_multiplicity(den, Rational(1));
  if (m > 0) return PoleAtOne{m};
  return g.evaluate({{"s", Rational(1)}});
}

struct SeifertData {
  int g = 0;
  Integer kappa = 1;
  std::vector<std::pair<Integer, Integer>> chains;  // (n_i, q_i)
  Rational chiComplement = 0;
  std::optional<std::string> chiSymbol;  // symbolic part of chi(X \ {P})
  std::optional<Integer> d;
};

/// Reads {"g", "kappa", "chains": [[n, q], ...], "chiComplement", "chiSymbol", "d"}.
inline SeifertData seifert_from_json(const nlohmann::json& j) {
  using detail::require;
  require(j.is_object(), ErrorCode::SchemaError, "seifert data must be an object");
  auto integer = [](const nlohmann::json& v, const std::string& what) {
    Rational r = detail::json_rational(v, what);
    require(is_integer(r), ErrorCode::SchemaError, what + " must be an integer");
    return numerator(r);
  };
  SeifertData sd;
  if (j.contains("g")) sd.g = static_cast<int>(integer(j["g"], "g"));
  if (j.contains("kappa")) sd.kappa = integer(j["kappa"], "kappa");
  if (j.contains("chains")) {
    require(j["chains"].is_array(), ErrorCode::SchemaError, "chains must be an array");
    for (const auto& c : j["chains"]) {
      require(c.is_array() && c.size() == 2, ErrorCode::SchemaError, "each chain is [n, q]");
      sd.chains.emplace_back(integer(c[0], "chain n"), integer(c[1], "chain q"));
    }
  }
  if (j.contains("chiComplement")) sd.chiComplement = detail::json_rational(j["chiComplement"], "chiComplement");
  if (j.contains("chiSymbol")) {
    require(j["chiSymbol"].is_string(), ErrorCode::SchemaError, "chiSymbol must be a string");
    sd.chiSymbol = j["chiSymbol"].get<std::string>();
  }
  if (j.contains("d")) sd.d = integer(j["d"], "d");
  return sd;
}

struct SeifertResult {
  Rational a;
  Rational eSt;  // numeric part; chiSymbol is added symbolically
  Integer dDerived;
};

/// Log discrepancy of the central curve and e_st of a surface singularity
/// with star-shaped resolution graph.
inline SeifertResult seifert_e_st(const SeifertData& sd) {
  if (sd.g < 0) throw Error(ErrorCode::InvalidArgument, "genus must be >= 0");
  if (sd.kappa < 1) throw Error(ErrorCode::InvalidArgument, "kappa must be >= 1");
  Rational sum_q_over_n = 0, sum_inv_n = 0;
  Integer sum_n = 0, prod_n = 1;
  for (const auto& [n, q] : sd.chains) {
    if (n < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "chain invariants must be positive");
    if (gcd(n, q) != 1) throw Error(ErrorCode::InvalidArgument, "chain (" + n.str() + ", " + q.str() + ") not coprime");
    sum_q_over_n += Rational(q, n);
    sum_inv_n += Rational(1, n);
    sum_n += n;
    prod_n *= n;
  }
  const int k = static_cast<int>(sd.chains.size());
  const Rational denom = Rational(sd.kappa) - sum_q_over_n;
  if (denom == 0) throw Error(ErrorCode::DegenerateDenominator, "kappa - sum q_i/n_i = 0");
  const Rational numer = Rational(2 - 2 * sd.g - k) + sum_inv_n;
  if (numer == 0) throw Error(ErrorCode::StrictlyLogCanonical, "2 - 2g - k + sum 1/n_i = 0, so a = 0");
  SeifertResult out;
  out.a = numer / denom;
  out.eSt = Rational(2 - 2 * sd.g - k + sum_n) / out.a + sd.chiComplement;
  Rational dd = denom * prod_n;
  if (!is_integer(dd)) throw Error(ErrorCode::DConsistencyFailure, "(kappa - sum q/n) prod n is not an integer");
  out.dDerived = numerator(dd);
  if (sd.d) {
    if (abs(out.dDerived) != *sd.d)
      throw Error(ErrorCode::DConsistencyFailure, "given d = " + sd.d->str() + ", derived " + out.dDerived.str());
    if (Rational(prod_n, *sd.d) * numer != out.a)
      throw Error(ErrorCode::DConsistencyFailure, "a from (prod n_i / d)(2 - 2g - k + sum 1/n_i) disagrees");
  }
  return out;
}

struct IdentityCheck {
  RatFunc sum;
  Rational chiSum;
  bool classHolds;
  bool chiHolds;
};

/// [X] = sum [E_I°] prod (L-1)/(L^nu_i - 1) and its chi shadow.
inline IdentityCheck birational_identity(const ResolutionData& data, const MPoly& lhs) {
  detail::require_context(data, {Context::birational_identity}, "birational_identity");
  detail::no_symbols(data, "birational_identity");
  TermSum t = detail::class_sum(data, [](const ComponentRecord& c) { return Factor{*c.nu, 0}; });
  IdentityCheck out{to_ratfunc(t), specialize_chi(t), false, false};
  out.classHolds = ratfunc_equal(out.sum, RatFunc(lhs));
  out.chiHolds = out.chiSum == chi_of(lhs);
  return out;
}

// ---------------------------------------------------------------------------
// Display

namespace detail {

/// Ascending-degree text without '*', e.g. "5+4s", "1-s^2".
inline std::string compact_upoly(const upoly::UPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    bool neg = c < 0;
    if (neg) c = -c;
    std::string coef = (c == 1 && i > 0) ? "" : to_string(c);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? "-" : "+";
    out += coef + mono;
  }
  return out;
}

inline std::string wrap(const std::string& s, bool needed) { return needed ? "(" + s + ")" : s; }

}  // namespace detail

/// Compact factored text of a univariate function of s whose denominator
/// splits into the linear factors of `poles`, e.g. "(5+4s)/((5+6s)(1+s))".
/// Falls back to the canonical text when the denominator does not split.
inline std::string factored_display(const RatFunc& f, const PoleList& poles) {
  RatFunc g = ratfunc_reduce(f);
  if (!g.is_univariate_in("s") || poles.residual_degree != 0) return g.to_string();
  auto num = upoly::from_mpoly(g.numer(), "s");
  auto den = upoly::from_mpoly(g.denom(), "s");
  if (den.size() == 1) return detail::compact_upoly(upoly::mul(num, {Rational(1) / den[0]}), "s");
  // den = c * prod (b s + a)^m with integer coprime a, b > 0 and location -a/b.
  struct Lin {
    upoly::UPoly p;
    int m;
  };
  std::vector<Lin> lins;
  upoly::UPoly prod{Rational(1)};
  for (const auto& pole : poles.poles) {
    Integer a = -numerator(pole.location), b = denominator(pole.location);
    upoly::UPoly lin{Rational(a), Rational(b)};
    lins.push_back({lin, pole.multiplicity});
    for (int i = 0; i < pole.multiplicity; ++i) prod = upoly::mul(prod, lin);
  }
  Rational c = den.back() / prod.back();
  num = upoly::mul(num, {Rational(1) / c});
  std::stable_sort(lins.begin(), lins.end(), [](const Lin& x, const Lin& y) { return x.p[1] > y.p[1]; });
  std::string d;
  for (const auto& l : lins) {
    std::string t = l.p[0] == 0 ? detail::compact_upoly(l.p, "s") : "(" + detail::compact_upoly(l.p, "s") + ")";
    if (l.m > 1) t += "^" + std::to_string(l.m);
    d += t;
  }
  std::string n = detail::compact_upoly(num, "s");
  bool num_compound = n.find_first_of("+-", 1) != std::string::npos;
  return detail::wrap(n, num_compound) + "/" + detail::wrap(d, lins.size() > 1);
}

/// Appends symbolic constants to a display string.
inline std::string with_symbols(std::string text, const std::vector<std::string>& symbols) {
  for (const auto& s : symbols) text = text == "0" ? s : text + " + " + s;
  return text;
}

}  // namespace motivic
