#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "motivic/ratfunc.hpp"
#include "motivic/series.hpp"

namespace motivic {

/// Which specialization of the value ring a TermSum lives in.
enum class Level { class_l, hodge, euler };

constexpr std::string_view to_string(Level level) {
  switch (level) {
    case Level::class_l: return "class-L";
    case Level::hodge: return "hodge";
    case Level::euler: return "euler";
  }
  return "?";
}

/// One factor of a resolution-formula product.
///
///   class-L, N > 0 : (L-1) T^N / (L^nu - T^N)
///   class-L, N = 0 : (L-1) / (L^nu - 1)
///   hodge          : same with L replaced by uv
///   euler          : 1 / (nu + s N)
struct Factor {
  Rational nu;
  Rational N;

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Term {
  MPoly coeff;
  std::vector<Factor> factors;
};

/// A sum over strata  sum_I coeff_I * prod_{i in I} factor_i  in resolution
/// normal form. Every formula family (normal crossings integrals, motivic
/// volume, motivic zeta, stringy invariants, stringy zeta) is one of these.
class TermSum {
 public:
  TermSum() = default;
  TermSum(Level level, std::vector<Term> terms) : level_(level), terms_(std::move(terms)) { validate(); }

  Level level() const { return level_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// r such that every nu lies in (1/r)Z; fractional powers use w = base^(1/r).
  Integer root_index() const {
    Integer r = 1;
    for (const auto& t : terms_)
      for (const auto& f : t.factors) r = lcm(r, denominator(f.nu));
    return r;
  }

 private:
  void validate() const {
    int sign = 0;
    for (const auto& t : terms_) {
      for (const auto& f : t.factors) {
        if (f.nu == 0 && f.N == 0) throw Error(ErrorCode::ForbiddenZeroPair, "factor with (nu, N) = (0, 0)");
        if (level_ == Level::euler && f.N != 0) {
          int s = f.N > 0 ? 1 : -1;
          if (sign != 0 && s != sign)
            throw Error(ErrorCode::InvalidArgument, "euler-level factors mix N > 0 and N < 0");
          sign = s;
        }
      }
    }
  }

  Level level_ = Level::class_l;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Polynomial plumbing

enum class PolyOp { add, sub, mul };

inline MPoly poly_arith(const MPoly& a, const MPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  return {};
}

inline RatFunc ratfunc_reduce(const RatFunc& f) { return RatFunc(f.numer(), f.denom()); }

inline bool ratfunc_equal(const RatFunc& f, const RatFunc& g) { return equal(f, g); }

/// Value of a polynomial in L with integer coefficients at L = p.
inline Integer eval_at_prime(const MPoly& c, std::uint64_t p) {
  for (const auto& v : c.variables())
    if (v != "L") throw Error(ErrorCode::InvalidArgument, "eval_at_prime: unexpected variable " + v);
  if (!c.all_integer_coefficients())
    throw Error(ErrorCode::NonIntegerCoefficients, c.to_string() + " has non-integer coefficients");
  Rational v = c.evaluate({{"L", Rational(Integer(p))}});
  return numerator(v);
}

// ---------------------------------------------------------------------------
// Assembling a sum of fractions over a shared factor base

namespace detail {

/// Phi_n(x) as a dense univariate polynomial.
inline upoly::UPoly cyclotomic(unsigned n) {
  static std::map<unsigned, upoly::UPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  upoly::UPoly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = upoly::divmod(p, cyclotomic(d)).first;
  cache.emplace(n, p);
  return p;
}

/// Splits a denominator factor into scalar * monomial variables * base
/// pieces; m^g - 1 with m a monomial is split into cyclotomic pieces so that shared
/// pieces of different factors merge.
inline void split_factor(const MPoly& f, Rational& scalar, std::vector<MPoly>& out) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator factor");
  if (f.is_constant()) {
    scalar *= f.constant_term();
    return;
  }
  auto m = f.monomial_content();
  MPoly rest = f.divide_monomial(m);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::uint32_t k = 0; k < m[i]; ++k) out.push_back(MPoly::var(f.variables()[i]));
  if (rest.is_constant()) {
    scalar *= rest.constant_term();
    return;
  }
  Rational c = rest.content();
  if (rest.leading_coefficient() < 0) c = -c;
  scalar *= c;
  rest = rest.scaled(Rational(1) / c);
  if (rest.size() == 2 && rest.constant_term() == -1 && rest.leading_coefficient() == 1) {
    // m^g - 1 with m a monomial: product of Phi_d(m) over d | g.
    MPoly::Exponents e = rest.terms().begin()->first;
    std::uint32_t g = 0;
    for (auto x : e) g = std::gcd(g, x);
    for (auto& x : e) x /= g;
    MPoly::TermMap tm;
    tm.emplace(e, Rational(1));
    MPoly m(rest.variables(), std::move(tm));
    for (unsigned d = 1; d <= g; ++d)
      if (g % d == 0) out.push_back(upoly::to_mpoly(cyclotomic(d), "_m").substitute("_m", m));
    return;
  }
  out.push_back(rest);
}

}  // namespace detail

/// numerator / product of denominator factors.
struct FracTerm {
  MPoly numer;
  std::vector<MPoly> den_factors;
};

/// Sum of fractions over the least common multiple of their split
/// denominators, with every base factor that divides the numerator cancelled.
inline RatFunc assemble(const std::vector<FracTerm>& terms) {
  struct Split {
    MPoly numer;
    std::map<MPoly, int> mult;
  };
  std::vector<Split> split;
  std::map<MPoly, int> lcm_mult;
  for (const auto& t : terms) {
    if (t.numer.is_zero()) continue;
    Rational scalar = 1;
    std::vector<MPoly> base;
    for (const auto& f : t.den_factors) detail::split_factor(f, scalar, base);
    Split s{t.numer.scaled(Rational(1) / scalar), {}};
    for (auto& b : base) ++s.mult[b];
    for (const auto& [b, k] : s.mult) lcm_mult[b] = std::max(lcm_mult[b], k);
    split.push_back(std::move(s));
  }
  MPoly numer;
  for (const auto& s : split) {
    MPoly n = s.numer;
    for (const auto& [b, k] : lcm_mult) {
      auto it = s.mult.find(b);
      int have = it == s.mult.end() ? 0 : it->second;
      if (k > have) n *= b.pow(static_cast<unsigned>(k - have));
    }
    numer += n;
  }
  MPoly denom(1);
  for (auto& [b, k] : lcm_mult) {
    while (k > 0 && !numer.is_zero()) {
      auto q = numer.exact_divide(b);
      if (!q) break;
      numer = std::move(*q);
      --k;
    }
    if (numer.is_zero()) break;
    denom *= b.pow(static_cast<unsigned>(k));
  }
  if (numer.is_zero()) return RatFunc(0);
  return RatFunc(numer, denom);
}

// ---------------------------------------------------------------------------
// Specializations

/// chi of a coefficient: L -> 1, u = v = 1.
inline Rational chi_of(const MPoly& coeff) {
  std::map<std::string, Rational, std::less<>> one;
  for (const auto& v : coeff.variables()) {
    if (v != "L" && v != "u" && v != "v")
      throw Error(ErrorCode::UnsupportedLevel, "cannot take chi of coefficient in variable " + v);
    one.emplace(v, Rational(1));
  }
  return coeff.evaluate(one);
}

/// sum chi(coeff) prod 1/nu, via the per-factor limit (L-1)/(L^nu-1) -> 1/nu.
inline Rational specialize_chi(const TermSum& t) {
  Rational total = 0;
  for (const auto& term : t.terms()) {
    Rational v = chi_of(term.coeff);
    for (const auto& f : term.factors) {
      if (f.N != 0)
        throw Error(ErrorCode::UnsupportedLevel, "specialize_chi needs N = 0 factors; use the s-variable specialization");
      if (f.nu == 0) throw Error(ErrorCode::DivisionByZeroDiscrepancy, "factor with nu = 0");
      v /= f.nu;
    }
    total += v;
  }
  return total;
}

/// Class-L -> Hodge: coefficients get L -> uv; factors are reinterpreted.
inline TermSum specialize_hodge(const TermSum& t) {
  if (t.level() == Level::hodge) return t;
  if (t.level() != Level::class_l) throw Error(ErrorCode::UnsupportedLevel, "specialize_hodge needs class-L input");
  MPoly uv = MPoly::var("u") * MPoly::var("v");
  std::vector<Term> out;
  for (const auto& term : t.terms()) out.push_back({term.coeff.substitute("L", uv), term.factors});
  return TermSum(Level::hodge, std::move(out));
}

/// Any level -> Euler: coefficients become their chi, factors unchanged.
inline TermSum specialize_euler(const TermSum& t) {
  if (t.level() == Level::euler) return t;
  std::vector<Term> out;
  for (const auto& term : t.terms()) out.push_back({MPoly(chi_of(term.coeff)), term.factors});
  return TermSum(Level::euler, std::move(out));
}

/// w^r -> uv normal form, for comparing Hodge-level values with r > 1.
inline MPoly reduce_root_relation(const MPoly& p, unsigned r) {
  int k = p.index_of("w");
  if (k < 0 || r == 0) return p;
  MPoly uv = MPoly::var("u") * MPoly::var("v");
  MPoly out;
  for (const auto& [e, c] : p.terms()) {
    MPoly::Exponents rest = e;
    std::uint32_t we = rest[k];
    rest[k] = we % r;
    MPoly::TermMap tm;
    tm.emplace(rest, c);
    out += MPoly(p.variables(), std::move(tm)) * uv.pow(we / r);
  }
  return out;
}

/// Equality of Hodge-level values in Q(u,v)[w]/(w^r - uv).
inline bool equal_modulo_root(const RatFunc& a, const RatFunc& b, unsigned r) {
  return reduce_root_relation(a.numer() * b.denom(), r) == reduce_root_relation(b.numer() * a.denom(), r);
}

namespace detail {

inline unsigned to_unsigned(const Integer& i) {
  if (i < 0 || i > 1000000) throw Error(ErrorCode::InvalidArgument, "exponent out of range: " + i.str());
  return static_cast<unsigned>(i);
}

/// base^e - rhs with e possibly negative: returns (extra numerator, denominator).
inline std::pair<MPoly, MPoly> power_minus(const MPoly& base, const Integer& e, const MPoly& rhs) {
  if (e >= 0) return {MPoly(1), base.pow(to_unsigned(e)) - rhs};
  MPoly b = base.pow(to_unsigned(-e));
  return {b, MPoly(1) - rhs * b};
}

}  // namespace detail

/// The fractions a TermSum is the sum of, before assembly.
///
/// Class-L values with fractional nu are expressed in w with L = w^r; Hodge
/// values use w with w^r = uv. Euler values are fractions in s.
inline std::vector<FracTerm> to_fracterms(const TermSum& t) {
  const Integer r = t.root_index();
  std::vector<FracTerm> fracs;
  if (t.level() == Level::euler) {
    MPoly s = MPoly::var("s");
    for (const auto& term : t.terms()) {
      if (!term.coeff.is_constant())
        throw Error(ErrorCode::UnsupportedLevel, "euler-level coefficient must be a number");
      FracTerm ft{term.coeff, {}};
      for (const auto& f : term.factors) {
        if (f.N == 0)
          ft.den_factors.push_back(MPoly(f.nu));
        else
          ft.den_factors.push_back(MPoly(f.nu) + s.scaled(f.N));
      }
      fracs.push_back(std::move(ft));
    }
    return fracs;
  }

  const bool hodge = t.level() == Level::hodge;
  const MPoly base = MPoly::var((hodge || r != 1) ? "w" : "L");
  const MPoly one_l = base.pow(detail::to_unsigned(r));  // the class of A^1 in base terms
  const MPoly T = MPoly::var("T");
  for (const auto& term : t.terms()) {
    MPoly coeff = (!hodge && r != 1) ? term.coeff.substitute("L", one_l) : term.coeff;
    FracTerm ft{coeff, {}};
    for (const auto& f : term.factors) {
      if (!is_integer(f.N) || f.N < 0)
        throw Error(ErrorCode::UnsupportedLevel, "class/hodge factors need integer N >= 0, got " + to_string(f.N));
      Integer e = numerator(f.nu * Rational(r));
      if (f.N == 0 && e == 0) throw Error(ErrorCode::DivisionByZeroDiscrepancy, "factor with nu = 0");
      MPoly tn = f.N == 0 ? MPoly(1) : T.pow(detail::to_unsigned(numerator(f.N)));
      auto [extra, den] = detail::power_minus(base, e, tn);
      ft.numer *= (one_l - MPoly(1)) * (f.N == 0 ? MPoly(1) : tn) * extra;
      ft.den_factors.push_back(den);
    }
    fracs.push_back(std::move(ft));
  }
  return fracs;
}

/// The rational function a TermSum denotes; Hodge values with r = 1 are
/// returned in u, v.
inline RatFunc to_ratfunc(const TermSum& t) {
  RatFunc value = assemble(to_fracterms(t));
  if (t.level() == Level::hodge && t.root_index() == 1) {
    MPoly uv = MPoly::var("u") * MPoly::var("v");
    value = RatFunc(value.numer().substitute("w", uv), value.denom().substitute("w", uv));
  }
  return value;
}

/// Coefficients of T^0..T^order of a class-L (or constant Euler) TermSum,
/// each an element of Q(L). A factor (nu, N > 0) expands as
/// (L-1) sum_{k>=1} L^(-k nu) T^(k N).
inline TruncSeries<RatFunc> series_expand(const TermSum& t, std::size_t order) {
  if (t.level() == Level::hodge) throw Error(ErrorCode::UnsupportedLevel, "series_expand of a hodge-level sum");
  auto total = TruncSeries<RatFunc>::zero(order);
  if (t.level() == Level::euler) {
    for (const auto& term : t.terms())
      for (const auto& f : term.factors)
        if (f.N != 0) throw Error(ErrorCode::UnsupportedLevel, "series_expand of euler-level factor with N != 0");
    total[0] = RatFunc(to_ratfunc(t));
    return total;
  }
  const MPoly L = MPoly::var("L");
  const RatFunc lm1(L - MPoly(1));
  for (const auto& term : t.terms()) {
    auto acc = TruncSeries<RatFunc>::zero(order);
    acc[0] = RatFunc(term.coeff);
    for (const auto& f : term.factors) {
      if (!is_integer(f.nu) || !is_integer(f.N) || f.N < 0)
        throw Error(ErrorCode::UnsupportedLevel, "series_expand needs integer nu and N >= 0");
      auto fs = TruncSeries<RatFunc>::zero(order);
      const Integer nu = numerator(f.nu);
      if (f.N == 0) {
        auto [extra, den] = detail::power_minus(L, nu, MPoly(1));
        fs[0] = RatFunc((L - MPoly(1)) * extra, den);
      } else {
        const std::size_t N = static_cast<std::size_t>(numerator(f.N));
        for (std::size_t k = 1; k * N <= order; ++k) {
          Integer e = nu * Integer(k);
          fs[k * N] = e >= 0 ? RatFunc(L - MPoly(1), L.pow(detail::to_unsigned(e)))
                             : RatFunc((L - MPoly(1)) * L.pow(detail::to_unsigned(-e)));
        }
      }
      acc = multiply(acc, fs, order);
    }
    total = add(total, acc);
  }
  return total;
}

}  // namespace motivic
