#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motivic/error.hpp"
#include "motivic/rational.hpp"

namespace motivic {

/// Rank of the value-ring variables; everything else sorts after them.
inline int value_variable_rank(std::string_view name) {
  static constexpr std::string_view kOrder[] = {"L", "T", "u", "v", "s", "w"};
  for (int i = 0; i < 6; ++i)
    if (kOrder[i] == name) return i;
  return -1;
}

/// Canonical variable order: L < T < u < v < s < w, then all other names in
/// natural order ("x2" < "x10", "a1_3" < "a2_0").
struct VariableLess {
  bool operator()(std::string_view a, std::string_view b) const {
    int ra = value_variable_rank(a);
    int rb = value_variable_rank(b);
    if (ra >= 0 || rb >= 0) {
      if (ra < 0) return false;
      if (rb < 0) return true;
      return ra < rb;
    }
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      bool da = std::isdigit(static_cast<unsigned char>(a[i]));
      bool db = std::isdigit(static_cast<unsigned char>(b[j]));
      if (da && db) {
        std::size_t ei = i, ej = j;
        while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
        while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
        auto na = a.substr(i, ei - i);
        auto nb = b.substr(j, ej - j);
        while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
        while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
        if (na.size() != nb.size()) return na.size() < nb.size();
        if (na != nb) return na < nb;
        i = ei;
        j = ej;
      } else {
        if (a[i] != b[j]) return da || (!db && a[i] < b[j]);
        ++i;
        ++j;
      }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Storage is canonical: only variables that occur with a nonzero exponent are
/// kept, sorted by VariableLess, and no zero coefficient is stored. Structural
/// equality is therefore mathematical equality.
class MPoly {
 public:
  using Exponents = std::vector<std::uint32_t>;

  /// Graded lexicographic order, largest first.
  struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
      std::uint64_t da = 0, db = 0;
      for (auto e : a) da += e;
      for (auto e : b) db += e;
      if (da != db) return da > db;
      return a > b;
    }
  };
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  MPoly() = default;
  MPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Exponents{}, c);
  }
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  MPoly(std::vector<std::string> vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    normalize();
  }

  static MPoly var(const std::string& name, std::uint32_t power = 1) {
    TermMap t;
    t.emplace(Exponents{power}, Rational(1));
    return MPoly({name}, std::move(t));
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool is_univariate() const { return vars_.size() <= 1; }

  Rational constant_term() const {
    Exponents zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool has_variable(std::string_view name) const { return index_of(name) >= 0; }

  std::uint32_t degree_in(std::string_view name) const {
    int k = index_of(name);
    if (k < 0) return 0;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }

  std::uint32_t total_degree() const {
    if (terms_.empty()) return 0;
    std::uint32_t d = 0;
    for (auto e : terms_.begin()->first) d += e;
    return d;
  }

  /// Leading term in grlex order. Precondition: nonzero.
  const std::pair<const Exponents, Rational>& leading_term() const { return *terms_.begin(); }
  Rational leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

  bool all_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
  }

  /// Positive c such that p/c has coprime integer coefficients (1 for zero).
  Rational content() const {
    if (terms_.empty()) return 1;
    Integer g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
      g = gcd(g, abs(numerator(c)));
      l = lcm(l, denominator(c));
    }
    return Rational(g, l);
  }

  /// Per-variable minimum exponent over all terms.
  Exponents monomial_content() const {
    Exponents m(vars_.size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first) {
        m = e;
        first = false;
      } else {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
      }
    }
    return m;
  }

  /// Divides every term by the monomial `m` (given over this->variables()).
  MPoly divide_monomial(const Exponents& m) const {
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponents q = e;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < m[i]) throw Error(ErrorCode::InvalidArgument, "monomial does not divide polynomial");
        q[i] -= m[i];
      }
      out.emplace(std::move(q), c);
    }
    return MPoly(vars_, std::move(out));
  }

  MPoly monomial_of(const Exponents& e) const {
    TermMap t;
    t.emplace(e, Rational(1));
    return MPoly(vars_, std::move(t));
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return combine(a, b, Rational(1)); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return combine(a, b, Rational(-1)); }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    auto vars = merged_variables(a.vars_, b.vars_);
    auto ma = a.remap_to(vars);
    auto mb = b.remap_to(vars);
    TermMap out;
    Exponents e(vars.size());
    for (const auto& [ea, ca] : ma) {
      for (const auto& [eb, cb] : mb) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto [it, inserted] = out.try_emplace(e, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    }
    return MPoly(std::move(vars), std::move(out));
  }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const Rational& c) const {
    if (c == 0) return MPoly();
    MPoly r = *this;
    for (auto& [e, v] : r.terms_) v *= c;
    return r;
  }

  MPoly pow(unsigned k) const {
    MPoly result(1);
    MPoly base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  /// Replaces variable `name` by `value` everywhere.
  MPoly substitute(std::string_view name, const MPoly& value) const {
    int k = index_of(name);
    if (k < 0) return *this;
    std::vector<MPoly> powers{MPoly(1)};
    MPoly result;
    // Group terms by their exponent of `name` to reuse powers.
    std::map<std::uint32_t, TermMap> groups;
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      std::uint32_t p = rest[k];
      rest[k] = 0;
      groups[p].emplace(std::move(rest), c);
    }
    for (auto& [p, tm] : groups) {
      while (powers.size() <= p) powers.push_back(powers.back() * value);
      result += MPoly(vars_, std::move(tm)) * powers[p];
    }
    return result;
  }

  /// Evaluates at a point; every variable must be bound.
  Rational evaluate(const std::map<std::string, Rational, std::less<>>& point) const {
    std::vector<Rational> vals;
    for (const auto& v : vars_) {
      auto it = point.find(v);
      if (it == point.end()) throw Error(ErrorCode::InvalidArgument, "variable '" + v + "' not bound");
      vals.push_back(it->second);
    }
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t j = 0; j < e[i]; ++j) t *= vals[i];
      sum += t;
    }
    return sum;
  }

  /// Coefficients with respect to one variable; entry i multiplies name^i.
  std::vector<MPoly> coefficients_in(std::string_view name) const {
    int k = index_of(name);
    if (k < 0) return {*this};
    std::vector<TermMap> parts(degree_in(name) + 1);
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      std::uint32_t p = rest[k];
      rest[k] = 0;
      parts[p].emplace(std::move(rest), c);
    }
    std::vector<MPoly> out;
    for (auto& tm : parts) out.emplace_back(vars_, std::move(tm));
    return out;
  }

  /// Quotient if `divisor` divides this polynomial exactly, else nullopt.
  /// Single-divisor grlex division: the remainder is zero iff divisor | this.
  std::optional<MPoly> exact_divide(const MPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::ZeroDenominator, "exact_divide by zero polynomial");
    auto vars = merged_variables(vars_, divisor.vars_);
    TermMap rem = remap_to(vars);
    TermMap div = divisor.remap_to(vars);
    const auto& [lb, cb] = *div.begin();
    TermMap quot;
    while (!rem.empty()) {
      auto [la, ca] = *rem.begin();
      Exponents q(vars.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (la[i] < lb[i]) return std::nullopt;
        q[i] = la[i] - lb[i];
      }
      Rational cq = ca / cb;
      quot.emplace(q, cq);
      Exponents e(vars.size());
      for (const auto& [ed, cd] : div) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ed[i] + q[i];
        auto [it, inserted] = rem.try_emplace(e, -cq * cd);
        if (!inserted) {
          it->second -= cq * cd;
          if (it->second == 0) rem.erase(it);
        }
      }
    }
    return MPoly(std::move(vars), std::move(quot));
  }

  /// Canonical text: grlex order, e.g. "2*L^2 - L", "-1/2*u*v + 3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += motivic::to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += motivic::to_string(mag) + "*" + mono;
      }
    }
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  /// Arbitrary but fixed total order, for use as a map key.
  friend bool operator<(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return GrlexGreater{}(ia->first, ib->first);
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return false;
  }

  static std::vector<std::string> merged_variables(const std::vector<std::string>& a,
                                                   const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), VariableLess{});
    return out;
  }

  /// Terms re-indexed over a superset of this polynomial's variables.
  TermMap remap_to(const std::vector<std::string>& vars) const {
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      if (it == vars.end()) throw Error(ErrorCode::InvalidArgument, "remap_to: missing variable " + vars_[i]);
      where[i] = static_cast<std::size_t>(it - vars.begin());
    }
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponents f(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) f[where[i]] = e[i];
      out.emplace(std::move(f), c);
    }
    return out;
  }

 private:
  static MPoly combine(const MPoly& a, const MPoly& b, const Rational& sign) {
    auto vars = merged_variables(a.vars_, b.vars_);
    TermMap out = a.remap_to(vars);
    for (auto& [e, c] : b.remap_to(vars)) {
      auto [it, inserted] = out.try_emplace(e, sign * c);
      if (!inserted) it->second += sign * c;
    }
    return MPoly(std::move(vars), std::move(out));
  }

  void normalize() {
    // Sort variables canonically (constructors may receive any order).
    if (!std::is_sorted(vars_.begin(), vars_.end(), VariableLess{})) {
      std::vector<std::string> sorted = vars_;
      std::sort(sorted.begin(), sorted.end(), VariableLess{});
      terms_ = remap_to(sorted);
      vars_ = std::move(sorted);
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) kept.push_back(vars_[i]);
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponents f;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (used[i]) f.push_back(e[i]);
      out.emplace(std::move(f), c);
    }
    vars_ = std::move(kept);
    terms_ = std::move(out);
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

}  // namespace motivic
