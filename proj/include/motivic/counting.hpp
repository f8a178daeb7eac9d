#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "motivic/jets.hpp"

namespace motivic {

enum class CountMode { congruence, jet_points, contact };

inline std::string to_string(CountMode m) {
  switch (m) {
    case CountMode::congruence: return "congruence";
    case CountMode::jet_points: return "jet";
    case CountMode::contact: return "contact";
  }
  return "?";
}

struct CountSeries {
  std::uint64_t p = 2;
  CountMode mode = CountMode::congruence;
  std::vector<Integer> counts;
};

inline constexpr std::uint64_t kDefaultBudget = 100000000;

/// Enumeration budget: MOTIVIC_KIT_BUDGET when set, else 10^8.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("MOTIVIC_KIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

struct CountOptions {
  std::uint64_t budget = default_budget();
  unsigned threads = 1;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint64_t reduce_mod(const Rational& c, std::uint64_t q) {
  Integer r = numerator(c) % Integer(q);
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

/// Polynomial with coefficients reduced mod q, variables mapped to slots.
class CompiledPoly {
 public:
  CompiledPoly(const MPoly& p, const std::map<std::string, std::size_t, std::less<>>& slot, std::uint64_t q) : q_(q) {
    std::vector<std::size_t> idx;
    for (const auto& v : p.variables()) {
      auto it = slot.find(v);
      if (it == slot.end()) throw Error(ErrorCode::InvalidArgument, "no slot for variable " + v);
      idx.push_back(it->second);
    }
    for (const auto& [e, c] : p.terms()) {
      std::uint64_t cm = reduce_mod(c, q);
      if (cm == 0) continue;
      Mono m{cm, {}};
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) m.slots.push_back(static_cast<std::uint32_t>(idx[i]));
      monos_.push_back(std::move(m));
    }
  }

  std::uint64_t eval(const std::uint64_t* vals) const {
    std::uint64_t acc = 0;
    for (const auto& m : monos_) {
      std::uint64_t t = m.coeff;
      for (auto s : m.slots) {
        t = mulmod(t, vals[s], q_);
        if (t == 0) break;
      }
      acc += t;
      if (acc >= q_) acc -= q_;
    }
    return acc;
  }

 private:
  struct Mono {
    std::uint64_t coeff;
    std::vector<std::uint32_t> slots;  // repeated for powers
  };
  std::uint64_t q_;
  std::vector<Mono> monos_;
};

inline void check_budget(std::uint64_t p, std::uint64_t positions, std::uint64_t budget) {
  Integer need = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(positions));
  if (need > budget)
    throw Error(ErrorCode::BudgetExceeded, "enumeration needs " + std::to_string(p) + "^" + std::to_string(positions) +
                                               " = " + need.str() + " evaluations, budget is " + std::to_string(budget));
}

/// Depth-first enumeration over `levels` levels of `width` digits in [0, p).
/// Worker::accept(k) sees digits[k * width + j] for all levels <= k and
/// decides whether the level-k condition holds; a failed level prunes the
/// whole subtree. Level-0 tuples are dealt round-robin to the threads and
/// the per-thread counts are summed in thread order.
template <class Worker>
std::uint64_t level_search(const Worker& proto, unsigned width, unsigned levels, std::uint64_t p, unsigned threads) {
  std::uint64_t per_level = 1;
  for (unsigned j = 0; j < width; ++j) per_level *= p;
  auto set_level = [&](Worker& w, unsigned k, std::uint64_t code) {
    for (unsigned j = 0; j < width; ++j) {
      w.digits[k * width + j] = code % p;
      code /= p;
    }
  };
  auto descend = [&](auto& self, Worker& w, unsigned k) -> std::uint64_t {
    std::uint64_t total = 0;
    for (std::uint64_t code = 0; code < per_level; ++code) {
      set_level(w, k, code);
      if (!w.accept(k)) continue;
      total += (k + 1 == levels) ? 1 : self(self, w, k + 1);
    }
    return total;
  };
  auto run = [&](unsigned t) -> std::uint64_t {
    Worker w = proto;
    std::uint64_t total = 0;
    for (std::uint64_t code = t; code < per_level; code += threads) {
      set_level(w, 0, code);
      if (!w.accept(0)) continue;
      total += levels == 1 ? 1 : descend(descend, w, 1);
    }
    return total;
  };
  if (threads <= 1) return run(0);
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&, t] { partial[t] = run(t); });
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

/// Jet-coordinate slots: a^(j)_k lives at k * m + (j - 1).
inline std::map<std::string, std::size_t, std::less<>> jet_slots(int m, int n) {
  std::map<std::string, std::size_t, std::less<>> slot;
  for (int k = 0; k <= n; ++k)
    for (int j = 1; j <= m; ++j) slot.emplace(jet_var(j, k), static_cast<std::size_t>(k * m + (j - 1)));
  return slot;
}

struct JetWorker {
  std::vector<std::vector<CompiledPoly>> groups;  // shared read-only after construction
  std::vector<std::uint64_t> digits;
  int contact_level = -1;  // >= 0: the last group must be nonzero instead of zero

  bool accept(unsigned k) const {
    for (const auto& g : groups[k]) {
      bool zero = g.eval(digits.data()) == 0;
      if (static_cast<int>(k) == contact_level ? zero : !zero) return false;
    }
    return true;
  }
};

inline void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

inline unsigned thread_count(unsigned requested) {
  if (requested == 0) return std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace detail

/// Number of solutions of sys over the field with p elements, each point a
/// jet of level js.level.
inline Integer count_jet_points(const JetSystem& js, std::uint64_t p, const CountOptions& opt = {}) {
  detail::check_prime(p);
  const unsigned m = static_cast<unsigned>(js.numVars), levels = static_cast<unsigned>(js.level + 1);
  detail::check_budget(p, std::uint64_t(m) * levels, opt.budget);
  auto slot = detail::jet_slots(js.numVars, js.level);
  detail::JetWorker w;
  for (const auto& g : js.groups) {
    std::vector<detail::CompiledPoly> cg;
    for (const auto& eq : g) cg.emplace_back(eq, slot, p);
    w.groups.push_back(std::move(cg));
  }
  w.digits.assign(std::size_t(m) * levels, 0);
  return Integer(detail::level_search(w, m, levels, p, detail::thread_count(opt.threads)));
}

/// Number of ambient n-jets over the field with p elements along which the
/// single polynomial of sys has order exactly n.
inline Integer count_contact(const AffineSystem& sys, std::uint64_t p, int n, const CountOptions& opt = {}) {
  if (sys.polys.size() != 1) throw Error(ErrorCode::InvalidArgument, "contact counting needs exactly one polynomial");
  detail::check_prime(p);
  JetSystem js = jet_equations(sys, n);
  const unsigned m = static_cast<unsigned>(sys.numVars), levels = static_cast<unsigned>(n + 1);
  detail::check_budget(p, std::uint64_t(m) * levels, opt.budget);
  auto slot = detail::jet_slots(sys.numVars, n);
  detail::JetWorker w;
  for (const auto& g : js.groups) {
    std::vector<detail::CompiledPoly> cg;
    for (const auto& eq : g) cg.emplace_back(eq, slot, p);
    w.groups.push_back(std::move(cg));
  }
  w.contact_level = n;
  w.digits.assign(std::size_t(m) * levels, 0);
  return Integer(detail::level_search(w, m, levels, p, detail::thread_count(opt.threads)));
}

namespace detail {

/// Level k fixes the p-adic digit k of every coordinate and checks the
/// polynomials mod p^(k+1).
struct CongruenceWorker {
  std::vector<std::vector<CompiledPoly>> by_level;  // polys compiled mod p^(k+1)
  std::vector<std::uint64_t> pk;                    // p^k
  std::vector<std::uint64_t> digits;
  std::vector<std::uint64_t> x;  // coordinates mod p^(k+1) for the current level
  unsigned m = 0;

  bool accept(unsigned k) {
    for (unsigned j = 0; j < m; ++j) {
      std::uint64_t v = 0;
      for (unsigned i = 0; i <= k; ++i) v += digits[i * m + j] * pk[i];
      x[j] = v;
    }
    for (const auto& f : by_level[k])
      if (f.eval(x.data()) != 0) return false;
    return true;
  }
};

}  // namespace detail

/// Number of m-tuples over Z/p^(n+1) on which every polynomial vanishes.
inline Integer count_congruence(const AffineSystem& sys, std::uint64_t p, int n, const CountOptions& opt = {}) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "level must be >= 0");
  detail::check_prime(p);
  const unsigned m = static_cast<unsigned>(sys.numVars), levels = static_cast<unsigned>(n + 1);
  detail::check_budget(p, std::uint64_t(m) * levels, opt.budget);
  if (Integer(boost::multiprecision::pow(Integer(p), levels)) > Integer(std::uint64_t(1) << 62))
    throw Error(ErrorCode::InvalidArgument, "modulus p^(n+1) too large");
  std::map<std::string, std::size_t, std::less<>> slot;
  for (int j = 1; j <= sys.numVars; ++j) slot.emplace(coordinate_name(j), static_cast<std::size_t>(j - 1));
  detail::CongruenceWorker w;
  w.m = m;
  std::uint64_t q = 1;
  for (unsigned k = 0; k < levels; ++k) {
    w.pk.push_back(q);
    q *= p;
    std::vector<detail::CompiledPoly> level;
    for (const auto& f : sys.polys) level.emplace_back(f, slot, q);
    w.by_level.push_back(std::move(level));
  }
  w.digits.assign(std::size_t(m) * levels, 0);
  w.x.assign(m, 0);
  return Integer(detail::level_search(w, m, levels, p, detail::thread_count(opt.threads)));
}

/// Counts for n = 0..max_level.
inline CountSeries count_series(const AffineSystem& sys, CountMode mode, std::uint64_t p, int max_level,
                                const CountOptions& opt = {}) {
  CountSeries out{p, mode, {}};
  for (int n = 0; n <= max_level; ++n) {
    switch (mode) {
      case CountMode::congruence: out.counts.push_back(count_congruence(sys, p, n, opt)); break;
      case CountMode::jet_points: out.counts.push_back(count_jet_points(jet_equations(sys, n), p, opt)); break;
      case CountMode::contact: out.counts.push_back(count_contact(sys, p, n, opt)); break;
    }
  }
  return out;
}

/// sum counts[n] T^n as a truncated series with constant coefficients.
inline TruncSeries<RatFunc> assemble_series(const CountSeries& cs) {
  TruncSeries<RatFunc> s("T", {});
  for (const auto& c : cs.counts) s.coeffs.push_back(RatFunc(Rational(c)));
  return s;
}

/// Denominator prod (1 - p^a T^b).
struct DenominatorShape {
  std::vector<std::pair<int, int>> factors;  // (a, b)
};

struct NoFit {
  std::size_t index;  // first coefficient the fitted fraction fails to reproduce
  Rational residual;
};

namespace detail {

inline upoly::UPoly shape_polynomial(const DenominatorShape& shape, std::uint64_t p) {
  upoly::UPoly d{Rational(1)};
  for (auto [a, b] : shape.factors) {
    if (b < 1) throw Error(ErrorCode::InvalidArgument, "denominator factor needs b >= 1");
    upoly::UPoly f(static_cast<std::size_t>(b) + 1, Rational(0));
    f[0] = 1;
    Rational pa = a >= 0 ? Rational(boost::multiprecision::pow(Integer(p), static_cast<unsigned>(a)))
                         : Rational(1) / Rational(boost::multiprecision::pow(Integer(p), static_cast<unsigned>(-a)));
    f[static_cast<std::size_t>(b)] = -pa;
    d = upoly::mul(d, f);
  }
  return d;
}

inline Rational constant_of(const RatFunc& c) {
  if (!c.is_polynomial() || !c.numer().is_constant())
    throw Error(ErrorCode::InvalidArgument, "series coefficient " + c.to_string() + " is not a number");
  return c.numer().constant_term() / c.denom().constant_term();
}

}  // namespace detail

/// Numerator N with N / D matching the series, D the shape polynomial.
/// Multiplying the series by D is a triangular linear system for N; every
/// coefficient past deg N is a held-out check that must vanish.
inline std::variant<RatFunc, NoFit> fit_rational(const TruncSeries<RatFunc>& series, const DenominatorShape& shape,
                                                 std::uint64_t p, std::optional<int> numerator_degree = {}) {
  if (shape.factors.empty()) throw Error(ErrorCode::InvalidArgument, "empty denominator shape");
  auto d = detail::shape_polynomial(shape, p);
  const int deg_d = upoly::degree(d);
  const int e = numerator_degree.value_or(deg_d - 1);
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "numerator degree must be >= 0");
  constexpr int kMargin = 2;
  const std::size_t need = static_cast<std::size_t>(deg_d + e + 1 + kMargin);
  if (series.length() < need)
    throw Error(ErrorCode::InsufficientData, "fit needs at least " + std::to_string(need) + " coefficients, got " +
                                                 std::to_string(series.length()));
  std::vector<Rational> a;
  for (const auto& c : series.coeffs) a.push_back(detail::constant_of(c));
  upoly::UPoly num;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j <= i && j < d.size(); ++j) v += d[j] * a[i - j];
    if (static_cast<int>(i) <= e)
      num.push_back(v);
    else if (v != 0)
      return NoFit{i, v};
  }
  upoly::trim(num);
  if (num.empty()) return RatFunc(0);
  return RatFunc(upoly::to_mpoly(num, "T"), upoly::to_mpoly(d, "T"));
}

/// True iff the Taylor coefficients of f at T = 0 match every series coefficient.
inline bool verify_rational(const TruncSeries<RatFunc>& series, const RatFunc& f) {
  if (series.length() == 0) return true;
  auto t = taylor(f, "T", series.order());
  for (std::size_t i = 0; i < series.length(); ++i)
    if (!equal(t[i], series[i])) return false;
  return true;
}

}  // namespace motivic
