#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "motivic/counting.hpp"
#include "motivic/invariants.hpp"

using namespace motivic;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Report

struct Check {
  std::string name;
  bool pass;
  std::string expected;
  std::string actual;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& bytes) {
    digest_src_ += bytes;
    digest_src_ += '\0';
  }
  void result(const std::string& name, ojson value) { results_.emplace_back(name, std::move(value)); }
  void check(const std::string& name, bool pass, const std::string& expected, const std::string& actual) {
    checks_.push_back({name, pass, expected, actual});
  }
  void set_elapsed(double s) { elapsed_ = s; }

  /// Folds a sub-report in, prefixing its names.
  void merge(const Report& sub, const std::string& prefix) {
    input(sub.digest_src_);
    for (const auto& [n, v] : sub.results_) results_.emplace_back(prefix + n, v);
    for (auto c : sub.checks_) {
      c.name = prefix + c.name;
      checks_.push_back(std::move(c));
    }
  }

  bool ok() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
  }
  const std::vector<std::pair<std::string, ojson>>& results() const { return results_; }

  ojson to_json() const {
    ojson out;
    out["command"] = command_;
    out["inputsDigest"] = fnv1a64(digest_src_);
    out["results"] = ojson::array();
    for (const auto& [n, v] : results_) out["results"].push_back({{"name", n}, {"value", v}});
    out["checks"] = ojson::array();
    for (const auto& c : checks_)
      out["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
    out["ok"] = ok();
    if (elapsed_) out["elapsed"] = *elapsed_;
    return out;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "command: " << command_ << "\n";
    os << "inputs: " << fnv1a64(digest_src_) << "\n";
    for (const auto& [n, v] : results_) os << n << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& c : checks_) {
      os << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL");
      if (!c.pass) os << " (expected " << c.expected << ", actual " << c.actual << ")";
      os << "\n";
    }
    if (!checks_.empty()) os << (ok() ? "all checks passed" : std::to_string(failures()) + " check(s) failed") << "\n";
    return os.str();
  }

 private:
  std::string command_;
  std::string digest_src_;
  std::vector<std::pair<std::string, ojson>> results_;
  std::vector<Check> checks_;
  std::optional<double> elapsed_;
};

// ---------------------------------------------------------------------------
// Inputs

fs::path data_dir() {
  if (const char* env = std::getenv("MOTIVIC_DATA_DIR")) return env;
  return MOTIVIC_DATA_DIR;
}

/// Existing path as given, else relative to the bundled data directory.
fs::path resolve(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p)) return p;
  if (p.is_relative() && fs::exists(data_dir() / p)) return data_dir() / p;
  throw Error(ErrorCode::InvalidArgument, "cannot open " + name);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
}

/// Document with optional key=value overrides of its generator parameters.
json load_json_doc(Report& rep, const std::string& file, const std::vector<std::string>& params) {
  std::string text = read_file(resolve(file));
  rep.input(text);
  json doc = parse_json(text);
  for (const auto& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got " + kv);
    if (!doc.contains("generator")) throw UsageError("--param needs a document with a generator");
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key != "d" && key != "k") throw UsageError("--param: unknown parameter " + key);
    try {
      doc["generator"][key] = std::stoi(value);
    } catch (const std::exception&) {
      throw UsageError("--param " + key + ": not an integer: " + value);
    }
    rep.input(kv);
  }
  return doc;
}

AffineSystem load_poly_file(Report& rep, const std::string& file, int vars) {
  std::string text = read_file(resolve(file));
  rep.input(text);
  return parse_poly_file(text, vars);
}

std::optional<std::string> expect_of(const json& expect, const std::string& key) {
  if (!expect.is_object() || !expect.contains(key)) return std::nullopt;
  const auto& v = expect[key];
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// ---------------------------------------------------------------------------
// Comparisons

void check_ratfunc(Report& rep, const std::string& name, const std::optional<std::string>& expected,
                   const RatFunc& actual, const std::string& shown) {
  if (!expected) return;
  rep.check(name, ratfunc_equal(parse_ratfunc(*expected), actual), *expected, shown);
}

void check_rational(Report& rep, const std::string& name, const std::optional<std::string>& expected,
                    const Rational& actual) {
  if (!expected) return;
  rep.check(name, parse_rational(*expected) == actual, *expected, to_string(actual));
}

/// Expected text "value + sym1 + sym2": terms naming a known symbol are
/// matched symbolically, the rest is parsed as a rational function.
void check_symbolic(Report& rep, const std::string& name, const std::optional<std::string>& expected,
                    const RatFunc& value, const std::vector<std::string>& symbols, const std::string& shown) {
  if (!expected) return;
  std::vector<std::string> want_syms;
  std::string rest;
  std::size_t start = 0;
  while (start <= expected->size()) {
    auto at = expected->find(" + ", start);
    std::string part = expected->substr(start, at == std::string::npos ? std::string::npos : at - start);
    if (std::find(symbols.begin(), symbols.end(), part) != symbols.end() || part.find('\\') != std::string::npos)
      want_syms.push_back(part);
    else
      rest += (rest.empty() ? "" : " + ") + part;
    if (at == std::string::npos) break;
    start = at + 3;
  }
  auto have = symbols;
  std::sort(have.begin(), have.end());
  std::sort(want_syms.begin(), want_syms.end());
  bool pass = have == want_syms && ratfunc_equal(rest.empty() ? RatFunc(0) : parse_ratfunc(rest), value);
  rep.check(name, pass, *expected, shown);
}

std::vector<Rational> rationals_of(const json& arr) {
  std::vector<Rational> out;
  for (const auto& v : arr) out.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
  return out;
}

ojson strings_of(const std::vector<Rational>& v) {
  ojson out = ojson::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

// ---------------------------------------------------------------------------
// Document commands

struct ContactCheck {
  std::optional<AffineSystem> sys;
  std::vector<std::uint64_t> primes;
  int levels = 4;
  CountOptions counting;
};

void cmd_zeta(Report& rep, const ResolutionData& d, const ContactCheck& cc = {}) {
  TermSum z = motivic_zeta(d);
  RatFunc zf = to_ratfunc(z);
  RatFunc j = J_from_Z(z, d.ambient_dim);
  rep.result("zeta", zf.to_string());
  rep.result("J", j.to_string());
  check_ratfunc(rep, "zeta", expect_of(d.expect, "zeta"), zf, zf.to_string());
  check_ratfunc(rep, "J", expect_of(d.expect, "J"), j, j.to_string());
  if (!cc.sys) return;
  if (cc.sys->numVars != d.ambient_dim)
    throw UsageError("--poly-file has " + std::to_string(cc.sys->numVars) + " variables, document has ambient_dim " +
                     std::to_string(d.ambient_dim));
  auto s = series_expand(z, static_cast<std::size_t>(cc.levels));
  for (auto p : cc.primes)
    for (int n = 0; n <= cc.levels; ++n) {
      Rational predicted = s[n].evaluate({{"L", Rational(p)}}) *
                           Rational(boost::multiprecision::pow(Integer(p), static_cast<unsigned>(d.ambient_dim * n)));
      Integer counted = count_contact(*cc.sys, p, n, cc.counting);
      rep.check("contact p=" + std::to_string(p) + " n=" + std::to_string(n), predicted == Rational(counted),
                to_string(predicted), counted.str());
    }
}

PoleList ztop_poles(const ResolutionData& d, const RatFunc& zt) { return extract_poles(zt, candidate_poles(d)); }

void cmd_ztop(Report& rep, const ResolutionData& d) {
  RatFunc zt = z_top(d);
  PoleList pl = ztop_poles(d, zt);
  std::string shown = factored_display(zt, pl);
  std::vector<Rational> locs;
  ojson orders = ojson::array();
  for (const auto& p : pl.poles) {
    locs.push_back(p.location);
    orders.push_back(p.multiplicity);
  }
  rep.result("ztop", shown);
  rep.result("poles", strings_of(locs));
  rep.result("poleOrders", orders);
  check_ratfunc(rep, "ztop", expect_of(d.expect, "ztop"), zt, shown);
  if (d.expect.contains("poles")) {
    auto want = rationals_of(d.expect["poles"]);
    std::sort(want.begin(), want.end());
    rep.check("poles", want == locs, strings_of(want).dump(), strings_of(locs).dump());
  }
}

void cmd_monodromy(Report& rep, const ResolutionData& d, std::vector<Rational> exponents) {
  if (exponents.empty() && d.eigenvalues) exponents = *d.eigenvalues;
  if (exponents.empty()) throw UsageError("no eigenvalue exponents: pass --eigenvalue or use a document with them");
  RatFunc zt = z_top(d);
  auto verdicts = monodromy_check(ztop_poles(d, zt), exponents);
  ojson out = ojson::array();
  std::string allowed = strings_of(exponents).dump();
  for (const auto& v : verdicts) {
    out.push_back({{"pole", to_string(v.pole.location)}, {"exponent", to_string(v.exponent)}, {"satisfied", v.satisfied}});
    rep.check("monodromy s=" + to_string(v.pole.location), v.satisfied, "frac(s) in " + allowed,
              "frac(s) = " + to_string(v.exponent));
  }
  rep.result("exponents", strings_of(exponents));
  rep.result("verdicts", out);
}

void cmd_volume(Report& rep, const ResolutionData& d) {
  TermSum v = motivic_volume(d);
  RatFunc vf = to_ratfunc(v);
  Rational chi = specialize_chi(v);
  rep.result("volume", vf.to_string());
  rep.result("chi", to_string(chi));
  check_ratfunc(rep, "volume", expect_of(d.expect, "volume"), vf, vf.to_string());
  check_rational(rep, "chi", expect_of(d.expect, "chi"), chi);
}

void cmd_nc(Report& rep, const ResolutionData& d) {
  RatFunc v = to_ratfunc(nc_integral(d));
  rep.result("nc-integral", v.to_string());
  check_ratfunc(rep, "nc-integral", expect_of(d.expect, "nc-integral"), v, v.to_string());
}

void cmd_classify(Report& rep, const ResolutionData& d) {
  auto a = log_discrepancies(d);
  std::string c = to_string(classify(a));
  rep.result("logDiscrepancies", strings_of(a));
  rep.result("class", c);
  if (auto e = expect_of(d.expect, "class")) rep.check("class", *e == c, *e, c);
}

/// Closed forms for the Fermat family, term by term.
void fermat_checks(Report& rep, const ResolutionData& d, int dd, int k, const StringyInvariants& inv) {
  const auto* e = d.stratum({"E"});
  const Rational a(dd + 1 - k);
  rep.check("fermat est", inv.eSt == e->chi / a, to_string(e->chi / a), to_string(inv.eSt));
  if (!e->classL) return;
  MPoly L = MPoly::var("L"), E = *e->classL, one(1);
  auto powL = [&](int n) { return L.pow(static_cast<unsigned>(n)); };
  RatFunc calE = RatFunc((L - one) * E) + RatFunc(E * (L - one), powL(dd + 1 - k) - one);
  RatFunc got = to_ratfunc(*inv.calESt);
  rep.check("fermat calEst", ratfunc_equal(got, calE), calE.to_string(), got.to_string());
  RatFunc mu = RatFunc((L - one) * E) + RatFunc(E * (L - one), powL(dd) - one);
  RatFunc vol = to_ratfunc(motivic_volume(fermat_resolution(dd, k, Context::volume)));
  rep.check("fermat volume", ratfunc_equal(vol, mu), mu.to_string(), vol.to_string());
  // [X] = [Y] - [E] + [point]
  MPoly y;
  for (const auto& s : d.strata) y += *s.classL;
  MPoly x = y - E + one, want = (L - one) * E + one;
  rep.check("fermat class", x == want, want.to_string(), x.to_string());
}

void cmd_stringy(Report& rep, const ResolutionData& d, const json& doc) {
  cmd_classify(rep, d);
  auto inv = stringy_invariants(d);
  std::string est = with_symbols(to_string(inv.eSt), inv.eStSymbols);
  rep.result("est", est);
  check_symbolic(rep, "est", expect_of(d.expect, "est"), RatFunc(inv.eSt), inv.eStSymbols, est);
  if (inv.ESt) {
    RatFunc v = to_ratfunc(*inv.ESt);
    rep.result("Est", v.to_string());
    check_ratfunc(rep, "Est", expect_of(d.expect, "Est"), v, v.to_string());
    rep.check("chain E->e", specialize_chi(*inv.ESt) == inv.eSt, to_string(inv.eSt), to_string(specialize_chi(*inv.ESt)));
  }
  if (inv.calESt) {
    RatFunc v = to_ratfunc(*inv.calESt);
    rep.result("calEst", v.to_string());
    check_ratfunc(rep, "calEst", expect_of(d.expect, "calEst"), v, v.to_string());
    auto via_hodge = specialize_chi(specialize_hodge(*inv.calESt));
    rep.check("chain calE->E->e", via_hodge == inv.eSt, to_string(inv.eSt), to_string(via_hodge));
  }
  if (doc.contains("generator")) fermat_checks(rep, d, doc["generator"]["d"].get<int>(), doc["generator"]["k"].get<int>(), inv);
}

void cmd_stringy_zeta(Report& rep, const ResolutionData& d) {
  auto sv = stringy_zeta(d);
  std::vector<Rational> cands = candidate_poles(d);
  for (const auto& c : d.components)
    if (*c.N != 0 && *c.nu == 0) cands.push_back(0);
  std::string shown = with_symbols(factored_display(sv.value, extract_poles(sv.value, cands)), sv.symbols);
  rep.result("zst", shown);
  check_symbolic(rep, "zst", expect_of(d.expect, "zst"), sv.value, sv.symbols, shown);
  auto lim = limit_s1(sv.value);
  if (auto* r = std::get_if<Rational>(&lim)) {
    std::string l = with_symbols(to_string(*r), sv.symbols);
    rep.result("limit", l);
    check_symbolic(rep, "limit", expect_of(d.expect, "limit"), RatFunc(*r), sv.symbols, l);
  } else {
    std::string l = "pole of order " + std::to_string(std::get<PoleAtOne>(lim).multiplicity) + " at s = 1";
    rep.result("limit", l);
    if (auto e = expect_of(d.expect, "limit")) rep.check("limit", false, *e, l);
  }
}

void cmd_seifert(Report& rep, const json& doc) {
  if (!doc.contains("seifert")) throw Error(ErrorCode::SchemaError, "document has no \"seifert\" object");
  SeifertData sd = seifert_from_json(doc["seifert"]);
  auto r = seifert_e_st(sd);
  std::vector<std::string> syms;
  if (sd.chiSymbol) syms.push_back(*sd.chiSymbol);
  std::string est = with_symbols(to_string(r.eSt), syms);
  rep.result("a", to_string(r.a));
  rep.result("est", est);
  rep.result("dDerived", r.dDerived.str());
  json expect = doc.value("expect", json::object());
  check_rational(rep, "a", expect_of(expect, "a"), r.a);
  check_symbolic(rep, "est", expect_of(expect, "est"), RatFunc(r.eSt), syms, est);
  if (auto e = expect_of(expect, "d"))
    rep.check("d", parse_integer(*e) == abs(r.dDerived), *e, abs(Integer(r.dDerived)).str());
}

void cmd_identity(Report& rep, const ResolutionData& d, std::optional<std::string> lhs_text) {
  if (!lhs_text) lhs_text = expect_of(d.expect, "class");
  if (!lhs_text) throw UsageError("--lhs is required when the document has no expected class");
  MPoly lhs = parse_poly(*lhs_text);
  auto r = birational_identity(d, lhs);
  Rational lhs_chi = lhs.evaluate({{"L", Rational(1)}});
  rep.result("sum", r.sum.to_string());
  rep.result("chiSum", to_string(r.chiSum));
  rep.check("class identity", r.classHolds, lhs.to_string(), r.sum.to_string());
  rep.check("chi identity", r.chiHolds, to_string(lhs_chi), to_string(r.chiSum));
}

// ---------------------------------------------------------------------------
// Counting commands

CountMode parse_mode(const std::string& m) {
  if (m == "congruence") return CountMode::congruence;
  if (m == "jet") return CountMode::jet_points;
  if (m == "contact") return CountMode::contact;
  throw UsageError("--mode must be congruence, jet or contact");
}

Integer count_one(const AffineSystem& sys, CountMode mode, std::uint64_t p, int n, const CountOptions& opt) {
  switch (mode) {
    case CountMode::congruence: return count_congruence(sys, p, n, opt);
    case CountMode::jet_points: return count_jet_points(jet_equations(sys, n), p, opt);
    case CountMode::contact: return count_contact(sys, p, n, opt);
  }
  return 0;
}

struct SeriesSource {
  std::vector<std::string> counts;
  std::string poly_file;
  std::string mode = "congruence";
  std::uint64_t prime = 0;
  int levels = -1;
  int vars = 0;
  CountOptions counting;
};

CountSeries series_from(Report& rep, const SeriesSource& src) {
  if (src.prime == 0) throw UsageError("--prime is required");
  CountSeries cs{src.prime, parse_mode(src.mode), {}};
  if (!src.counts.empty()) {
    for (const auto& c : src.counts) {
      cs.counts.push_back(parse_integer(c));
      rep.input(c);
    }
    return cs;
  }
  if (src.poly_file.empty() || src.levels < 0) throw UsageError("give --counts, or --poly-file with --levels");
  auto sys = load_poly_file(rep, src.poly_file, src.vars);
  for (int n = 0; n <= src.levels; ++n) cs.counts.push_back(count_one(sys, cs.mode, cs.p, n, src.counting));
  return cs;
}

ojson counts_json(const CountSeries& cs) {
  ojson out = ojson::array();
  for (const auto& c : cs.counts) out.push_back(c.str());
  return out;
}

DenominatorShape parse_shape(const std::vector<std::string>& specs) {
  DenominatorShape s;
  for (const auto& f : specs) {
    auto colon = f.find(':');
    if (colon == std::string::npos) throw UsageError("--shape expects a:b for (1 - p^a T^b), got " + f);
    try {
      s.factors.emplace_back(std::stoi(f.substr(0, colon)), std::stoi(f.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("--shape: bad factor " + f);
    }
  }
  if (s.factors.empty()) throw UsageError("--shape is required");
  return s;
}

/// Closed form in T; a free p is replaced by the prime.
RatFunc closed_form(const std::string& text, std::uint64_t p) {
  return parse_ratfunc(text).substitute("p", RatFunc(Rational(p)));
}

// ---------------------------------------------------------------------------
// selftest

Report selftest(const fs::path& dir) {
  Report all("selftest");
  std::vector<fs::path> docs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") docs.push_back(entry.path());
  std::sort(docs.begin(), docs.end());
  for (const auto& path : docs) {
    const std::string tag = path.filename().string() + "/";
    Report rep("doc");
    json doc = load_json_doc(rep, path.string(), {});
    if (doc.contains("seifert")) {
      cmd_seifert(rep, doc);
      all.merge(rep, tag);
      continue;
    }
    ResolutionData d = load_resolution_doc(doc);
    switch (d.context) {
      case Context::zeta:
        cmd_zeta(rep, d);
        cmd_ztop(rep, d);
        if (d.eigenvalues) cmd_monodromy(rep, d, {});
        break;
      case Context::volume: cmd_volume(rep, d); break;
      case Context::nc_integral: cmd_nc(rep, d); break;
      case Context::stringy: cmd_stringy(rep, d, doc); break;
      case Context::stringy_zeta: cmd_stringy_zeta(rep, d); break;
      case Context::birational_identity: cmd_identity(rep, d, std::nullopt); break;
    }
    all.merge(rep, tag);
  }

  // Fermat family sweep over the log terminal range.
  for (int dd = 1; dd <= 3; ++dd)
    for (int k = 1; k <= dd; ++k) {
      Report rep("fermat");
      json doc = {{"context", "stringy"}, {"generator", {{"family", "fermat"}, {"d", dd}, {"k", k}}}};
      cmd_stringy(rep, load_resolution_doc(doc), doc);
      all.merge(rep, "fermat d=" + std::to_string(dd) + " k=" + std::to_string(k) + "/");
    }

  // Counting oracles on the bundled polynomial files.
  Report rep("counting");
  auto sys = [&](const char* name) { return load_poly_file(rep, (dir / name).string(), 0); };
  const auto parabola = sys("parabola.poly"), node = sys("node.poly"), cusp = sys("cusp.poly");
  auto P = [](std::uint64_t p, int e) { return boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e)); };
  for (std::uint64_t p : {2u, 3u})
    for (int n = 0; n <= 3; ++n) {
      std::string at = " p=" + std::to_string(p) + " n=" + std::to_string(n);
      Integer f1 = count_congruence(parabola, p, n), f2 = count_congruence(node, p, n);
      Integer w1 = P(p, n + 1), w2 = (n + 2) * P(p, n + 1) - (n + 1) * P(p, n);
      rep.check("F parabola" + at, f1 == w1, w1.str(), f1.str());
      rep.check("F node" + at, f2 == w2, w2.str(), f2.str());
      Integer jn = count_jet_points(jet_equations(node, n), p);
      rep.check("jets node" + at, jn == w2, w2.str(), jn.str());
    }
  {
    CountSeries cs{3, CountMode::congruence, {}};
    for (int n = 0; n <= 7; ++n) cs.counts.push_back(count_congruence(node, 3, n));
    auto fit = fit_rational(assemble_series(cs), DenominatorShape{{{1, 1}, {1, 1}}}, 3);
    auto* f = std::get_if<RatFunc>(&fit);
    RatFunc want = parse_ratfunc("(5-9*T)/(1-3*T)^2");
    rep.check("fit node p=3", f && ratfunc_equal(*f, want), want.to_string(), f ? f->to_string() : "no fit");
  }
  all.merge(rep, "counting/");
  {
    Report zr("zeta");
    std::string text = read_file(dir / "cusp.json");
    zr.input(text);
    ContactCheck cc{cusp, {2, 3}, 4, {}};
    cmd_zeta(zr, load_resolution(text), cc);
    all.merge(zr, "cusp contact/");
  }
  return all;
}

// ---------------------------------------------------------------------------

void emit(const Report& rep, bool as_json) {
  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact motivic and stringy invariants from resolution data, with brute-force counting oracles"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.fallthrough();

  // shared option holders
  std::string input, poly_file;
  std::vector<std::string> params;
  int level = 0, vars = 0;
  std::string mode = "congruence";
  std::uint64_t prime = 0;
  std::uint64_t budget = default_budget();
  unsigned threads = 1;
  SeriesSource src;
  std::vector<std::string> shape, eigen, a_values;
  std::optional<int> numerator_degree;
  std::string closed, lhs, expect_count;
  std::vector<std::uint64_t> primes;
  int contact_levels = 4;
  std::string selftest_dir;

  auto doc_cmd = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", input, "Resolution document (JSON)")->required();
    return sub;
  };
  auto counting_flags = [&](CLI::App* sub) {
    sub->add_option("--budget", budget, "Maximum enumeration size");
    sub->add_option("--threads", threads, "Worker threads (0 = hardware)");
  };
  auto series_flags = [&](CLI::App* sub) {
    sub->add_option("--counts", src.counts, "Coefficients F_0,F_1,...")->delimiter(',');
    sub->add_option("--poly-file", src.poly_file, "Polynomial file to count on");
    sub->add_option("--mode", src.mode, "congruence | jet | contact");
    sub->add_option("--prime", src.prime, "Prime p")->required();
    sub->add_option("--levels", src.levels, "Count levels 0..n");
    sub->add_option("--vars", src.vars, "Number of ambient variables");
    counting_flags(sub);
  };

  auto* jets = app.add_subcommand("jets", "Equations of the n-jet space");
  jets->add_option("--poly-file", poly_file, "Polynomial file")->required();
  jets->add_option("--level", level, "Jet level n")->required()->check(CLI::NonNegativeNumber);
  jets->add_option("--vars", vars, "Number of ambient variables");

  auto* count = app.add_subcommand("count", "Brute-force point count");
  count->add_option("--mode", mode, "congruence | jet | contact")->required()->check(
      CLI::IsMember({"congruence", "jet", "contact"}));
  count->add_option("--poly-file", poly_file, "Polynomial file")->required();
  count->add_option("--prime", prime, "Prime p")->required();
  count->add_option("--level", level, "Level n")->required()->check(CLI::NonNegativeNumber);
  count->add_option("--vars", vars, "Number of ambient variables");
  count->add_option("--expect", expect_count, "Expected count");
  counting_flags(count);

  auto* fit = app.add_subcommand("fit", "Fit N(T)/prod(1 - p^a T^b) to a count series");
  series_flags(fit);
  fit->add_option("--shape", shape, "Denominator factor a:b, repeatable")->required();
  fit->add_option("--numerator-degree", numerator_degree, "Numerator degree (default deg D - 1)");
  fit->add_option("--expect", closed, "Expected closed form in T (p allowed)");

  auto* verify = app.add_subcommand("verify", "Compare a count series with a closed form");
  series_flags(verify);
  verify->add_option("--closed-form", closed, "Rational function of T (p allowed)")->required();

  auto* zeta = doc_cmd("zeta", "Motivic zeta function Z(T) and J(T)");
  zeta->add_option("--poly-file", poly_file, "Compare coefficients with contact counts of this polynomial");
  zeta->add_option("--prime", primes, "Primes for the contact comparison");
  zeta->add_option("--levels", contact_levels, "Highest level for the contact comparison");
  counting_flags(zeta);
  auto* ztop = doc_cmd("ztop", "Topological zeta function and its poles");
  auto* volume = doc_cmd("volume", "Motivic volume of the arc space");
  auto* nc = doc_cmd("nc-integral", "Integral of L^(-ord D) for normal crossings D");
  auto* stringy = doc_cmd("stringy", "Stringy invariants e_st, E_st and the class-level version");
  stringy->add_option("--param", params, "Generator override key=value, repeatable");
  auto* szeta = doc_cmd("stringy-zeta", "Stringy zeta function and its value at s = 1");
  auto* seifert = doc_cmd("seifert", "Log discrepancy and e_st from Seifert data");
  auto* classify_cmd = app.add_subcommand("classify", "Singularity class from log discrepancies");
  classify_cmd->add_option("--input", input, "Resolution document (JSON)");
  classify_cmd->add_option("--a", a_values, "Log discrepancies")->delimiter(',');
  classify_cmd->add_option("--param", params, "Generator override key=value, repeatable");
  auto* mono = doc_cmd("check-monodromy", "Monodromy check of the topological zeta poles");
  mono->add_option("--eigenvalue", eigen, "Exponent q of exp(2 pi i q), repeatable")->delimiter(',');
  auto* ident = doc_cmd("identity", "Class and Euler characteristic identity for a proper birational map");
  ident->add_option("--lhs", lhs, "Class of the target variety");
  auto* self = app.add_subcommand("selftest", "Run every bundled golden example");
  self->add_option("--data-dir", selftest_dir, "Directory with bundled documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const bool as_json = format == "json";
  const auto start = std::chrono::steady_clock::now();
  CLI::App* used = app.get_subcommands().front();
  Report rep(used->get_name());
  try {
    CountOptions copt{budget, threads};
    src.counting = copt;
    auto load = [&] {
      json doc = load_json_doc(rep, input, params);
      return std::pair{load_resolution_doc(doc), doc};
    };
    if (used == jets) {
      auto sys = load_poly_file(rep, poly_file, vars);
      auto js = jet_equations(sys, level);
      rep.result("level", js.level);
      ojson vs = ojson::array();
      for (const auto& v : js.variables()) vs.push_back(v);
      rep.result("variables", vs);
      for (std::size_t k = 0; k < js.groups.size(); ++k) {
        ojson g = ojson::array();
        for (const auto& eq : js.groups[k]) g.push_back(eq.to_string());
        rep.result("t^" + std::to_string(k), g);
      }
    } else if (used == count) {
      auto sys = load_poly_file(rep, poly_file, vars);
      Integer c = count_one(sys, parse_mode(mode), prime, level, copt);
      rep.result("mode", mode);
      rep.result("p", prime);
      rep.result("n", level);
      rep.result("count", c.str());
      if (!expect_count.empty()) rep.check("count", parse_integer(expect_count) == c, expect_count, c.str());
      rep.set_elapsed(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      if (!as_json) {
        std::cout << c.str() << "\n";
        return rep.ok() ? 0 : 1;
      }
    } else if (used == fit) {
      auto cs = series_from(rep, src);
      rep.result("counts", counts_json(cs));
      auto r = fit_rational(assemble_series(cs), parse_shape(shape), cs.p, numerator_degree);
      if (auto* f = std::get_if<RatFunc>(&r)) {
        rep.result("fit", f->to_string());
        rep.check("fit found", true, "a fit", f->to_string());
        if (!closed.empty()) rep.check("fit", ratfunc_equal(*f, closed_form(closed, cs.p)), closed, f->to_string());
      } else {
        const auto& nf = std::get<NoFit>(r);
        rep.result("fit", {{"noFitAt", nf.index}, {"residual", to_string(nf.residual)}});
        rep.check("fit found", false, "a fit", "residual " + to_string(nf.residual) + " at T^" + std::to_string(nf.index));
      }
    } else if (used == verify) {
      auto cs = series_from(rep, src);
      rep.input(closed);
      rep.result("counts", counts_json(cs));
      RatFunc f = closed_form(closed, cs.p);
      bool okv = verify_rational(assemble_series(cs), f);
      rep.result("verified", okv);
      std::string got;
      auto t = taylor(f, "T", cs.counts.empty() ? 0 : cs.counts.size() - 1);
      for (std::size_t i = 0; i < cs.counts.size(); ++i) got += (i ? "," : "") + t[i].to_string();
      std::string want;
      for (std::size_t i = 0; i < cs.counts.size(); ++i) want += (i ? "," : "") + cs.counts[i].str();
      rep.check("verify", okv, want, got);
    } else if (used == zeta) {
      auto [d, doc] = load();
      ContactCheck cc;
      if (!poly_file.empty()) {
        cc.sys = load_poly_file(rep, poly_file, d.ambient_dim);
        cc.primes = primes.empty() ? std::vector<std::uint64_t>{2} : primes;
        cc.levels = contact_levels;
        cc.counting = copt;
      }
      cmd_zeta(rep, d, cc);
    } else if (used == ztop) {
      cmd_ztop(rep, load().first);
    } else if (used == volume) {
      cmd_volume(rep, load().first);
    } else if (used == nc) {
      cmd_nc(rep, load().first);
    } else if (used == stringy) {
      auto [d, doc] = load();
      cmd_stringy(rep, d, doc);
    } else if (used == szeta) {
      cmd_stringy_zeta(rep, load().first);
    } else if (used == seifert) {
      cmd_seifert(rep, load_json_doc(rep, input, {}));
    } else if (used == classify_cmd) {
      if (!input.empty()) {
        cmd_classify(rep, load().first);
      } else if (!a_values.empty()) {
        std::vector<Rational> a;
        for (const auto& s : a_values) {
          a.push_back(parse_rational(s));
          rep.input(s);
        }
        rep.result("logDiscrepancies", strings_of(a));
        rep.result("class", to_string(classify(a)));
      } else {
        throw UsageError("classify needs --input or --a");
      }
    } else if (used == mono) {
      std::vector<Rational> ex;
      for (const auto& s : eigen) {
        ex.push_back(parse_rational(s));
        rep.input(s);
      }
      cmd_monodromy(rep, load().first, ex);
    } else if (used == ident) {
      cmd_identity(rep, load().first, lhs.empty() ? std::nullopt : std::optional<std::string>(lhs));
    } else if (used == self) {
      rep = selftest(selftest_dir.empty() ? data_dir() : fs::path(selftest_dir));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (as_json)
      std::cout << ojson{{"command", used->get_name()},
                         {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}
                       .dump(2)
                << "\n";
    return 3;
  }
  rep.set_elapsed(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  emit(rep, as_json);
  return rep.ok() ? 0 : 1;
}
