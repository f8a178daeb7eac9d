#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "motivic/invariants.hpp"
#include "oracles.hpp"

using namespace motivic;

namespace {

ResolutionData load(const std::string& name) {
  std::ifstream in(std::string(MOTIVIC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_resolution(ss.str());
}

RatFunc F(const char* s) { return parse_ratfunc(s); }
MPoly P(const char* s) { return parse_poly(s); }

// Z_top(s0) recomputed from the class-level Z(T): put T = L^(-s0), reduce in
// L, and evaluate at L = 1. Independent of the per-factor 1/(nu + sN) rule.
Rational ztop_via_class_limit(const RatFunc& z, int s0) {
  RatFunc t = RatFunc(MPoly(1), MPoly::var("L").pow(static_cast<unsigned>(s0)));
  RatFunc g = ratfunc_reduce(z.substitute("T", t));
  EXPECT_TRUE(g.is_univariate_in("L"));
  return g.evaluate({{"L", Rational(1)}});
}

}  // namespace

TEST(NcIntegral, LineWithDivisor) {
  for (int N = 1; N <= 4; ++N) {
    std::string doc = R"({"context":"nc-integral","ambient_dim":1,"components":[{"id":"E","N":)" +
                      std::to_string(N) + R"(}],"strata":[{"subset":[],"classL":"L - 1"},{"subset":["E"],"classL":"1"}]})";
    RatFunc v = to_ratfunc(nc_integral(load_resolution(doc)));
    MPoly L = MPoly::var("L");
    RatFunc closed = RatFunc(L - MPoly(1)) + RatFunc(L - MPoly(1), L.pow(1 + N) - MPoly(1));
    EXPECT_TRUE(ratfunc_equal(v, closed));
    // Oracle: sum over i of mu(ord_t x = i) L^(-iN) with mu = (L-1)/L^i, summed in closed form.
    RatFunc geometric(L.pow(1 + N) * (L - MPoly(1)), L.pow(1 + N) - MPoly(1));
    EXPECT_TRUE(ratfunc_equal(v, geometric));
  }
  auto trivial = load_resolution(R"({"context":"nc-integral","ambient_dim":2,"components":[],
                                     "strata":[{"subset":[],"classL":"L^2"}]})");
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(nc_integral(trivial)), F("L^2")));
}

TEST(Volume, Examples) {
  auto cusp = motivic_volume(load("cusp-volume.json"));
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(cusp), F("L^2/(L+1)")));
  EXPECT_EQ(specialize_chi(cusp), Rational(1, 2));
  auto a1 = motivic_volume(load("a1-volume.json"));
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(a1), F("L^2")));
  auto node = motivic_volume(load("node-volume.json"));
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(node), F("2*L")));
  EXPECT_EQ(specialize_chi(node), 2);
}

TEST(Zeta, Line) {
  auto data = load("line.json");
  auto z = motivic_zeta(data);
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(z), F("L*(L-1)/(L-T)")));
  // [X_n] L^(-n) = (L-1)/L^n for n >= 1
  auto s = series_expand(z, 5);
  for (int n = 1; n <= 5; ++n)
    EXPECT_TRUE(ratfunc_equal(s[n], RatFunc(P("L-1"), MPoly::var("L").pow(static_cast<unsigned>(n)))));
  EXPECT_TRUE(ratfunc_equal(J_from_Z(z, 1), F("1/(1-T)")));
}

TEST(Zeta, Cusp) {
  auto data = load("cusp.json");
  auto z = motivic_zeta(data);
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(z), F("L^2*(L-1)*(L^5-L^3*T+L^3*T^2-T^5)/((L^5-T^6)*(L-T))")));
  RatFunc j = J_from_Z(z, 2);
  EXPECT_TRUE(ratfunc_equal(j, F("L*(1+(L-1)*T+(L^6-L^5)*T^5-L^7*T^6)/((1-L^7*T^6)*(1-L*T))")));
  // Assembly cancels down to the two expected denominator factors.
  EXPECT_TRUE(ratfunc_equal(RatFunc(j.denom()), F("(1-L^7*T^6)*(1-L*T)")) ||
              ratfunc_equal(RatFunc(j.denom()), F("-(1-L^7*T^6)*(1-L*T)")));
}

TEST(Zeta, JetClassesFromJ) {
  // [L_n(X)] for the cusp: L, 2L^2-L, ...; node: (n+2)L^(n+1)-(n+1)L^n.
  auto cj = taylor(J_from_Z(motivic_zeta(load("cusp.json")), 2), "T", 3);
  EXPECT_TRUE(ratfunc_equal(cj[0], F("L")));
  EXPECT_TRUE(ratfunc_equal(cj[1], F("2*L^2-L")));
  auto nj = taylor(J_from_Z(motivic_zeta(load("node.json")), 2), "T", 3);
  for (int n = 0; n <= 3; ++n) {
    MPoly L = MPoly::var("L");
    MPoly want = MPoly(n + 2) * L.pow(static_cast<unsigned>(n + 1)) - MPoly(n + 1) * L.pow(static_cast<unsigned>(n));
    EXPECT_TRUE(ratfunc_equal(nj[n], RatFunc(want))) << n;
  }
  EXPECT_TRUE(ratfunc_equal(J_from_Z(motivic_zeta(load("node.json")), 2), F("(2*L-1-L^2*T)/(1-L*T)^2")));
}

TEST(Zeta, EmptyComponentList) {
  auto data = load_resolution(R"({"context":"zeta","ambient_dim":2,"components":[],
                                  "strata":[{"subset":[],"classL":"L^2"}]})");
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(motivic_zeta(data)), F("L^2")));
}

TEST(Zeta, ValueAtInverseLIsNcIntegral) {
  // Z(L^-1) with factors (nu, N) equals the integral with factors (nu + N, 0).
  auto data = load("cusp.json");
  auto z = motivic_zeta(data);
  RatFunc at = to_ratfunc(z).substitute("T", F("1/L"));
  std::vector<Term> terms;
  for (const auto& t : z.terms()) {
    Term u{t.coeff, {}};
    for (const auto& f : t.factors) u.factors.push_back({f.nu + f.N, 0});
    terms.push_back(u);
  }
  EXPECT_TRUE(ratfunc_equal(at, to_ratfunc(TermSum(Level::class_l, terms))));
}

TEST(Ztop, Examples) {
  EXPECT_EQ(z_top(load("cusp.json")), F("(5+4*s)/((5+6*s)*(1+s))"));
  EXPECT_EQ(z_top(load("line.json")), F("1/(1+s)"));
  auto zero = load_resolution(R"({"context":"zeta","ambient_dim":2,"components":[{"id":"E","N":2,"nu":3}],
                                  "strata":[{"subset":[],"chi":"0"},{"subset":["E"],"chi":"0"}]})");
  EXPECT_TRUE(z_top(zero).is_zero());
}

TEST(Ztop, CoherentWithClassLevel) {
  for (const char* name : {"cusp.json", "line.json", "node.json"}) {
    auto data = load(name);
    RatFunc zt = z_top(data);
    RatFunc z = to_ratfunc(motivic_zeta(data));
    for (int s0 = 1; s0 <= 4; ++s0)
      EXPECT_EQ(ztop_via_class_limit(z, s0), zt.evaluate({{"s", Rational(s0)}})) << name << " s=" << s0;
  }
}

TEST(Ztop, PolesAndMonodromy) {
  auto data = load("cusp.json");
  auto poles = extract_poles(z_top(data), candidate_poles(data));
  ASSERT_EQ(poles.poles.size(), 2u);
  EXPECT_EQ(poles.poles[0].location, -1);
  EXPECT_EQ(poles.poles[0].multiplicity, 1);
  EXPECT_EQ(poles.poles[1].location, Rational(-5, 6));
  EXPECT_EQ(poles.poles[1].multiplicity, 1);
  EXPECT_EQ(poles.residual_degree, 0);
  auto verdicts = monodromy_check(poles, *data.eigenvalues);
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_TRUE(verdicts[0].satisfied);
  EXPECT_TRUE(verdicts[1].satisfied);
  EXPECT_EQ(verdicts[1].exponent, Rational(1, 6));
  EXPECT_EQ(factored_display(z_top(data), poles), "(5+4s)/((5+6s)(1+s))");
}

TEST(Ztop, PoleEdgeCases) {
  EXPECT_TRUE(extract_poles(F("3"), {Rational(-1)}).poles.empty());
  auto sq = extract_poles(F("1/(1+s)^2"), {Rational(-1)});
  ASSERT_EQ(sq.poles.size(), 1u);
  EXPECT_EQ(sq.poles[0].multiplicity, 2);
  EXPECT_EQ(factored_display(F("1/(1+s)^2"), sq), "1/(1+s)^2");
  EXPECT_TRUE(monodromy_check(PoleList{}, {}).empty());
  PoleList half{{{Rational(-1, 2), 1}}, 0};
  EXPECT_FALSE(monodromy_check(half, {Rational(0)})[0].satisfied);
}

TEST(Ztop, PoleContainmentAndDegreeBound) {
  for (const char* name : {"cusp.json", "line.json", "node.json"}) {
    auto data = load(name);
    RatFunc zt = z_top(data);
    auto poles = extract_poles(zt, candidate_poles(data));
    EXPECT_EQ(poles.residual_degree, 0) << name;
    if (data.stratum({})->chi == 0 && !data.components.empty())
      EXPECT_LT(zt.numer().total_degree(), zt.denom().total_degree()) << name;
  }
}

TEST(Stringy, A1) {
  auto inv = stringy_invariants(load("a1-stringy.json"));
  EXPECT_EQ(inv.eSt, 2);
  ASSERT_TRUE(inv.calESt.has_value());
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(*inv.calESt), F("L^2+L")));
  ASSERT_TRUE(inv.ESt.has_value());
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(*inv.ESt), F("u^2*v^2+u*v")));
}

TEST(Stringy, QuotientFractionalA) {
  auto inv = stringy_invariants(load("quotient-stringy.json"));
  EXPECT_EQ(inv.eSt, 3);
  ASSERT_TRUE(inv.ESt.has_value());
  EXPECT_EQ(inv.ESt->root_index(), 3);
  // Class-level value in w with L = w^3: (w^6-1) + (w^3+1)(w^3-1)/(w^2-1).
  RatFunc v = to_ratfunc(*inv.calESt);
  EXPECT_TRUE(ratfunc_equal(v, F("(w^6-1) + (w^3+1)*(w^3-1)/(w^2-1)")));
}

TEST(Stringy, Nonsingular) {
  auto data = load_resolution(R"({"context":"stringy","ambient_dim":2,"components":[],
                                  "strata":[{"subset":[],"classL":"L^2 + L + 1"}]})");
  auto inv = stringy_invariants(data);
  EXPECT_TRUE(ratfunc_equal(to_ratfunc(*inv.calESt), F("L^2+L+1")));
  EXPECT_EQ(inv.eSt, 3);
}

TEST(Stringy, NotLogTerminal) {
  EXPECT_THROW(stringy_invariants(fermat_resolution(2, 3, Context::stringy)), Error);
  try {
    stringy_invariants(fermat_resolution(2, 4, Context::stringy));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLogTerminal);
  }
}

TEST(Stringy, FermatTermwise) {
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= d; ++k) {
      auto data = fermat_resolution(d, k, Context::stringy);
      const auto* e = data.stratum({"E"});
      if (!e->classL) continue;
      auto inv = stringy_invariants(data);
      MPoly E = *e->classL, L = MPoly::var("L");
      RatFunc want = RatFunc((L - MPoly(1)) * E) +
                     RatFunc(E * (L - MPoly(1)), L.pow(static_cast<unsigned>(d + 1 - k)) - MPoly(1));
      EXPECT_TRUE(ratfunc_equal(to_ratfunc(*inv.calESt), want)) << d << " " << k;
      auto vol = motivic_volume(fermat_resolution(d, k, Context::volume));
      RatFunc want_vol = RatFunc((L - MPoly(1)) * E) + RatFunc(E * (L - MPoly(1)), L.pow(static_cast<unsigned>(d)) - MPoly(1));
      EXPECT_TRUE(ratfunc_equal(to_ratfunc(vol), want_vol)) << d << " " << k;
    }
}

TEST(Stringy, ChainCommutesOnDocuments) {
  for (const char* name : {"a1-stringy.json", "quotient-stringy.json"}) {
    auto inv = stringy_invariants(load(name));
    EXPECT_EQ(specialize_chi(*inv.calESt), inv.eSt) << name;
    EXPECT_EQ(specialize_chi(*inv.ESt), inv.eSt) << name;
  }
}

TEST(StringyZeta, Threefold) {
  auto z = stringy_zeta(load("threefold.json"));
  EXPECT_TRUE(ratfunc_equal(z.value, F("13/s")));
  ASSERT_EQ(z.symbols.size(), 1u);
  EXPECT_EQ(z.symbols[0], "chi(X\\P)");
  auto lim = limit_s1(z.value);
  ASSERT_TRUE(std::holds_alternative<Rational>(lim));
  EXPECT_EQ(std::get<Rational>(lim), 13);
}

TEST(StringyZeta, LogTerminalIsConstantEst) {
  auto data = load("log-terminal-zeta.json");
  auto z = stringy_zeta(data);
  EXPECT_TRUE(z.value.is_polynomial());
  EXPECT_FALSE(z.value.numer().has_variable("s"));
  EXPECT_EQ(z.value, RatFunc(stringy_invariants(data).eSt));
  EXPECT_EQ(z.value, RatFunc(2));
}

TEST(StringyZeta, Limits) {
  auto pole = limit_s1(F("1/(1-s)"));
  ASSERT_TRUE(std::holds_alternative<PoleAtOne>(pole));
  EXPECT_EQ(std::get<PoleAtOne>(pole).multiplicity, 1);
  EXPECT_EQ(std::get<Rational>(limit_s1(F("7/2"))), Rational(7, 2));
  auto zero = load_resolution(R"({"context":"stringy-zeta","ambient_dim":3,"components":[{"id":"E","N":-1,"nu":"1"}],
                                  "strata":[{"subset":[],"chi":"0"},{"subset":["E"],"chi":"0"}]})");
  EXPECT_TRUE(stringy_zeta(zero).value.is_zero());
}

TEST(Seifert, Triangle) {
  for (auto [n1, n2, n3] : {std::tuple{2, 3, 7}, std::tuple{2, 4, 5}, std::tuple{3, 3, 4}}) {
    SeifertData sd;
    sd.kappa = 1;
    sd.chains = {{n1, 1}, {n2, 1}, {n3, 1}};
    auto r = seifert_e_st(sd);
    EXPECT_EQ(r.a, -1);
    EXPECT_EQ(r.eSt, 1 - (n1 + n2 + n3));
    EXPECT_EQ(abs(r.dDerived), oracle::abs_det(oracle::star_matrix(sd)));
  }
  SeifertData e8;
  e8.chains = {{2, 1}, {3, 1}, {7, 1}};
  EXPECT_EQ(seifert_e_st(e8).dDerived, 1);
  e8.d = Integer(1);
  EXPECT_NO_THROW(seifert_e_st(e8));
  e8.d = Integer(2);
  EXPECT_THROW(seifert_e_st(e8), Error);
}

TEST(Seifert, NoChains) {
  SeifertData sd;
  sd.chiComplement = 5;
  auto r = seifert_e_st(sd);
  EXPECT_EQ(r.a, 2);
  EXPECT_EQ(r.eSt, 6);
  EXPECT_EQ(r.dDerived, 1);
}

TEST(Seifert, DeterminantOracleLongerChains) {
  std::vector<std::vector<std::pair<int, int>>> cases = {{{5, 2}, {3, 1}, {7, 3}}, {{4, 3}, {5, 3}}, {{7, 2}, {9, 4}, {2, 1}, {3, 2}}};
  for (int kappa = 2; kappa <= 4; ++kappa)
    for (const auto& c : cases) {
      SeifertData sd;
      sd.kappa = kappa;
      for (auto [n, q] : c) sd.chains.push_back({n, q});
      try {
        auto r = seifert_e_st(sd);
        EXPECT_EQ(abs(r.dDerived), oracle::abs_det(oracle::star_matrix(sd)));
        if (r.dDerived > 0) {
          Integer prod = 1;
          for (auto [n, q] : c) prod *= n;
          Rational second = Rational(prod, r.dDerived) * (r.a * (Rational(kappa) - [&] {
                              Rational s = 0;
                              for (auto [n, q] : c) s += Rational(q, n);
                              return s;
                            }()));
          EXPECT_EQ(second, r.a);
        }
      } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::StrictlyLogCanonical || e.code() == ErrorCode::DegenerateDenominator);
      }
    }
}

TEST(Seifert, Errors) {
  SeifertData slc;  // g = 0, four chains (2,1): numerator 2 - 4 + 2 = 0
  slc.kappa = 3;
  slc.chains = {{2, 1}, {2, 1}, {2, 1}, {2, 1}};
  try {
    seifert_e_st(slc);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StrictlyLogCanonical);
  }
  SeifertData degenerate;  // 1 - 1/2 - 1/3 - 1/6 = 0
  degenerate.chains = {{2, 1}, {3, 1}, {6, 1}};
  try {
    seifert_e_st(degenerate);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDenominator);
  }
}

TEST(Birational, BlowUp) {
  auto r = birational_identity(load("blowup-identity.json"), P("L^2"));
  EXPECT_TRUE(r.classHolds);
  EXPECT_TRUE(r.chiHolds);
  EXPECT_EQ(r.chiSum, 1);
  EXPECT_FALSE(birational_identity(load("blowup-identity.json"), P("L^2+1")).classHolds);
  auto id = load_resolution(R"({"context":"birational-identity","ambient_dim":2,"components":[],
                                "strata":[{"subset":[],"classL":"L^2"}]})");
  EXPECT_TRUE(birational_identity(id, P("L^2")).classHolds);
}
