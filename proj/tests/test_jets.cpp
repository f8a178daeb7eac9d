#include <gtest/gtest.h>

#include "motivic/jets.hpp"

using namespace motivic;

namespace {

// Oracle: substitute the full polynomial x_j(t) and read coefficients off
// the untruncated product.
std::vector<std::vector<MPoly>> expand_directly(const AffineSystem& sys, int n) {
  std::vector<std::vector<MPoly>> groups(n + 1);
  for (const auto& f : sys.polys) {
    MPoly g = f;
    for (int j = 1; j <= sys.numVars; ++j) {
      MPoly xt;
      for (int k = 0; k <= n; ++k) xt += MPoly::var(jet_var(j, k)) * MPoly::var("t", k);
      g = g.substitute(coordinate_name(j), xt);
    }
    auto c = g.coefficients_in("t");
    for (int k = 0; k <= n; ++k) groups[k].push_back(k < static_cast<int>(c.size()) ? c[k] : MPoly());
  }
  return groups;
}

AffineSystem sys_of(std::initializer_list<const char*> polys) {
  std::vector<MPoly> ps;
  for (const char* p : polys) ps.push_back(parse_poly(p));
  return make_affine_system(ps);
}

}  // namespace

TEST(JetEquations, CuspLevelOneAndTwo) {
  auto cusp = sys_of({"x2^2 - x1^3"});
  auto j1 = jet_equations(cusp, 1);
  ASSERT_EQ(j1.groups.size(), 2u);
  EXPECT_EQ(j1.groups[0][0], parse_poly("a2_0^2 - a1_0^3"));
  EXPECT_EQ(j1.groups[1][0], parse_poly("2*a2_0*a2_1 - 3*a1_0^2*a1_1"));
  auto j2 = jet_equations(cusp, 2);
  EXPECT_EQ(j2.groups[2][0], parse_poly("a2_1^2 + 2*a2_0*a2_2 - 3*a1_0*a1_1^2 - 3*a1_0^2*a1_2"));
  EXPECT_EQ(j2.variables().size(), 6u);
  EXPECT_EQ(j2.variables().front(), "a1_0");
  EXPECT_EQ(j2.variables().back(), "a2_2");
}

TEST(JetEquations, LinearCoordinate) {
  auto line = sys_of({"x1"});
  auto js = jet_equations(line, 3);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(js.groups[k][0], MPoly::var(jet_var(1, k)));
}

TEST(JetEquations, MatchesDirectExpansion) {
  for (auto sys : {sys_of({"x2^2 - x1^3"}), sys_of({"x1*x2"}), sys_of({"x2 - x1^2", "x1*x3 - 2"}),
                   sys_of({"x1^2 + x2^2 + x3^2 - 3*x1*x2*x3 + 5"})})
    for (int n = 0; n <= 4; ++n) {
      auto js = jet_equations(sys, n);
      EXPECT_EQ(js.groups, expand_directly(sys, n)) << n;
    }
}

TEST(JetEquations, Triangular) {
  // group k only involves jet coordinates of index <= k
  auto sys = sys_of({"x2^2 - x1^3", "x1*x2 + x2^3"});
  auto js = jet_equations(sys, 5);
  for (int k = 0; k <= 5; ++k)
    for (const auto& eq : js.groups[k])
      for (const auto& v : eq.variables()) {
        auto under = v.find('_');
        EXPECT_LE(std::stoi(v.substr(under + 1)), k) << v;
      }
}

TEST(JetEquations, TruncationCoherence) {
  for (auto sys : {sys_of({"x2^2 - x1^3"}), sys_of({"x1*x2"}), sys_of({"x2 - x1^2"})})
    for (int n = 0; n <= 4; ++n) {
      auto lo = jet_equations(sys, n);
      auto hi = jet_equations(sys, n + 1);
      for (int k = 0; k <= n; ++k) EXPECT_EQ(lo.groups[k], hi.groups[k]);
    }
}

TEST(TruncateCompose, Examples) {
  std::map<std::string, TruncSeries<MPoly>, std::less<>> s;
  s.emplace("x", TruncSeries<MPoly>("t", {MPoly(1), MPoly(1), MPoly(0), MPoly(0)}));  // 1 + t
  auto r = truncate_compose(parse_poly("x^3"), s, 3);
  EXPECT_EQ(r.coeffs, (std::vector<MPoly>{1, 3, 3, 1}));
  r = truncate_compose(parse_poly("x^3"), s, 1);
  EXPECT_EQ(r.coeffs, (std::vector<MPoly>{1, 3}));
  s.emplace("y", TruncSeries<MPoly>("t", {MPoly(0), MPoly(2)}));  // 2t, order 1
  EXPECT_THROW(truncate_compose(parse_poly("x*y"), s, 3), Error);
  try {
    truncate_compose(parse_poly("x*y"), s, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderMismatch);
  }
  r = truncate_compose(parse_poly("x*y"), s, 1);
  EXPECT_EQ(r.coeffs, (std::vector<MPoly>{0, 2}));
}

TEST(PolyFile, ParseAndReject) {
  auto sys = parse_poly_file("# cusp\nx2^2 - x1^3\n\n");
  EXPECT_EQ(sys.numVars, 2);
  ASSERT_EQ(sys.polys.size(), 1u);
  EXPECT_EQ(parse_poly_file("x1\n", 3).numVars, 3);
  auto code = [](const std::string& text) {
    try {
      parse_poly_file(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code("x1/2 + x2"), ErrorCode::NonIntegerCoefficients);
  EXPECT_EQ(code("y + 1"), ErrorCode::ParseError);
  EXPECT_EQ(code("# nothing\n"), ErrorCode::ParseError);
  EXPECT_THROW(make_affine_system({MPoly()}), Error);
}
