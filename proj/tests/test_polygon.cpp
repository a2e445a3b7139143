#include <gtest/gtest.h>

#include "phislope/polygon.hpp"
#include "phislope/random.hpp"

using namespace phislope;

namespace {

SlopePolygon P(const std::string& s) { return SlopePolygon::parse(s); }

}  // namespace

TEST(SlopePolygon, NormalizesAndPrints) {
  SlopePolygon a({{Rational(1, 2), 1}, {Rational(0), 2}, {Rational(2, 4), 1}});
  EXPECT_EQ(a.to_string(), "2 x 0/1, 2 x 1/2");
  EXPECT_EQ(a.rank(), 4);
  EXPECT_EQ(a.total(), Rational(1));
  EXPECT_EQ(a.value_at(3), Rational(1, 2));
  EXPECT_EQ(P("2 x 0/1, 2 x 1/2"), a);
  EXPECT_EQ(P(a.to_string()).to_string(), a.to_string());
  EXPECT_THROW(P("2 x 1"), Error);
  EXPECT_THROW(P("2 x 1/0"), Error);
  EXPECT_THROW(P("0 x 1/2"), Error);
  EXPECT_EQ(a.vertices().back(), (std::pair<std::int64_t, Rational>{4, Rational(1)}));
}

TEST(NewtonPolygon, Trivial) {
  auto R = RingParams::make_default(5, 2, 8);
  EXPECT_EQ(newton_polygon(SigmaMat::identity(R, 3, 1)), P("3 x 0/1"));
  auto p = WittElem::from_int(R, 5);
  EXPECT_EQ(newton_polygon(SigmaMat(identity_matrix(R, 3).scaled(p), 1)), P("3 x 1/1"));
}

TEST(NewtonPolygon, CyclicSupersingularBlock) {
  auto R = RingParams::make_default(5, 2, 6);
  // Linearization is p I, read in phi^2 units.
  EXPECT_EQ(newton_polygon(SigmaMat(int_matrix(R, 2, 2, {0, 5, 1, 0}), 1)), P("2 x 1/2"));
  // Twist 0: slopes of the matrix itself, charpoly X^2 - p.
  EXPECT_EQ(newton_polygon(SigmaMat(int_matrix(R, 2, 2, {0, 5, 1, 0}), 0)), P("2 x 1/2"));
}

TEST(NewtonPolygon, PrecisionExhausted) {
  auto R = RingParams::make_default(5, 2, 3);
  // p^2 * identity: linearization is p^4, beyond N = 3.
  auto p2 = WittElem::from_int(R, 25);
  try {
    newton_polygon(SigmaMat(identity_matrix(R, 2).scaled(p2), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precision_exhausted);
  }
  // X^2 - p: the X coefficient is 0 mod p^N, but the hull sits below N there.
  auto r1 = RingParams::make_default(5, 1, 2);
  EXPECT_EQ(newton_polygon(SigmaMat(int_matrix(r1, 2, 2, {0, 5, 1, 0}), 0)), P("2 x 1/2"));
}

TEST(NewtonPolygon, FromCharpolyHullInexactPoint) {
  auto R = RingParams::make_default(5, 1, 3);
  auto e = [&](i64 v) { return WittElem::from_int(R, v); };
  // X^3: constant term vanishes mod p^N.
  EXPECT_THROW(newton_polygon_of_charpoly({e(0), e(0), e(0), e(1)}), Error);
  // X^3 + p^2 X + p: points (0,0), (2,2), (3,1) and an unknown point at x = 1 above 1/3.
  EXPECT_EQ(newton_polygon_of_charpoly({e(5), e(25), e(0), e(1)}), P("3 x 1/3"));
}

TEST(HodgePolygon, Examples) {
  EXPECT_EQ(hodge_polygon_from_filtration({0, 0, 0, 1}), P("3 x 0/1, 1 x 1/1"));
  EXPECT_EQ(hodge_polygon_from_filtration({0, 0}), P("2 x 0/1"));
  EXPECT_EQ(hodge_polygon_from_filtration({0, 1, 0, 1, 0, 1}), P("3 x 0/1, 3 x 1/1"));
  auto R = RingParams::make_default(5, 2, 4);
  EXPECT_EQ(hodge_polygon_from_matrix(int_matrix(R, 2, 2, {1, 0, 0, 5})), P("1 x 0/1, 1 x 1/1"));
  EXPECT_EQ(hodge_polygon_from_matrix(identity_matrix(R, 3)), P("3 x 0/1"));
}

TEST(Dominates, Examples) {
  for (int r = 1; r <= 8; ++r) {
    std::vector<int> jumps(2 * r, 0);
    jumps.back() = 1;
    auto hodge = hodge_polygon_from_filtration(jumps);
    SlopePolygon ss({{Rational(1, 2 * r), 2 * r}});
    SlopePolygon ord({{Rational(0), r}, {Rational(1, r), r}});
    EXPECT_TRUE(dominates(ss, hodge).dominates);
    EXPECT_TRUE(dominates(ord, hodge).dominates);
  }
  auto rep = dominates(P("2 x 0/1"), P("1 x 0/1, 1 x 1/1"));
  EXPECT_FALSE(rep.dominates);
  EXPECT_FALSE(rep.endpoints_equal);
  auto below = dominates(P("1 x 0/1, 1 x 1/1"), P("2 x 1/2"));
  EXPECT_FALSE(below.dominates);
  EXPECT_EQ(below.first_violation, 1);
  EXPECT_THROW(dominates(P("1 x 0/1"), P("2 x 0/1")), Error);
}

TEST(SlopeArithmetic, Examples) {
  auto a = P("1 x 0/1, 1 x 1/1");
  EXPECT_EQ(tensor_slopes(a, a), P("1 x 0/1, 2 x 1/1, 1 x 2/1"));
  EXPECT_EQ(wedge2_slopes(P("2 x 1/2")), P("1 x 1/1"));
  EXPECT_EQ(sym2_slopes(P("2 x 1/2")), P("3 x 1/1"));
  EXPECT_EQ(sym2_slopes(a), P("1 x 0/1, 1 x 1/1, 1 x 2/1"));
  for (int r = 1; r <= 6; ++r) {
    auto base = SlopePolygon({{Rational(0), 1}, {Rational(1, r), 1}});
    std::vector<SlopeRun> want;
    std::int64_t binom = 1;
    for (int i = 0; i <= r; ++i) {
      want.push_back({Rational(i, r), binom});
      binom = binom * (r - i) / (i + 1);
    }
    EXPECT_EQ(tensor_power_slopes(base, r), SlopePolygon(want));
  }
}

TEST(SlopeArithmetic, TensorIsCommutativeAndAssociative) {
  Rng rng(1);
  std::uniform_int_distribution<int> num(0, 6), den(1, 4), mult(1, 3), len(1, 3);
  auto rand_poly = [&] {
    std::vector<SlopeRun> runs;
    for (int i = len(rng); i > 0; --i) runs.push_back({Rational(num(rng), den(rng)), mult(rng)});
    return SlopePolygon(runs);
  };
  for (int i = 0; i < 100; ++i) {
    auto a = rand_poly(), b = rand_poly(), c = rand_poly();
    EXPECT_EQ(tensor_slopes(a, b), tensor_slopes(b, a));
    EXPECT_EQ(tensor_slopes(tensor_slopes(a, b), c), tensor_slopes(a, tensor_slopes(b, c)));
    EXPECT_EQ(tensor_slopes(a, a).rank(), sym2_slopes(a).rank() + wedge2_slopes(a).rank());
  }
}

TEST(NewtonPolygon, Invariants) {
  auto R = RingParams::make_default(5, 2, 12);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 4;
    SigmaMat f(random_integral(R, n, 1, rng), 1);
    auto np = newton_polygon(f);
    auto vd = determinant(f.entries()).valuation();
    ASSERT_TRUE(vd.exact);
    EXPECT_EQ(np.total(), Rational(vd.value));
    EXPECT_EQ(np.rank(), static_cast<std::int64_t>(n));
    auto g = random_invertible(R, n, rng);
    EXPECT_EQ(newton_polygon(sigma_conjugate(f, g)), np);
    EXPECT_TRUE(dominates(np, hodge_polygon_from_matrix(f)).dominates);
  }
}
