#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "phislope/display.hpp"

using namespace phislope;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::usage;
}

Ring ring52() { return RingParams::make_default(5, 2, 6); }

DisplayEntries ints(const Ring& R, std::initializer_list<i64> v) {
  std::vector<WittElem> e;
  for (i64 x : v) e.push_back(WittElem::from_int(R, x));
  return {e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]};
}

// Leibniz determinant over series.
WittSeries series_det(const SMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  WittSeries total(m(0, 0).ring(), m(0, 0).precision_t());
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    WittSeries term = WittSeries::constant(WittElem::one(m(0, 0).ring()), m(0, 0).precision_t());
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    total = inv % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

WittSeries lin(const WittElem& c0, const WittElem& c1, int j, int m) {
  return WittSeries::constant(c0, m) + WittSeries::monomial(c0.ring(), m, j, c1);
}

}  // namespace

TEST(BuildDisplay, Layout) {
  auto R = ring52();
  auto dd = build_display(ints(R, {2, 3, 1, 1, 1, 0, 1, 1}));
  auto m = dd.matrix();
  // [[0,c1,d1,0],[b1,0,0,a1],[b2,0,0,a2],[0,c2,d2,0]]
  EXPECT_EQ(m, int_matrix(R, 4, 4, {0, 1, 1, 0, 1, 0, 0, 2, 1, 0, 0, 3, 0, 0, 1, 0}));
  EXPECT_EQ(dd.component(0), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(dd.component(1), (std::vector<std::size_t>{1, 2}));
}

TEST(BuildDisplay, Rejections) {
  auto R = ring52();
  EXPECT_EQ(kind_of([&] { build_display(ints(R, {0, 0, 0, 0, 0, 0, 0, 0})); }), ErrorKind::not_invertible);
  // a1=d1=0, a2=c2=1, b1=d2=1, b2=c1=0: det[[a1,b1],[a2,b2]] = -1 but det[[c1,d1],[c2,d2]] = 0.
  EXPECT_EQ(kind_of([&] { build_display(ints(R, {0, 1, 1, 0, 0, 1, 0, 1})); }), ErrorKind::not_invertible);
  // Same with c1 = 1: both determinants are -1 and 1.
  auto ok = build_display(ints(R, {0, 1, 1, 0, 1, 1, 0, 1}));
  EXPECT_EQ(ok.det_ab(), WittElem::from_int(R, -1));
  EXPECT_EQ(ok.det_cd(), WittElem::one(R));
  EXPECT_FALSE(ok.supersingular());
  EXPECT_THROW(build_display(ints(RingParams::make_default(3, 2, 4), {1, 0, 0, 1, 1, 0, 0, 1})), Error);
  EXPECT_THROW(build_display(ints(RingParams::make_default(5, 1, 4), {1, 0, 0, 1, 1, 0, 0, 1})), Error);
  EXPECT_THROW(build_display(ints(RingParams::make_default(5, 3, 4), {1, 0, 0, 1, 1, 0, 0, 1})), Error);
}

TEST(BuildDisplay, SupersingularFlag) {
  auto R = ring52();
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    auto u = random_unit(R, rng);
    // b1 = 1, b2 = 0, c1 = p u, d1 = 0 leaves det[[c1,d1],[c2,d2]] = p u d2, never a unit.
    DisplayEntries e = ints(R, {0, 1, 1, 0, 0, 1, 0, 1});
    e.c1 = WittElem::from_int(R, 5) * u;
    EXPECT_EQ(kind_of([&] { build_display(e); }), ErrorKind::not_invertible);
    // With d1 = 1, c2 = 1, d2 = 0 the flag is set and the display is valid.
    e.d1 = WittElem::one(R);
    e.d2 = WittElem(R);
    EXPECT_TRUE(build_display(e).supersingular());
  }
}

TEST(PhiIterate, EntriesMatchExpandedProduct) {
  auto R = RingParams::make_default(5, 2, 6);
  Rng rng(4);
  const int M = 30;
  const WittElem p = WittElem::from_int(R, 5);
  for (int trial = 0; trial < 20; ++trial) {
    auto dd = random_display(R, trial % 2 == 0, rng);
    const auto& e = dd.entries();
    auto phi = phi_iterate(deform(dd, M));
    auto s = [](const WittElem& x) { return x.sigma(1); };
    const WittSeries zero(R, M);
    EXPECT_EQ(phi(0, 0), lin(s(e.b1) * e.c1 + s(e.b2) * e.d1, s(e.b1) * e.c2 + s(e.b2) * e.d2, 1, M));
    EXPECT_EQ(phi(0, 3), lin(p * (s(e.a1) * e.c1 + s(e.a2) * e.d1), p * (s(e.a1) * e.c2 + s(e.a2) * e.d2), 1, M));
    EXPECT_EQ(phi(1, 1), lin(e.b1 * s(e.c1) + p * e.a1 * s(e.c2), e.b1 * s(e.c2), 5, M));
    EXPECT_EQ(phi(1, 2), lin(e.b1 * s(e.d1) + p * e.a1 * s(e.d2), e.b1 * s(e.d2), 5, M));
    EXPECT_EQ(phi(2, 1), lin(e.b2 * s(e.c1) + p * e.a2 * s(e.c2), e.b2 * s(e.c2), 5, M));
    EXPECT_EQ(phi(2, 2), lin(e.b2 * s(e.d1) + p * e.a2 * s(e.d2), e.b2 * s(e.d2), 5, M));
    EXPECT_EQ(phi(3, 0), WittSeries::constant(s(e.b1) * e.c2 + s(e.b2) * e.d2, M));
    EXPECT_EQ(phi(3, 3), WittSeries::constant(p * (s(e.a1) * e.c2 + s(e.a2) * e.d2), M));
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}})
      EXPECT_EQ(phi(i, j), zero) << i << "," << j;
  }
}

TEST(PhiIterate, DeterminantIsMultiplicative) {
  auto R = RingParams::make_default(5, 2, 6);
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto def = deform(random_display(R, true, rng), 12);
    auto d1 = series_det(def.m1);
    EXPECT_EQ(series_det(phi_iterate(def)), d1 * sigma(d1, 1));
  }
}

TEST(Orders, RandomDisplays) {
  auto R = RingParams::make_default(5, 2, 6);
  Rng rng(6);
  const int M = default_precision_t(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto ss = random_display(R, true, rng);
    auto def = deform(ss, M);
    EXPECT_EQ(hasse_witt_order(def), std::optional<int>(1));
    EXPECT_TRUE(ss.u1().is_unit());
    auto rep = sym2_det_order(def);
    EXPECT_EQ(rep.order, std::optional<int>(2));
    ASSERT_TRUE(rep.leading);
    EXPECT_TRUE(rep.leading->is_unit());
    EXPECT_TRUE(rep.leading->residue_equal(sym2_leading_closed_form(ss)));
    for (int j : rep.support) EXPECT_TRUE(j == 2 || j == 5 || j == 25) << j;

    auto gen = random_display(R, false, rng);
    EXPECT_EQ(hasse_witt_order(deform(gen, M)), std::optional<int>(0));
    EXPECT_THROW(sym2_det_order(deform(gen, M)), Error);
  }
}

TEST(Orders, HigherR) {
  for (int r : {3, 4}) {
    auto R = RingParams::make_default(5, r, r + 2);
    Rng rng(static_cast<std::uint64_t>(r));
    for (int trial = 0; trial < 5; ++trial) {
      auto ss = random_display(R, true, rng);
      auto def = deform(ss, 8);
      EXPECT_EQ(hasse_witt_order(def), std::optional<int>(1));
      EXPECT_EQ(sym2_det_order(def).order, std::optional<int>(2));
      EXPECT_EQ(hasse_witt_order(deform(random_display(R, false, rng), 8)), std::optional<int>(0));
    }
  }
}

TEST(Orders, ShortPrecision) {
  auto R = ring52();
  Rng rng(7);
  auto def = deform(random_display(R, true, rng), 2);
  EXPECT_EQ(hasse_witt_order(def), std::optional<int>(1));
  EXPECT_EQ(sym2_det_order(def).order, std::nullopt);
}

TEST(DrinfeldLocus, EveryPrimitiveTeichmuellerElement) {
  auto R = RingParams::make_default(5, 2, 4);
  Rng rng(8);
  auto dd = random_display(R, true, rng);
  int count = 0;
  for (i64 c0 = 0; c0 < 5; ++c0)
    for (i64 c1 = 1; c1 < 5; ++c1) {
      auto xi = WittElem(R, {c0, c1}).teichmuller();
      auto loc = drinfeld_locus(dd, xi);
      EXPECT_EQ(loc.surviving, (std::vector<int>{0}));
      EXPECT_EQ(loc.forced, (std::vector<int>{1, 2}));
      EXPECT_TRUE(loc.unit_coefficients);
      ++count;
    }
  EXPECT_EQ(count, 20);
}

TEST(DrinfeldLocus, Degenerate) {
  auto R = RingParams::make_default(5, 2, 4);
  Rng rng(9);
  auto dd = random_display(R, true, rng);
  EXPECT_EQ(kind_of([&] { drinfeld_locus(dd, WittElem::from_int(R, 2)); }), ErrorKind::constraint_degenerate);
  // Not in Z_p, but congruent to 3 mod p.
  EXPECT_EQ(kind_of([&] { drinfeld_locus(dd, WittElem(R, {3, 5})); }), ErrorKind::constraint_degenerate);
}

TEST(DrinfeldLocus, HigherR) {
  auto R = RingParams::make_default(5, 3, 4);
  Rng rng(10);
  auto dd = random_display(R, true, rng);
  auto loc = drinfeld_locus(dd, WittElem::generator(R).teichmuller());
  EXPECT_EQ(loc.surviving, (std::vector<int>{0}));
  EXPECT_EQ(loc.forced, (std::vector<int>{1, 2, 3, 4}));
}
