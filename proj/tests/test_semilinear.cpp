#include <gtest/gtest.h>

#include "phislope/random.hpp"
#include "phislope/semilinear.hpp"

using namespace phislope;

namespace {

// Polynomials in X over W_N, low-first.
using XPoly = std::vector<WittElem>;

XPoly xp_mul(const XPoly& a, const XPoly& b) {
  XPoly out(a.size() + b.size() - 1, WittElem(a.front().ring()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

XPoly xp_add(XPoly a, const XPoly& b, bool subtract) {
  if (a.size() < b.size()) a.resize(b.size(), WittElem(b.front().ring()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = subtract ? a[i] - b[i] : a[i] + b[i];
  return a;
}

// det(X I - M) by cofactor expansion along the first row.
XPoly cofactor_det(const std::vector<std::vector<XPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  XPoly total{WittElem(m[0][0].front().ring())};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<XPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<XPoly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    total = xp_add(total, xp_mul(m[0][c], cofactor_det(minor)), c % 2 == 1);
  }
  return total;
}

std::vector<WittElem> cofactor_charpoly(const WMatrix& a) {
  const Ring& ring = a(0, 0).ring();
  const std::size_t n = a.rows();
  std::vector<std::vector<XPoly>> m(n, std::vector<XPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = {-a(i, j)};
      if (i == j) m[i][j].push_back(WittElem::one(ring));
    }
  auto out = cofactor_det(m);
  out.resize(n + 1, WittElem(ring));
  return out;
}

Ring ring() { return RingParams::make(5, 2, 4, {2, 4, 1}); }

}  // namespace

TEST(Compose, IdentityAndTwist) {
  auto R = ring();
  Rng rng(1);
  SigmaMat g(random_matrix(R, 3, 3, rng), 1);
  EXPECT_EQ(compose(SigmaMat::identity(R, 3, 0), g), g);
  SigmaMat acc = g;
  for (int i = 1; i < 2; ++i) acc = compose(acc, g);
  EXPECT_EQ(acc.twist(), 0);
  EXPECT_THROW(compose(SigmaMat(random_matrix(R, 3, 2, rng), 0), g), Error);
}

TEST(Compose, IsAssociative) {
  auto R = RingParams::make_default(7, 3, 5);
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    SigmaMat a(random_matrix(R, 3, 3, rng), i % 3), b(random_matrix(R, 3, 3, rng), 1), c(random_matrix(R, 3, 3, rng), 2);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Compose, TwoStepsGiveMSigmaM) {
  auto R = ring();
  Rng rng(3);
  auto m = random_matrix(R, 4, 4, rng);
  SigmaMat f(m, 1);
  EXPECT_EQ(compose(f, f).entries(), m * sigma(m, 1));
  EXPECT_EQ(linearize(f).entries(), m * sigma(m, 1));
}

TEST(Linearize, Examples) {
  auto r1 = RingParams::make_default(5, 1, 4);
  Rng rng(4);
  auto m = random_matrix(r1, 3, 3, rng);
  EXPECT_EQ(linearize(SigmaMat(m, 1)).entries(), m);

  auto R = ring();
  auto p = WittElem::from_int(R, 5);
  EXPECT_EQ(linearize(SigmaMat(identity_matrix(R, 3).scaled(p), 1)).entries(), identity_matrix(R, 3).scaled(p * p));
  auto cyc = int_matrix(R, 2, 2, {0, 5, 1, 0});
  EXPECT_EQ(linearize(SigmaMat(cyc, 1)).entries(), int_matrix(R, 2, 2, {5, 0, 0, 5}));
}

TEST(Linearize, ConjugationEquivariance) {
  auto R = RingParams::make_default(5, 3, 5);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    SigmaMat f(random_matrix(R, 3, 3, rng), 1);
    auto g = random_invertible(R, 3, rng);
    EXPECT_EQ(linearize(sigma_conjugate(f, g)).entries(), inverse(g) * linearize(f).entries() * g);
  }
}

TEST(Linearize, DeterminantValuationScales) {
  auto R = ring();
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    auto m = random_integral(R, 3, 1, rng);
    auto v = determinant(m).valuation();
    auto vl = determinant(linearize(SigmaMat(m, 1)).entries()).valuation();
    if (v.exact && 2 * v.value < 4) EXPECT_EQ(vl.value, 2 * v.value);
  }
}

TEST(Charpoly, DiagonalAndCompanion) {
  auto R = ring();
  auto d = int_matrix(R, 3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 7});
  auto c = charpoly(d);
  // (X-2)(X-3)(X-7) = X^3 - 12 X^2 + 41 X - 42
  std::vector<WittElem> want{WittElem::from_int(R, -42), WittElem::from_int(R, 41), WittElem::from_int(R, -12),
                             WittElem::one(R)};
  EXPECT_EQ(c, want);
  auto comp = int_matrix(R, 2, 2, {0, 5, 1, 0});
  EXPECT_EQ(charpoly(comp), (std::vector<WittElem>{WittElem::from_int(R, -5), WittElem(R), WittElem::one(R)}));
  EXPECT_THROW(charpoly(SigmaMat(comp, 1)), Error);
}

TEST(Charpoly, MatchesCofactorExpansion) {
  auto R = ring();
  Rng rng(7);
  for (int n = 1; n <= 5; ++n)
    for (int i = 0; i < 10; ++i) {
      auto m = random_matrix(R, n, n, rng);
      EXPECT_EQ(charpoly(m), cofactor_charpoly(m));
    }
}

TEST(Charpoly, ConstantTermIsSignedDeterminant) {
  auto R = ring();
  Rng rng(8);
  for (int n = 1; n <= 4; ++n) {
    auto m = random_matrix(R, n, n, rng);
    auto c = charpoly(m);
    auto det = cofactor_charpoly(m).front();  // (-1)^n det
    EXPECT_EQ(c.front(), det);
    EXPECT_EQ(n % 2 ? -determinant(m) : determinant(m), c.front());
  }
}

TEST(Inverse, RoundTripAndFailure) {
  auto R = ring();
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    auto g = random_invertible(R, 4, rng);
    EXPECT_EQ(g * inverse(g), identity_matrix(R, 4));
  }
  try {
    inverse(int_matrix(R, 2, 2, {1, 5, 1, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_invertible);
  }
}

TEST(SmithNormalForm, Examples) {
  auto R = ring();
  EXPECT_EQ(smith_normal_form(identity_matrix(R, 3)).diag_valuations, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(smith_normal_form(int_matrix(R, 2, 2, {1, 0, 0, 5})).diag_valuations, (std::vector<int>{0, 1}));
  // [[p, 1], [p^2, 2p]]: v(det) = 2, min entry valuation 0.
  EXPECT_EQ(smith_normal_form(int_matrix(R, 2, 2, {5, 1, 25, 10})).diag_valuations, (std::vector<int>{0, 2}));
}

TEST(SmithNormalForm, SingularMatrixExhaustsPrecision) {
  // [[p, 1], [p^2, p]] has determinant 0, so the second divisor is invisible at any N.
  auto R = ring();
  try {
    smith_normal_form(int_matrix(R, 2, 2, {5, 1, 25, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precision_exhausted);
  }
}

TEST(SmithNormalForm, Properties) {
  auto R = RingParams::make_default(5, 2, 10);
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    auto m = random_integral(R, n, 2, rng);
    auto snf = smith_normal_form(m);
    EXPECT_TRUE(determinant(snf.U).is_unit());
    EXPECT_TRUE(determinant(snf.V).is_unit());
    EXPECT_EQ(snf.U * m * snf.V, snf.D);
    EXPECT_TRUE(std::is_sorted(snf.diag_valuations.begin(), snf.diag_valuations.end()));
    int sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l)
        if (k != l) EXPECT_TRUE(snf.D(k, l).is_zero());
      EXPECT_EQ(snf.D(k, k).valuation(), (Valuation{snf.diag_valuations[k], true}));
      sum += snf.diag_valuations[k];
    }
    auto vd = determinant(m).valuation();
    ASSERT_TRUE(vd.exact);
    EXPECT_EQ(sum, vd.value);
  }
}
