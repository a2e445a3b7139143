#pragma once

// Slopes from valuation growth of iterated exterior powers, computed on an
// exact integer lift. Independent of the characteristic polynomial route.

#include <algorithm>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phislope/polygon.hpp"

namespace phislope {

namespace detail {

using BigInt = boost::multiprecision::cpp_int;
using BigPoly = std::vector<BigInt>;  // length r, residue polynomial

class ExactRing {
 public:
  ExactRing(const RingParams& params, BigInt mod) : p_(params.p()), r_(params.r()), mod_(std::move(mod)) {
    for (i64 c : params.modulus()) f_.emplace_back(c);
  }

  int r() const { return r_; }
  BigPoly zero() const { return BigPoly(r_, 0); }

  BigPoly lift(const WittElem& a) const {
    BigPoly out(r_);
    for (int i = 0; i < r_; ++i) out[i] = a.coeff(i);
    return out;
  }

  BigPoly add(const BigPoly& a, const BigPoly& b) const {
    BigPoly out(r_);
    for (int i = 0; i < r_; ++i) out[i] = norm(a[i] + b[i]);
    return out;
  }

  BigPoly sub(const BigPoly& a, const BigPoly& b) const {
    BigPoly out(r_);
    for (int i = 0; i < r_; ++i) out[i] = norm(a[i] - b[i]);
    return out;
  }

  BigPoly mul(const BigPoly& a, const BigPoly& b) const {
    std::vector<BigInt> prod(2 * r_, 0);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) prod[i + j] += a[i] * b[j];
    for (int k = 2 * r_ - 2; k >= r_; --k) {
      if (prod[k] == 0) continue;
      for (int m = 0; m < r_; ++m) prod[k - r_ + m] -= prod[k] * f_[m];
    }
    BigPoly out(r_);
    for (int i = 0; i < r_; ++i) out[i] = norm(prod[i]);
    return out;
  }

  /// Valuation, or -1 when the element is 0 modulo the working modulus.
  int valuation(const BigPoly& a) const {
    int best = -1;
    for (const auto& c : a) {
      if (c == 0) continue;
      BigInt x = c;
      int v = 0;
      while (x % p_ == 0) {
        x /= p_;
        ++v;
      }
      if (best < 0 || v < best) best = v;
    }
    return best;
  }

 private:
  BigInt norm(BigInt x) const {
    x %= mod_;
    if (x < 0) x += mod_;
    return x;
  }

  i64 p_;
  int r_;
  BigInt mod_;
  std::vector<BigInt> f_;
};

using BigMat = std::vector<std::vector<BigPoly>>;

inline BigMat big_mul(const ExactRing& R, const BigMat& a, const BigMat& b) {
  const std::size_t n = a.size();
  BigMat out(n, std::vector<BigPoly>(n, R.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = R.add(out[i][j], R.mul(a[i][k], b[k][j]));
  return out;
}

inline int big_min_valuation(const ExactRing& R, const BigMat& a) {
  int best = -1;
  for (const auto& row : a)
    for (const auto& e : row) {
      const int v = R.valuation(e);
      if (v >= 0 && (best < 0 || v < best)) best = v;
    }
  return best;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Leibniz determinant of the minor (rows, cols).
inline BigPoly big_minor(const ExactRing& R, const BigMat& a, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  BigPoly total = R.zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigPoly term = R.zero();
    term[0] = 1;
    for (std::size_t i = 0; i < k; ++i) term = R.mul(term, a[rows[i]][cols[perm[i]]]);
    total = inversions % 2 ? R.sub(total, term) : R.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline BigMat exterior_power(const ExactRing& R, const BigMat& a, std::size_t k) {
  const auto subs = subsets(a.size(), k);
  BigMat out(subs.size(), std::vector<BigPoly>(subs.size(), R.zero()));
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j) out[i][j] = big_minor(R, a, subs[i], subs[j]);
  return out;
}

/// Smallest rational with denominator <= max_den that is >= x.
inline Rational round_up(Rational x, std::int64_t max_den) {
  std::optional<Rational> best;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const std::int64_t num = x.numerator() * q;
    std::int64_t c = num / x.denominator();
    if (c * x.denominator() < num) ++c;
    const Rational cand(c, q);
    if (!best || cand < *best) best = cand;
  }
  return *best;
}

}  // namespace detail

/// Slope multiset of a twist-1 (or linear) map of rank <= 4 from the growth of
/// min val((wedge^i L)^k), k <= iterations, where L is the linearization
/// lifted to exact integers. The lowest slope of wedge^i L is the height of
/// the Newton polygon at i; m_k is superadditive so max m_k / k is a lower
/// bound converging to it.
inline SlopePolygon slope_oracle(const SigmaMat& f, int iterations = 60) {
  require(f.square() && f.rows() >= 1 && f.rows() <= 4, "slope_oracle: rank must be in [1, 4]");
  require(iterations >= 4, "slope_oracle: need at least 4 iterations");
  const std::size_t n = f.rows();
  const int steps = linearization_length(f);
  const WMatrix lin = iterate(f, steps).entries();
  const RingParams& params = *f.ring();

  detail::BigInt pn = 1;
  for (int i = 0; i < params.precision(); ++i) pn *= params.p();
  const detail::ExactRing modn(params, pn);
  detail::BigMat big(n, std::vector<detail::BigPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) big[i][j] = modn.lift(lin(i, j));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  // Below N the valuation of det L is the same for the lift and for L.
  const int det_val = modn.valuation(detail::big_minor(modn, big, all, all));
  if (det_val < 0) fail(ErrorKind::precision_exhausted, "determinant vanishes modulo p^N");

  // m_k <= k * height_i <= iterations * det_val, so this modulus keeps every m_k exact.
  detail::BigInt work_mod = 1;
  for (int i = 0; i < iterations * det_val + 1; ++i) work_mod *= params.p();
  const detail::ExactRing R(params, work_mod);

  std::vector<Rational> heights{Rational(0)};
  for (std::size_t i = 1; i < n; ++i) {
    const detail::BigMat w = detail::exterior_power(R, big, i);
    std::vector<int> m(iterations + 1, 0);
    detail::BigMat acc = w;
    Rational best(-1);
    for (int k = 1; k <= iterations; ++k) {
      if (k > 1) acc = detail::big_mul(R, acc, w);
      int v = detail::big_min_valuation(R, acc);
      if (v < 0) v = iterations * det_val + 1;
      m[k] = v;
      best = std::max(best, Rational(v, k));
    }
    const Rational h = detail::round_up(best, static_cast<std::int64_t>(n));
    // Defect k*h - m_k must stay bounded: no growth in the second half.
    auto defect = [&](int k) { return h * k - m[k]; };
    Rational early = defect(1), late = defect(iterations / 2 + 1);
    for (int k = 1; k <= iterations / 2; ++k) early = std::max(early, defect(k));
    for (int k = iterations / 2 + 1; k <= iterations; ++k) late = std::max(late, defect(k));
    if (late > early)
      fail(ErrorKind::non_convergence,
           "valuation growth of wedge^" + std::to_string(i) + " is not linear within the iteration budget");
    heights.push_back(h);
  }
  heights.emplace_back(det_val);

  std::vector<SlopeRun> runs;
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational s = heights[i] - heights[i - 1];
    if (i >= 2 && s < heights[i - 1] - heights[i - 2])
      fail(ErrorKind::non_convergence, "estimated polygon is not convex");
    runs.push_back({s / steps, 1});
  }
  return SlopePolygon(std::move(runs));
}

}  // namespace phislope
