#pragma once

// Seeded random generators for elements, matrices and phi-modules.

#include <random>
#include <vector>

#include "phislope/semilinear.hpp"

namespace phislope {

using Rng = std::mt19937_64;

inline WittElem random_elem(const Ring& ring, Rng& rng) {
  std::uniform_int_distribution<i64> dist(0, ring->modulus_pn() - 1);
  std::vector<i64> c(ring->r());
  for (auto& x : c) x = dist(rng);
  return WittElem(ring, std::span<const i64>(c));
}

inline WittElem random_unit(const Ring& ring, Rng& rng) {
  for (;;) {
    auto e = random_elem(ring, rng);
    if (e.is_unit()) return e;
  }
}

inline WMatrix random_matrix(const Ring& ring, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<WittElem> data;
  for (std::size_t i = 0; i < rows * cols; ++i) data.push_back(random_elem(ring, rng));
  return WMatrix(rows, cols, std::move(data));
}

/// Uniform among matrices with unit determinant (rejection sampling).
inline WMatrix random_invertible(const Ring& ring, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(ring, n, n, rng);
    if (determinant(m).is_unit()) return m;
  }
}

/// U diag(p^{e_i} u_i) V with U, V invertible and e_i uniform in [0, max_exp];
/// gives integral matrices with varied elementary divisors.
inline WMatrix random_integral(const Ring& ring, std::size_t n, int max_exp, Rng& rng) {
  std::uniform_int_distribution<int> ed(0, max_exp);
  WMatrix d = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = WittElem::p_power(ring, ed(rng)) * random_unit(ring, rng);
  return random_invertible(ring, n, rng) * d * random_invertible(ring, n, rng);
}

/// Teichmueller lift of a uniformly random nonzero residue.
inline WittElem random_teichmuller_unit(const Ring& ring, Rng& rng) { return random_unit(ring, rng).teichmuller(); }

}  // namespace phislope
