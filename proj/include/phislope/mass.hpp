#pragma once

// Degree arithmetic for the supersingular point count.

#include <cstdint>

#include "phislope/error.hpp"

namespace phislope {

struct MassInputs {
  std::int64_t p = 5;
  int r = 1;
  std::int64_t genus = 2;
  std::int64_t multiplicity = 2;
};

struct MassChain {
  std::int64_t deg_c1_m0;  // 2 - 2g
  std::int64_t deg_p0;     // -deg c1(M_0) = 2g - 2
  std::int64_t total;      // (p^r - 1) deg P_0, the degree of the zero cycle
  std::int64_t count;      // total / multiplicity
};

inline std::int64_t checked_prime_power(std::int64_t p, int r) {
  require(p >= 2 && r >= 1, "need p >= 2 and r >= 1");
  std::int64_t q = 1;
  for (int i = 0; i < r; ++i) {
    require(q <= (std::int64_t{1} << 40) / p, "p^r too large");
    q *= p;
  }
  return q;
}

/// Route through the cycle class: 2S = (p^r - 1) c1(P_0), c1(P_0) = -c1(M_0).
inline MassChain mass_chain(const MassInputs& in) {
  require(in.genus >= 2, "genus must be >= 2");
  require(in.multiplicity >= 1, "multiplicity must be positive");
  const std::int64_t q = checked_prime_power(in.p, in.r);
  MassChain c{};
  c.deg_c1_m0 = 2 - 2 * in.genus;
  c.deg_p0 = -c.deg_c1_m0;
  c.total = (q - 1) * c.deg_p0;
  if (c.total % in.multiplicity != 0) fail(ErrorKind::odd_total, "zero-cycle degree not divisible by the multiplicity");
  c.count = c.total / in.multiplicity;
  return c;
}

inline std::int64_t mass_formula(const MassInputs& in) { return mass_chain(in).count; }

/// (p^r - 1)(g - 1).
inline std::int64_t mass_closed_form(std::int64_t p, int r, std::int64_t genus) {
  require(genus >= 2, "genus must be >= 2");
  return (checked_prime_power(p, r) - 1) * (genus - 1);
}

}  // namespace phislope
