#pragma once

// Newton polygon candidates forced by admissibility, and the global
// two-polygon classification.

#include <string>
#include <utility>
#include <vector>

#include "phislope/phimod.hpp"

namespace phislope {

struct CurveParams {
  int d = 1;
  int r = 1;
  int epsilon = 0;
  i64 p = 5;

  void validate() const {
    require(d >= 1, "d must be >= 1");
    require(r >= 1 && r <= d, "r must satisfy 1 <= r <= d");
    require(epsilon == 0 || epsilon == 1, "epsilon must be 0 or 1");
    require(d + epsilon <= 30, "d + epsilon too large");
  }

  /// Rank of the unit-crystal factor, 2^{d-r+epsilon}.
  std::int64_t unit_rank() const { return std::int64_t{1} << (d - r + epsilon); }
  std::int64_t total_rank() const { return std::int64_t{1} << (d + epsilon); }
};

/// Hodge polygon {2r-1 x 0, 1 x 1} of the rank-2r factor.
inline SlopePolygon v1_hodge_polygon(int r) {
  std::vector<int> jumps(2 * static_cast<std::size_t>(r), 0);
  jumps.back() = 1;
  return hodge_polygon_from_filtration(jumps);
}

/// Polygons {m1 x 0, m2 x lambda} with m1 + m2 = 2r, lambda m2 = 1, r | m1,
/// r | m2, m2 != 0, dominating the Hodge polygon. m1 ascending.
inline std::vector<SlopePolygon> enumerate_v1_slopes(int r) {
  require(r >= 1, "r must be >= 1");
  const SlopePolygon hodge = v1_hodge_polygon(r);
  std::vector<SlopePolygon> out;
  for (int m1 = 0; m1 <= 2 * r; ++m1) {
    const int m2 = 2 * r - m1;
    if (m2 == 0 || m1 % r != 0 || m2 % r != 0) continue;
    std::vector<SlopeRun> runs{{Rational(1, m2), m2}};
    if (m1 > 0) runs.push_back({Rational(0), m1});
    SlopePolygon poly(std::move(runs));
    if (dominates(poly, hodge).dominates) out.push_back(std::move(poly));
  }
  return out;
}

/// Per-component phi^r slopes of a V1 polygon (rank 2r, r rank-2 components
/// with equal phi^r slopes), pushed through the r-fold tensor, rescaled to
/// phi-slopes and multiplied by the unit crystal.
inline SlopePolygon global_polygon_from_v1(const SlopePolygon& v1, const CurveParams& cp) {
  const SlopePolygon component = v1.scale_slopes(cp.r).divide_multiplicities(cp.r);
  return tensor_power_slopes(component, cp.r).scale_slopes(Rational(1, cp.r)).scale_multiplicities(cp.unit_rank());
}

/// (supersingular, generic).
inline std::pair<SlopePolygon, SlopePolygon> global_newton_polygons(const CurveParams& cp) {
  cp.validate();
  const auto cases = enumerate_v1_slopes(cp.r);
  require(cases.size() == 2, "expected exactly two V1 cases");
  return {global_polygon_from_v1(cases[0], cp), global_polygon_from_v1(cases[1], cp)};
}

/// Slope multiset is invariant under lambda -> 1 - lambda.
inline bool polarization_symmetric(const SlopePolygon& poly) {
  std::vector<SlopeRun> mirrored;
  for (const auto& run : poly.runs()) mirrored.push_back({Rational(1) - run.slope, run.mult});
  return SlopePolygon(std::move(mirrored)) == poly;
}

enum class StratumLabel { generic, supersingular };

inline std::string to_string(StratumLabel l) { return l == StratumLabel::generic ? "generic" : "supersingular"; }

struct Classification {
  StratumLabel label;
  SlopePolygon polygon;
};

inline Classification classify_polygon(const SlopePolygon& poly, const CurveParams& cp) {
  if (!polarization_symmetric(poly))
    fail(ErrorKind::unclassifiable, "polygon " + poly.to_string() + " is not symmetric under lambda -> 1 - lambda");
  const auto [ss, gen] = global_newton_polygons(cp);
  if (poly == ss) return {StratumLabel::supersingular, poly};
  if (poly == gen) return {StratumLabel::generic, poly};
  fail(ErrorKind::unclassifiable, "polygon " + poly.to_string() + " matches neither global polygon");
}

inline Classification classify(const FilteredPhiModule& m, const CurveParams& cp) {
  return classify_polygon(newton_polygon(m), cp);
}

}  // namespace phislope
