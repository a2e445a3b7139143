#pragma once

// Random members of the family, classified; the histogram should only ever
// show the two global polygons.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phislope/admiss.hpp"
#include "phislope/random.hpp"

namespace phislope {

struct SimulationReport {
  std::int64_t samples = 0;
  std::map<std::string, std::int64_t> polygon_histogram;  // polygon token string -> count
  std::map<std::string, std::int64_t> label_histogram;
  std::vector<std::string> anomalies;
  std::int64_t redraws = 0;
};

struct SimulationOptions {
  std::optional<SlopeCase> force_case;
  int max_retries = 5;
};

/// Precision that keeps the determinant of the linearized tensor Frobenius
/// visible: its valuation is r 2^{d+epsilon-1}.
inline int simulation_precision(const CurveParams& cp) { return cp.r * (1 << (cp.d + cp.epsilon - 1)) + 3; }

inline FilteredPhiModule sample_family_member(const CurveParams& cp, const Ring& ring, SlopeCase c, Rng& rng) {
  const FilteredPhiModule v1 = realize_case(c, ring);
  // Block-diagonal base change commutes with the endomorphism.
  const std::size_t n = v1.rank();
  WMatrix g = zero_matrix(ring, n, n);
  for (std::size_t b = 0; b < n; b += 2) {
    const WMatrix blk = random_invertible(ring, 2, rng);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g(b + i, b + j) = blk(i, j);
  }
  const WMatrix ginv = inverse(g);
  const FilteredPhiModule conj(sigma_conjugate(v1.frobenius(), g), v1.filtration_jumps(),
                               SigmaMat(ginv * v1.endo()->entries() * g, 0));
  const FilteredPhiModule ten = phi_ten(eigen_decompose(conj));
  const FilteredPhiModule full = tensor(ten, unit_crystal(ring, static_cast<std::size_t>(cp.unit_rank())));
  const WMatrix h = random_invertible(ring, full.rank(), rng);
  return FilteredPhiModule(sigma_conjugate(full.frobenius(), h), full.filtration_jumps());
}

inline SimulationReport simulate(const CurveParams& cp, std::int64_t samples, std::uint64_t seed,
                                 const SimulationOptions& opt = {}) {
  cp.validate();
  require(samples >= 1, "samples must be >= 1");
  const Ring ring = RingParams::make_default(cp.p, cp.r, simulation_precision(cp));
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  SimulationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    const SlopeCase c = opt.force_case ? *opt.force_case : (coin(rng) ? SlopeCase::supersingular : SlopeCase::ordinary);
    for (int attempt = 0;; ++attempt) {
      try {
        const auto m = sample_family_member(cp, ring, c, rng);
        const auto cls = classify(m, cp);
        ++rep.polygon_histogram[cls.polygon.to_string()];
        ++rep.label_histogram[to_string(cls.label)];
        const bool expected = (c == SlopeCase::supersingular) == (cls.label == StratumLabel::supersingular);
        if (!expected)
          rep.anomalies.push_back("sample " + std::to_string(s) + ": " + to_string(c) + " classified as " +
                                  to_string(cls.label));
        break;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::precision_exhausted && attempt < opt.max_retries) {
          ++rep.redraws;
          continue;
        }
        rep.anomalies.push_back("sample " + std::to_string(s) + ": " + e.what());
        break;
      }
    }
  }
  return rep;
}

}  // namespace phislope
