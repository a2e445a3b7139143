#pragma once

// Filtered phi-modules, eigen-decomposition under a Z_{p^r}-action and the
// cyclic tensor Frobenius.

#include <optional>
#include <string>
#include <vector>

#include "phislope/polygon.hpp"
#include "phislope/semilinear.hpp"

namespace phislope {

/// Free module with a sigma-semilinear Frobenius and a filtration adapted to
/// the basis: basis vector j lies in Fil^i exactly for i <= jumps[j].
class FilteredPhiModule {
 public:
  FilteredPhiModule(SigmaMat frobenius, std::vector<int> jumps, std::optional<SigmaMat> endo = std::nullopt)
      : frobenius_(std::move(frobenius)), jumps_(std::move(jumps)), endo_(std::move(endo)) {
    require(frobenius_.square(), "frobenius must be square");
    require(frobenius_.rows() >= 1, "module of rank 0");
    require(jumps_.size() == frobenius_.rows(), "need one filtration jump per basis vector");
    if (endo_) {
      require(endo_->twist() == 0, "endomorphism must be linear");
      require(endo_->rows() == rank() && endo_->square(), "endomorphism has the wrong size");
      require(same_ring(endo_->ring(), ring()), "endomorphism over a different ring");
      const auto& e = endo_->entries();
      const auto& f = frobenius_.entries();
      if (!(e * f == f * sigma(e, frobenius_.twist())))
        fail(ErrorKind::usage, "endomorphism does not commute with the Frobenius");
    }
  }

  const Ring& ring() const { return frobenius_.ring(); }
  std::size_t rank() const { return frobenius_.rows(); }
  const SigmaMat& frobenius() const { return frobenius_; }
  const std::vector<int>& filtration_jumps() const { return jumps_; }
  const std::optional<SigmaMat>& endo() const { return endo_; }

  /// phi(Fil^i) in p^i M, i.e. column j of the Frobenius is divisible by p^{jump_j}.
  bool satisfies_divisibility() const {
    const auto& f = frobenius_.entries();
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t i = 0; i < rank(); ++i) {
        const auto v = f(i, j).valuation();
        if (v.exact && v.value < jumps_[j]) return false;
      }
    return true;
  }

  bool operator==(const FilteredPhiModule& o) const {
    return frobenius_ == o.frobenius_ && jumps_ == o.jumps_ && endo_ == o.endo_;
  }

 private:
  SigmaMat frobenius_;
  std::vector<int> jumps_;
  std::optional<SigmaMat> endo_;
};

struct EigenDecomposition {
  Ring ring;
  /// components[i] lists the basis indices of M_i; eigenvalue sigma^i(s).
  std::vector<std::vector<std::size_t>> components;
  /// blocks[i] is phi restricted to M_i -> M_{i+1 mod r}, shape |M_{i+1}| x |M_i|.
  std::vector<WMatrix> blocks;
  std::vector<std::vector<int>> jumps;

  std::size_t size() const { return components.size(); }
  std::size_t next(std::size_t i) const { return (i + 1) % components.size(); }
};

/// Eigen-decomposition without the commutation check on the module.
inline EigenDecomposition eigen_decompose(const SigmaMat& frobenius, const std::vector<int>& jumps,
                                          const SigmaMat& endo) {
  require(frobenius.twist() == 1 % frobenius.ring()->r(), "eigen_decompose: Frobenius must have twist 1");
  const auto& e = endo.entries();
  const std::size_t n = frobenius.rows();
  const int r = frobenius.ring()->r();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !e(i, j).is_zero()) fail(ErrorKind::not_semisimple, "endomorphism is not diagonal in the basis");

  const WittElem s = e(0, 0);
  std::vector<WittElem> conj;
  for (int k = 0; k < r; ++k) {
    conj.push_back(s.sigma(k));
    for (int l = 0; l < k; ++l)
      if (conj[l].residue_equal(conj[k]))
        fail(ErrorKind::not_semisimple, "eigenvalue conjugates collide mod p");
  }

  EigenDecomposition d;
  d.ring = frobenius.ring();
  d.components.resize(r);
  d.jumps.resize(r);
  std::vector<int> comp_of(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k < r; ++k)
      if (e(j, j).residue_equal(conj[k])) {
        comp_of[j] = k;
        break;
      }
    if (comp_of[j] < 0)
      fail(ErrorKind::not_semisimple, "eigenvalue of basis vector " + std::to_string(j) + " is not a conjugate of s");
    d.components[comp_of[j]].push_back(j);
    d.jumps[comp_of[j]].push_back(jumps[j]);
  }

  const auto& f = frobenius.entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!f(i, j).is_zero() && comp_of[i] != (comp_of[j] + 1) % r)
        fail(ErrorKind::not_cyclic, "Frobenius does not shift eigencomponent " + std::to_string(comp_of[j]));

  for (int k = 0; k < r; ++k) {
    const auto& src = d.components[k];
    const auto& dst = d.components[(k + 1) % r];
    if (src.empty() || dst.empty()) fail(ErrorKind::not_cyclic, "empty eigencomponent");
    d.blocks.push_back(f.submatrix(dst, src));
  }
  return d;
}

inline EigenDecomposition eigen_decompose(const FilteredPhiModule& m) {
  require(m.endo().has_value(), "eigen_decompose: module carries no endomorphism");
  return eigen_decompose(m.frobenius(), m.filtration_jumps(), *m.endo());
}

/// phi^r restricted to M_i as a linear map of M_i:
/// B_{i+r-1} sigma(B_{i+r-2}) ... sigma^{r-1}(B_i).
inline WMatrix component_linear_frobenius(const EigenDecomposition& d, std::size_t i) {
  const std::size_t r = d.size();
  WMatrix acc = d.blocks[(i + r - 1) % r];
  for (std::size_t k = 1; k < r; ++k) acc = acc * sigma(d.blocks[(i + r - 1 - k) % r], static_cast<int>(k));
  return acc;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> multi_indices(const std::vector<std::size_t>& dims) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t dim : dims) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : out)
      for (std::size_t a = 0; a < dim; ++a) {
        auto idx = prefix;
        idx.push_back(a);
        next.push_back(std::move(idx));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Cyclic tensor Frobenius on M_0 (x) ... (x) M_{r-1}:
/// v_0 (x) ... (x) v_{r-1} -> phi(v_{r-1}) (x) phi(v_0) (x) ... (x) phi(v_{r-2}).
/// Basis is lexicographic with component 0 outermost.
inline FilteredPhiModule phi_ten(const EigenDecomposition& d) {
  const std::size_t r = d.size();
  std::vector<std::size_t> dims;
  for (const auto& c : d.components) dims.push_back(c.size());
  const auto idx = detail::multi_indices(dims);
  const std::size_t n = idx.size();
  WMatrix m = zero_matrix(d.ring, n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      WittElem prod = WittElem::one(d.ring);
      for (std::size_t i = 0; i < r && !prod.is_zero(); ++i) {
        const std::size_t src = (i + r - 1) % r;
        prod = prod * d.blocks[src](idx[a][i], idx[b][src]);
      }
      m(a, b) = prod;
    }
  std::vector<int> jumps;
  for (const auto& multi : idx) {
    int j = 0;
    for (std::size_t i = 0; i < r; ++i) j += d.jumps[i][multi[i]];
    jumps.push_back(j);
  }
  return FilteredPhiModule(SigmaMat(std::move(m), 1), std::move(jumps));
}

/// Sym^2(M_0) (x) det M_1 (x) ... (x) det M_{r-1} as a phi^r-module (twist 0).
/// Basis u0^2, u0 u1, u1^2 of Sym^2 M_0; the first vector spans the top grading
/// of the quotient by Fil^1 when jump(u0) < jump(u1).
inline FilteredPhiModule sym2_factor(const EigenDecomposition& d) {
  for (const auto& c : d.components)
    if (c.size() != 2) fail(ErrorKind::usage, "sym2_factor needs rank-2 eigencomponents");
  const Ring& ring = d.ring;
  const WMatrix p0 = component_linear_frobenius(d, 0);
  WittElem det_rest = WittElem::one(ring);
  int jump_rest = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    det_rest = det_rest * determinant(component_linear_frobenius(d, i));
    jump_rest += d.jumps[i][0] + d.jumps[i][1];
  }
  const WittElem &a = p0(0, 0), &b = p0(0, 1), &c = p0(1, 0), &dd = p0(1, 1);
  const WittElem two = WittElem::from_int(ring, 2);
  WMatrix s = zero_matrix(ring, 3, 3);
  s(0, 0) = a * a;
  s(1, 0) = two * a * c;
  s(2, 0) = c * c;
  s(0, 1) = a * b;
  s(1, 1) = a * dd + b * c;
  s(2, 1) = c * dd;
  s(0, 2) = b * b;
  s(1, 2) = two * b * dd;
  s(2, 2) = dd * dd;
  const int j0 = d.jumps[0][0], j1 = d.jumps[0][1];
  std::vector<int> jumps{2 * j0 + jump_rest, j0 + j1 + jump_rest, 2 * j1 + jump_rest};
  return FilteredPhiModule(SigmaMat(s.scaled(det_rest), 0), std::move(jumps));
}

enum class SlopeCase { supersingular, ordinary };

inline std::string to_string(SlopeCase c) { return c == SlopeCase::supersingular ? "supersingular" : "ordinary"; }

/// Rank-2r module with components M_i = span(e_{2i}, e_{2i+1}), endomorphism
/// the conjugates of a Teichmueller lift of the field generator, and Fil^1
/// spanned by e_1. phi maps M_i to M_{i+1} by the identity for i >= 1 and by
/// diag(1, p) (ordinary) or [[0, p], [1, 0]] (supersingular) for i = 0.
inline FilteredPhiModule realize_case(SlopeCase c, const Ring& ring) {
  const int r = ring->r();
  const std::size_t n = 2 * static_cast<std::size_t>(r);
  const WittElem zero(ring), one = WittElem::one(ring), p = WittElem::from_int(ring, ring->p());
  WMatrix f = zero_matrix(ring, n, n);
  for (int i = 0; i < r; ++i) {
    const std::size_t dst = 2 * static_cast<std::size_t>((i + 1) % r), src = 2 * static_cast<std::size_t>(i);
    if (i > 0) {
      f(dst, src) = one;
      f(dst + 1, src + 1) = one;
    } else if (c == SlopeCase::ordinary) {
      f(dst, src) = one;
      f(dst + 1, src + 1) = p;
    } else {
      f(dst, src + 1) = p;
      f(dst + 1, src) = one;
    }
  }
  const WittElem s = WittElem::generator(ring).teichmuller();
  WMatrix e = zero_matrix(ring, n, n);
  for (int i = 0; i < r; ++i) {
    const WittElem si = s.sigma(i);
    e(2 * i, 2 * i) = si;
    e(2 * i + 1, 2 * i + 1) = si;
  }
  std::vector<int> jumps(n, 0);
  jumps[1] = 1;
  return FilteredPhiModule(SigmaMat(std::move(f), 1), std::move(jumps), SigmaMat(std::move(e), 0));
}

/// Tensor product: Kronecker product of the Frobenius matrices, jumps summed
/// (a outermost). The endomorphisms are dropped.
inline FilteredPhiModule tensor(const FilteredPhiModule& a, const FilteredPhiModule& b) {
  require(a.frobenius().twist() == b.frobenius().twist(), "tensor: Frobenius twists differ");
  require(same_ring(a.ring(), b.ring()), "tensor: different rings");
  std::vector<int> jumps;
  for (int x : a.filtration_jumps())
    for (int y : b.filtration_jumps()) jumps.push_back(x + y);
  return FilteredPhiModule(SigmaMat(kronecker(a.frobenius().entries(), b.frobenius().entries()), a.frobenius().twist()),
                           std::move(jumps));
}

/// Identity Frobenius of the given rank with all jumps 0.
inline FilteredPhiModule unit_crystal(const Ring& ring, std::size_t rank, int twist = 1) {
  return FilteredPhiModule(SigmaMat::identity(ring, rank, twist), std::vector<int>(rank, 0));
}

inline SlopePolygon newton_polygon(const FilteredPhiModule& m) { return newton_polygon(m.frobenius()); }

inline SlopePolygon hodge_polygon(const FilteredPhiModule& m) {
  return hodge_polygon_from_filtration(m.filtration_jumps());
}

}  // namespace phislope
