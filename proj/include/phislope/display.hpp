#pragma once

// Displays of supersingular Drinfeld modules and their one-parameter
// equal-characteristic deformation.
//
// Basis order Y0, X1, Y1, ..., X_{r-1}, Y_{r-1}, X0. N_0 = {Y0, X0} sits at
// indices {0, 2r-1}; N_i = {X_i, Y_i} at {2i-1, 2i}. Columns are images.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phislope/random.hpp"
#include "phislope/semilinear.hpp"
#include "phislope/series.hpp"

namespace phislope {

using SMatrix = Matrix<WittSeries>;

struct DisplayEntries {
  WittElem a1, a2, b1, b2, c1, c2, d1, d2;
};

class DisplayData {
 public:
  /// links[k-1] is the unit block N_k -> N_{k+1}, 1 <= k <= r-2.
  static DisplayData build(const DisplayEntries& e, std::vector<WMatrix> links = {}) {
    const Ring& ring = e.a1.ring();
    for (const WittElem* x : {&e.a2, &e.b1, &e.b2, &e.c1, &e.c2, &e.d1, &e.d2})
      require(same_ring(x->ring(), ring), "display entries from different rings");
    require(ring->p() >= 5, "displays need p >= 5");
    require(ring->r() >= 2, "displays need r >= 2");
    require(links.size() == static_cast<std::size_t>(ring->r() - 2), "need r-2 link blocks");
    for (const auto& l : links) {
      require(l.rows() == 2 && l.cols() == 2, "link blocks must be 2x2");
      if (!determinant(l).is_unit()) fail(ErrorKind::not_invertible, "link block is not invertible");
    }
    DisplayData d(e, std::move(links));
    if (!d.det_ab().is_unit()) fail(ErrorKind::not_invertible, "det[[a1,b1],[a2,b2]] is not a unit");
    if (!d.det_cd().is_unit()) fail(ErrorKind::not_invertible, "det[[c1,d1],[c2,d2]] is not a unit");
    return d;
  }

  const Ring& ring() const { return e_.a1.ring(); }
  int r() const { return ring()->r(); }
  std::size_t size() const { return 2 * static_cast<std::size_t>(r()); }
  const DisplayEntries& entries() const { return e_; }
  const std::vector<WMatrix>& links() const { return links_; }

  WittElem det_ab() const { return e_.a1 * e_.b2 - e_.b1 * e_.a2; }
  WittElem det_cd() const { return e_.c1 * e_.d2 - e_.d1 * e_.c2; }

  /// Index sets of the eigencomponents N_0, ..., N_{r-1}.
  std::vector<std::size_t> component(int i) const {
    if (i == 0) return {0, size() - 1};
    return {2 * static_cast<std::size_t>(i) - 1, 2 * static_cast<std::size_t>(i)};
  }

  /// The display matrix [[A, B], [C, D]] (no deformation, no factor p).
  WMatrix matrix() const {
    const std::size_t n = size();
    WMatrix m = zero_matrix(ring(), n, n);
    m(1, 0) = e_.b1;
    m(2, 0) = e_.b2;
    m(1, n - 1) = e_.a1;
    m(2, n - 1) = e_.a2;
    for (int k = 1; k + 1 < r(); ++k) {
      const auto src = component(k), dst = component(k + 1);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(dst[i], src[j]) = links_[k - 1](i, j);
    }
    const auto last = component(r() - 1);
    m(0, last[0]) = e_.c1;
    m(0, last[1]) = e_.d1;
    m(n - 1, last[0]) = e_.c2;
    m(n - 1, last[1]) = e_.d2;
    return m;
  }

  /// Column in N_{r-1} coordinates through which Y0 returns to itself:
  /// sigma(E_{r-2}) sigma^2(E_{r-3}) ... sigma^{r-1}(b).
  std::pair<WittElem, WittElem> return_vector() const {
    WittElem x0 = e_.b1.sigma(r() - 1), x1 = e_.b2.sigma(r() - 1);
    for (int k = 1; k + 1 < r(); ++k) {
      const WMatrix l = sigma(links_[k - 1], r() - 1 - k);
      const WittElem y0 = l(0, 0) * x0 + l(0, 1) * x1;
      const WittElem y1 = l(1, 0) * x0 + l(1, 1) * x1;
      x0 = y0;
      x1 = y1;
    }
    return {x0, x1};
  }

  /// Constant term of Phi_11 vanishes mod p; for r = 2 this is b1^s c1 + b2^s d1 = 0 mod p.
  bool supersingular() const {
    const auto [x0, x1] = return_vector();
    return !(e_.c1 * x0 + e_.d1 * x1).is_unit();
  }

  /// Coefficient u1 of t in Phi_11; b1^s c2 + b2^s d2 for r = 2.
  WittElem u1() const {
    const auto [x0, x1] = return_vector();
    return e_.c2 * x0 + e_.d2 * x1;
  }

 private:
  DisplayData(DisplayEntries e, std::vector<WMatrix> links) : e_(std::move(e)), links_(std::move(links)) {}

  DisplayEntries e_;
  std::vector<WMatrix> links_;
};

inline DisplayData build_display(const DisplayEntries& e, std::vector<WMatrix> links = {}) {
  return DisplayData::build(e, std::move(links));
}

struct DeformedDisplay {
  DisplayData base;
  int precision_t;
  SMatrix m1;  // twist 1
};

inline int default_precision_t(i64 p) { return static_cast<int>(p * p + 1); }

/// Frobenius [[A + tC, pB], [C, pD]] on the Drinfeld locus (only T_0 = t survives).
inline DeformedDisplay deform(const DisplayData& dd, int precision_t) {
  const Ring& ring = dd.ring();
  const std::size_t n = dd.size();
  const WMatrix disp = dd.matrix();
  const WittElem p = WittElem::from_int(ring, ring->p());
  const WittSeries zero(ring, precision_t);
  SMatrix m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const WittElem e = j == n - 1 ? p * disp(i, j) : disp(i, j);
      m(i, j) = WittSeries::constant(e, precision_t);
    }
  const WittSeries t = WittSeries::t(ring, precision_t);
  for (std::size_t j = 0; j + 1 < n; ++j) m(0, j) += t * disp(n - 1, j);
  return {dd, precision_t, std::move(m)};
}

/// Phi = m1 sigma(m1) ... sigma^{r-1}(m1), with t -> t^{p^k} in factor k.
inline SMatrix phi_iterate(const DeformedDisplay& dd) {
  SMatrix acc = dd.m1;
  for (int k = 1; k < dd.base.r(); ++k) acc = acc * sigma(dd.m1, k);
  return acc;
}

/// t-adic order of Phi_11 mod p; nullopt means at least M.
inline std::optional<int> hasse_witt_order(const DeformedDisplay& dd) { return phi_iterate(dd)(0, 0).order_mod_p(); }

struct Sym2Report {
  WittSeries series;  // coefficient after division by p^{r-1}
  std::optional<int> order;
  std::optional<WittElem> leading;
  std::vector<int> support;
};

/// Coefficient of Y0^2 (x) det N_1 (x) ... in the image of the same vector
/// under Sym^2(Phi|N_0) (x) prod det(Phi|N_i), divided by p^{r-1}, mod p.
inline Sym2Report sym2_det_order(const DeformedDisplay& dd) {
  require(dd.base.supersingular(), "sym2_det_order needs a supersingular display");
  const SMatrix phi = phi_iterate(dd);
  WittSeries coeff = phi(0, 0) * phi(0, 0);
  for (int i = 1; i < dd.base.r(); ++i) {
    const auto c = dd.base.component(i);
    coeff *= phi(c[0], c[0]) * phi(c[1], c[1]) - phi(c[0], c[1]) * phi(c[1], c[0]);
  }
  const int e = dd.base.r() - 1;
  for (const auto& c : coeff.coeffs()) {
    const auto v = c.valuation();
    if (v.exact && v.value < e) fail(ErrorKind::division_fails, "coefficient not divisible by p^" + std::to_string(e));
  }
  Sym2Report rep{coeff.div_p_power(e), std::nullopt, std::nullopt, {}};
  rep.order = rep.series.order_mod_p();
  if (rep.order) rep.leading = rep.series.coeff(*rep.order);
  rep.support = rep.series.support_mod_p();
  return rep;
}

/// -u1^2 det[[a1,b1],[a2,b2]] det[[c1,d1],[c2,d2]]^sigma (r = 2).
inline WittElem sym2_leading_closed_form(const DisplayData& dd) {
  require(dd.r() == 2, "closed form is stated for r = 2");
  const WittElem u = dd.u1();
  return -(u * u * dd.det_ab() * dd.det_cd().sigma(1));
}

struct DrinfeldLocus {
  std::vector<int> surviving;  // parameters left free by the constraint
  std::vector<int> forced;     // parameters forced to 0
  bool unit_coefficients = false;
};

/// Expands M1 sigma(M2) - M2 M1 over the deformation in T_0..T_{2r-2}, with
/// M2 = xi on N_0 and sigma^i(xi) on N_i. The expression is linear in the T_i.
inline DrinfeldLocus drinfeld_locus(const DisplayData& dd, const WittElem& xi) {
  const Ring& ring = dd.ring();
  require(same_ring(xi.ring(), ring), "xi from a different ring");
  const int r = dd.r();
  for (int k = 1; k < r; ++k)
    if (xi.residue_equal(xi.sigma(k)))
      fail(ErrorKind::constraint_degenerate, "xi is congruent to a nontrivial conjugate mod p");
  const std::size_t n = dd.size();
  WMatrix m2 = zero_matrix(ring, n, n);
  for (int i = 0; i < r; ++i)
    for (std::size_t idx : dd.component(i)) m2(idx, idx) = xi.sigma(i);
  const WMatrix m2s = sigma(m2, 1);

  WMatrix base = dd.matrix();
  const WittElem p = WittElem::from_int(ring, ring->p());
  for (std::size_t i = 0; i < n; ++i) base(i, n - 1) = p * base(i, n - 1);
  if (!(base * m2s - m2 * base == zero_matrix(ring, n, n)))
    fail(ErrorKind::usage, "undeformed display does not commute with the endomorphism");

  // Column q: the commutator part multiplying T_q.
  std::vector<std::vector<WittElem>> cols;
  for (std::size_t q = 0; q + 1 < n; ++q) {
    WMatrix e = zero_matrix(ring, n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) e(q, j) = dd.matrix()(n - 1, j);
    cols.push_back((e * m2s - m2 * e).data());
  }
  DrinfeldLocus out;
  std::vector<std::vector<WittElem>> active;
  for (std::size_t q = 0; q < cols.size(); ++q) {
    bool zero_mod_p = true;
    for (const auto& x : cols[q]) zero_mod_p = zero_mod_p && !x.is_unit();
    if (zero_mod_p) {
      out.surviving.push_back(static_cast<int>(q));
    } else {
      out.forced.push_back(static_cast<int>(q));
      active.push_back(cols[q]);
    }
  }
  out.unit_coefficients = true;
  for (const auto& c : active) {
    bool has_unit = false;
    for (const auto& x : c) has_unit = has_unit || x.is_unit();
    out.unit_coefficients = out.unit_coefficients && has_unit;
  }
  // The forced columns must be independent mod p, else they do not force each T_q = 0.
  const std::size_t rows = active.empty() ? 0 : active.front().size();
  std::size_t rank = 0;
  for (std::size_t row = 0; row < rows && rank < active.size(); ++row) {
    std::size_t piv = active.size();
    for (std::size_t c = rank; c < active.size(); ++c)
      if (active[c][row].is_unit()) {
        piv = c;
        break;
      }
    if (piv == active.size()) continue;
    std::swap(active[rank], active[piv]);
    const WittElem inv = active[rank][row].inverse();
    for (std::size_t c = rank + 1; c < active.size(); ++c) {
      const WittElem f = active[c][row] * inv;
      for (std::size_t k = 0; k < rows; ++k) active[c][k] -= f * active[rank][k];
    }
    ++rank;
  }
  if (rank != active.size()) fail(ErrorKind::constraint_degenerate, "constraint columns are dependent mod p");
  return out;
}

/// Random valid display; supersingular ones have c1 X0 + d1 X1 = 0 mod p for the return vector X.
inline DisplayData random_display(const Ring& ring, bool supersingular, Rng& rng) {
  const WittElem p = WittElem::from_int(ring, ring->p());
  for (;;) {
    std::vector<WMatrix> links;
    for (int k = 1; k + 1 < ring->r(); ++k) links.push_back(random_invertible(ring, 2, rng));
    DisplayEntries e{random_elem(ring, rng), random_elem(ring, rng), random_elem(ring, rng), random_elem(ring, rng),
                     random_elem(ring, rng), random_elem(ring, rng), random_elem(ring, rng), random_elem(ring, rng)};
    if (!(e.a1 * e.b2 - e.b1 * e.a2).is_unit()) continue;
    if (supersingular) {
      DisplayEntries probe = e;
      probe.c1 = probe.d2 = WittElem::one(ring);
      probe.d1 = probe.c2 = WittElem(ring);
      const auto [x0, x1] = DisplayData::build(probe, links).return_vector();
      const WittElem w = random_unit(ring, rng);
      e.c1 = x1 * w + p * random_elem(ring, rng);
      e.d1 = -(x0 * w) + p * random_elem(ring, rng);
    }
    if (!(e.c1 * e.d2 - e.d1 * e.c2).is_unit()) continue;
    auto dd = DisplayData::build(e, links);
    if (dd.supersingular() == supersingular) return dd;
  }
}

}  // namespace phislope
