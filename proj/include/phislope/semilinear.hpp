#pragma once

// sigma^a-linear maps between free W_N(F_{p^r})-modules.
//
// A SigmaMat (F, a) sends the coordinate vector v to F * sigma^a(v).

#include <numeric>
#include <vector>

#include "phislope/matrix.hpp"
#include "phislope/witt.hpp"

namespace phislope {

using WMatrix = Matrix<WittElem>;

inline WMatrix zero_matrix(const Ring& ring, std::size_t rows, std::size_t cols) {
  return WMatrix(rows, cols, WittElem(ring));
}

inline WMatrix identity_matrix(const Ring& ring, std::size_t n) {
  return WMatrix::identity(n, WittElem(ring), WittElem::one(ring));
}

/// Builds a matrix from integer entries (row-major), each embedded as a constant.
inline WMatrix int_matrix(const Ring& ring, std::size_t rows, std::size_t cols, std::initializer_list<i64> vals) {
  require(vals.size() == rows * cols, "int_matrix: wrong number of entries");
  std::vector<WittElem> data;
  for (i64 v : vals) data.push_back(WittElem::from_int(ring, v));
  return WMatrix(rows, cols, std::move(data));
}

class SigmaMat {
 public:
  SigmaMat(WMatrix entries, int twist) : entries_(std::move(entries)) {
    const int r = ring()->r();
    twist_ = ((twist % r) + r) % r;
    for (const auto& e : entries_.data()) require(same_ring(e.ring(), ring()), "SigmaMat entries from mixed rings");
  }

  static SigmaMat identity(const Ring& ring, std::size_t n, int twist) { return {identity_matrix(ring, n), twist}; }

  const WMatrix& entries() const { return entries_; }
  int twist() const { return twist_; }
  const Ring& ring() const { return entries_.data().front().ring(); }
  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }
  bool square() const { return entries_.square(); }

  bool operator==(const SigmaMat& o) const { return twist_ == o.twist_ && entries_ == o.entries_; }

 private:
  WMatrix entries_;
  int twist_ = 0;
};

/// (f o g): matrix f * sigma^{twist f}(g), twists added mod r.
inline SigmaMat compose(const SigmaMat& f, const SigmaMat& g) {
  if (f.cols() != g.rows()) fail(ErrorKind::usage, "compose: dimension mismatch");
  require(same_ring(f.ring(), g.ring()), "compose: different rings");
  return {f.entries() * sigma(g.entries(), f.twist()), f.twist() + g.twist()};
}

/// The k-fold self composition f^k.
inline SigmaMat iterate(const SigmaMat& f, int k) {
  require(f.square() && k >= 1, "iterate: needs a square map and k >= 1");
  SigmaMat acc = f;
  for (int i = 1; i < k; ++i) acc = compose(acc, f);
  return acc;
}

/// Number of self compositions needed to reach a linear map.
inline int linearization_length(const SigmaMat& f) {
  const int r = f.ring()->r();
  return f.twist() == 0 ? 1 : r / std::gcd(r, f.twist());
}

/// Matrix of f^r = F sigma(F) ... sigma^{r-1}(F) for a twist-1 square map.
inline SigmaMat linearize(const SigmaMat& f) {
  require(f.square(), "linearize: map must be square");
  require(f.twist() == 1 % f.ring()->r(), "linearize: map must have twist 1");
  return iterate(f, f.ring()->r());
}

/// Division-free characteristic polynomial (Berkowitz). Returns coefficients
/// low-first c_0, ..., c_n with c_n = 1, i.e. det(X I - A) = sum c_i X^i.
template <class T>
std::vector<T> berkowitz_charpoly(const Matrix<T>& a, const T& zero, const T& one) {
  require(a.square(), "charpoly: matrix must be square");
  const std::size_t n = a.rows();
  // Coefficients highest degree first while iterating.
  std::vector<T> poly{one};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // leading block size
    const T& diag = a(m, m);
    // Toeplitz column: t_0 = 1, t_1 = -a_kk, t_j = -R M^{j-2} C.
    std::vector<T> t;
    t.reserve(k + 1);
    t.push_back(one);
    t.push_back(zero - diag);
    std::vector<T> col(m, zero);  // M^j C
    for (std::size_t i = 0; i < m; ++i) col[i] = a(i, m);
    for (std::size_t j = 2; j <= k; ++j) {
      T dot = zero;
      for (std::size_t i = 0; i < m; ++i) dot += a(m, i) * col[i];
      t.push_back(zero - dot);
      if (j == k) break;
      std::vector<T> next(m, zero);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l) next[i] += a(i, l) * col[l];
      col = std::move(next);
    }
    std::vector<T> next(k + 1, zero);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) next[i] += t[i - j] * poly[j];
    poly = std::move(next);
  }
  return {poly.rbegin(), poly.rend()};
}

inline std::vector<WittElem> charpoly(const WMatrix& m) {
  const Ring& ring = m.data().front().ring();
  return berkowitz_charpoly(m, WittElem(ring), WittElem::one(ring));
}

inline std::vector<WittElem> charpoly(const SigmaMat& m) {
  require(m.twist() == 0, "charpoly: map must be linear (twist 0)");
  return charpoly(m.entries());
}

inline WittElem determinant(const WMatrix& m) {
  auto c = charpoly(m);
  return m.rows() % 2 == 0 ? c.front() : -c.front();
}

/// Inverse over W_N; pivots on unit entries.
inline WMatrix inverse(const WMatrix& m) {
  require(m.square(), "inverse: matrix must be square");
  const std::size_t n = m.rows();
  const Ring& ring = m.data().front().ring();
  WMatrix a = m;
  WMatrix inv = identity_matrix(ring, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (a(i, c).is_unit()) {
        piv = i;
        break;
      }
    if (piv == n) fail(ErrorKind::not_invertible, "matrix is not invertible over W_N");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    const WittElem s = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = s * a(c, j);
      inv(c, j) = s * inv(c, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const WittElem f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Base change by g: the map in the coordinates w with v = g w, i.e. g^{-1} F sigma^a(g).
inline SigmaMat sigma_conjugate(const SigmaMat& f, const WMatrix& g) {
  require(f.square() && g.rows() == f.rows(), "sigma_conjugate: dimension mismatch");
  return {inverse(g) * f.entries() * sigma(g, f.twist()), f.twist()};
}

/// Smallest entry valuation of a matrix.
inline Valuation valuation(const WMatrix& m) {
  Valuation best = Valuation::at_least(m.data().front().ring()->precision());
  for (const auto& e : m.data()) {
    auto v = e.valuation();
    if (v.exact && (!best.exact || v.value < best.value)) best = v;
  }
  return best;
}

struct SNFResult {
  WMatrix U;
  WMatrix V;
  WMatrix D;  // U * A * V
  std::vector<int> diag_valuations;
};

/// Smith normal form over the local ring W_N. The pivot is the entry of
/// minimal exact valuation, ties broken by lowest (row, col).
inline SNFResult smith_normal_form(const WMatrix& m) {
  require(m.square(), "smith_normal_form: matrix must be square");
  const std::size_t n = m.rows();
  const Ring& ring = m.data().front().ring();
  WMatrix a = m;
  WMatrix u = identity_matrix(ring, n);
  WMatrix v = identity_matrix(ring, n);
  std::vector<int> vals;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    int best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        auto val = a(i, j).valuation();
        if (!val.exact) continue;
        if (pr == n || val.value < best) {
          best = val.value;
          pr = i;
          pc = j;
        }
      }
    if (pr == n)
      fail(ErrorKind::precision_exhausted,
           "elementary divisor " + std::to_string(k) + " is indistinguishable from 0 at precision N");
    if (pr != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pr, j));
        std::swap(u(k, j), u(pr, j));
      }
    if (pc != k)
      for (std::size_t i = 0; i < n; ++i) {
        std::swap(a(i, k), a(i, pc));
        std::swap(v(i, k), v(i, pc));
      }
    // Pivot = p^best * unit; each other entry in its row/column is p^best * (something).
    const WittElem unit_inv = a(k, k).div_p_power(best).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const WittElem f = a(i, k).div_p_power(best) * unit_inv;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        u(i, j) -= f * u(k, j);
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero()) continue;
      const WittElem f = a(k, j).div_p_power(best) * unit_inv;
      for (std::size_t i = 0; i < n; ++i) {
        a(i, j) -= f * a(i, k);
        v(i, j) -= f * v(i, k);
      }
    }
    vals.push_back(best);
  }
  return {std::move(u), std::move(v), std::move(a), std::move(vals)};
}

inline SNFResult smith_normal_form(const SigmaMat& m) { return smith_normal_form(m.entries()); }

}  // namespace phislope
