#pragma once

// Truncated unramified Witt rings W_N(F_{p^r}) = Z_{p^r} / p^N.
//
// An element is a residue polynomial c_0 + c_1 x + ... + c_{r-1} x^{r-1}
// over Z/p^N, taken modulo a monic lift of an irreducible polynomial over
// F_p. Frobenius acts by x -> rho, where rho is the unique root of the
// modulus congruent to x^p mod p.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phislope/error.hpp"

namespace phislope {

using i64 = std::int64_t;
using i128 = __int128;

/// Largest supported residue degree.
inline constexpr int kMaxDegree = 8;

namespace detail {

using Poly = std::vector<i64>;  // low-first coefficients

inline i64 reduce(i128 a, i64 q) {
  i64 m = static_cast<i64>(a % q);
  return m < 0 ? m + q : m;
}

inline i64 mulmod(i64 a, i64 b, i64 q) { return static_cast<i64>(static_cast<i128>(a) * b % q); }

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// p^n, or nullopt when it does not fit below 2^62.
inline std::optional<i64> checked_pow(i64 p, int n) {
  i128 acc = 1;
  for (int i = 0; i < n; ++i) {
    acc *= p;
    if (acc >= (static_cast<i128>(1) << 62)) return std::nullopt;
  }
  return static_cast<i64>(acc);
}

inline int p_adic_val(i64 c, i64 p) {
  int v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// ---- arithmetic in (Z/q)[x]/(f), f monic of degree r given low-first with r+1 terms ----

inline Poly ring_mul(const Poly& a, const Poly& b, const Poly& f, i64 q) {
  const std::size_t r = f.size() - 1;
  std::vector<i64> prod(2 * r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] = reduce(static_cast<i128>(prod[i + j]) + static_cast<i128>(a[i]) * b[j], q);
    }
  }
  for (std::size_t k = 2 * r - 1; k-- > r;) {
    const i64 c = prod[k];
    if (c == 0) continue;
    for (std::size_t m = 0; m < r; ++m)
      prod[k - r + m] = reduce(static_cast<i128>(prod[k - r + m]) - static_cast<i128>(c) * f[m], q);
    prod[k] = 0;
  }
  prod.resize(r);
  return prod;
}

inline Poly ring_pow(Poly base, i128 e, const Poly& f, i64 q) {
  Poly acc(f.size() - 1, 0);
  acc[0] = 1 % q;
  while (e > 0) {
    if (e & 1) acc = ring_mul(acc, base, f, q);
    base = ring_mul(base, base, f, q);
    e >>= 1;
  }
  return acc;
}

/// Evaluates the polynomial g (arbitrary length, low-first, over Z/q) at the ring element x.
inline Poly ring_eval(const Poly& g, const Poly& x, const Poly& f, i64 q) {
  const std::size_t r = f.size() - 1;
  Poly acc(r, 0);
  for (std::size_t k = g.size(); k-- > 0;) {
    acc = ring_mul(acc, x, f, q);
    acc[0] = reduce(static_cast<i128>(acc[0]) + g[k], q);
  }
  return acc;
}

/// Inverse of a unit of (Z/q)[x]/(f), q = p^N: invert mod p by Fermat in
/// F_{p^r}, then lift with Newton's iteration y <- y(2 - a y).
inline std::optional<Poly> ring_inverse(const Poly& a, const Poly& f, i64 p, i64 q, int r) {
  Poly fp(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fp[i] = f[i] % p;
  Poly ap(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ap[i] = a[i] % p;
  if (std::all_of(ap.begin(), ap.end(), [](i64 c) { return c == 0; })) return std::nullopt;
  i128 order = 1;
  for (int i = 0; i < r; ++i) order *= p;
  Poly y = ring_pow(ap, order - 2, fp, p);
  for (int iter = 0; iter < 70; ++iter) {
    Poly ay = ring_mul(a, y, f, q);
    bool done = ay[0] == 1 % q;
    for (std::size_t i = 1; i < ay.size() && done; ++i) done = ay[i] == 0;
    if (done) return y;
    Poly two_minus(ay.size());
    for (std::size_t i = 0; i < ay.size(); ++i) two_minus[i] = reduce(-static_cast<i128>(ay[i]), q);
    two_minus[0] = reduce(static_cast<i128>(two_minus[0]) + 2, q);
    y = ring_mul(y, two_minus, f, q);
  }
  return std::nullopt;
}

// ---- polynomials over F_p (full length, low-first, trimmed) for irreducibility ----

inline i64 inv_mod_prime(i64 a, i64 p) {
  i64 e = p - 2, acc = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return acc;
}

inline Poly fp_rem(Poly a, const Poly& b, i64 p) {
  trim(a);
  const i64 lead_inv = inv_mod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const i64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = reduce(static_cast<i128>(a[shift + i]) - static_cast<i128>(c) * b[i], p);
    trim(a);
  }
  return a;
}

inline Poly fp_gcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly t = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

/// Ben-Or test: f of degree r is irreducible over F_p iff gcd(x^{p^i} - x, f) = 1 for i <= r/2.
inline bool fp_irreducible(const Poly& f_in, i64 p) {
  Poly f(f_in.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = reduce(f_in[i], p);
  trim(f);
  const int r = static_cast<int>(f.size()) - 1;
  if (r < 1 || f.back() != 1) return false;
  if (r == 1) return true;
  Poly xp(r, 0);
  xp[1] = 1;
  for (int i = 1; i <= r / 2; ++i) {
    xp = ring_pow(xp, p, f, p);
    Poly g = xp;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = reduce(static_cast<i128>(g[1]) - 1, p);
    Poly d = fp_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Immutable context shared by every element of one Witt ring W_N(F_{p^r}).
/// Construct through RingParams::make or RingParams::make_default.
class RingParams {
 public:
  static std::shared_ptr<const RingParams> make(i64 p, int r, int precision, std::vector<i64> modulus) {
    return std::shared_ptr<const RingParams>(new RingParams(p, r, precision, std::move(modulus)));
  }

  /// Uses the first irreducible monic polynomial in the deterministic table order.
  static std::shared_ptr<const RingParams> make_default(i64 p, int r, int precision) {
    return make(p, r, precision, default_modulus(p, r));
  }

  /// Enumerates monic degree-r polynomials over F_p with coefficient vectors
  /// in lexicographic order (constant term varying fastest) and returns the
  /// first irreducible one, low-first with the leading 1.
  static std::vector<i64> default_modulus(i64 p, int r) {
    if (!detail::is_prime(p) || p < 3) fail(ErrorKind::invalid_modulus, "p must be an odd prime");
    if (r < 1 || r > kMaxDegree) fail(ErrorKind::invalid_modulus, "degree r out of range");
    std::vector<i64> f(r + 1, 0);
    f[r] = 1;
    if (r == 1) return f;
    for (;;) {
      if (detail::fp_irreducible(f, p)) return f;
      int k = 0;
      while (k < r) {
        if (++f[k] < p) break;
        f[k] = 0;
        ++k;
      }
      if (k == r) fail(ErrorKind::invalid_modulus, "no irreducible polynomial found");
    }
  }

  i64 p() const { return p_; }
  int r() const { return r_; }
  int precision() const { return n_; }
  /// p^N, the characteristic of the ring.
  i64 modulus_pn() const { return q_; }
  const std::vector<i64>& modulus() const { return modulus_; }
  /// rho with modulus(rho) = 0 and rho = x^p mod p; sigma(x) = rho.
  const std::vector<i64>& frobenius_root() const { return rho_; }

  /// sigma^k(x^j) as a residue polynomial, 0 <= k < r, 0 <= j < r.
  const std::vector<i64>& sigma_image(int k, int j) const { return sigma_images_[k][j]; }

  bool operator==(const RingParams& o) const {
    return p_ == o.p_ && r_ == o.r_ && n_ == o.n_ && modulus_ == o.modulus_;
  }

 private:
  RingParams(i64 p, int r, int precision, std::vector<i64> modulus) : p_(p), r_(r), n_(precision) {
    if (!detail::is_prime(p) || p < 3) fail(ErrorKind::invalid_modulus, "p must be an odd prime");
    if (r < 1 || r > kMaxDegree) fail(ErrorKind::invalid_modulus, "degree r must be in [1, 8]");
    if (precision < 1) fail(ErrorKind::invalid_modulus, "precision must be >= 1");
    auto q = detail::checked_pow(p, precision);
    if (!q) fail(ErrorKind::invalid_modulus, "p^N does not fit in 62 bits");
    q_ = *q;
    if (modulus.size() != static_cast<std::size_t>(r) + 1)
      fail(ErrorKind::invalid_modulus, "modulus must have r+1 coefficients");
    for (auto& c : modulus) c = detail::reduce(c, q_);
    if (modulus.back() != 1 % q_) fail(ErrorKind::invalid_modulus, "modulus must be monic");
    if (!detail::fp_irreducible(modulus, p))
      fail(ErrorKind::invalid_modulus, "modulus is not irreducible mod p");
    modulus_ = std::move(modulus);
    compute_sigma();
  }

  void compute_sigma() {
    const auto& f = modulus_;
    detail::Poly x(r_, 0);
    if (r_ == 1) {
      x[0] = detail::reduce(-static_cast<i128>(f[0]), q_);
    } else {
      x[1] = 1;
    }
    // Newton iteration for the root of f lifting x^p.
    detail::Poly rho = detail::ring_pow(x, p_, f, q_);
    detail::Poly df(r_, 0);
    for (int i = 1; i <= r_; ++i) df[i - 1] = detail::reduce(static_cast<i128>(f[i]) * i, q_);
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
      detail::Poly fv = detail::ring_eval(f, rho, f, q_);
      if (std::all_of(fv.begin(), fv.end(), [](i64 c) { return c == 0; })) {
        converged = true;
        break;
      }
      auto inv = detail::ring_inverse(detail::ring_eval(df, rho, f, q_), f, p_, q_, r_);
      if (!inv) break;
      detail::Poly step = detail::ring_mul(fv, *inv, f, q_);
      for (int i = 0; i < r_; ++i) rho[i] = detail::reduce(static_cast<i128>(rho[i]) - step[i], q_);
    }
    if (!converged) fail(ErrorKind::invalid_modulus, "Hensel lifting of the Frobenius root did not converge");
    rho_ = rho;

    sigma_images_.assign(r_, std::vector<detail::Poly>(r_));
    for (int j = 0; j < r_; ++j) {
      detail::Poly xj(r_, 0);
      xj[j] = 1 % q_;
      sigma_images_[0][j] = xj;
    }
    for (int k = 1; k < r_; ++k)
      for (int j = 0; j < r_; ++j) {
        // sigma^k(x^j) = sigma^{k-1}(x^j) evaluated at rho.
        sigma_images_[k][j] = detail::ring_eval(sigma_images_[k - 1][j], rho, f, q_);
      }
  }

  i64 p_;
  int r_;
  int n_;
  i64 q_ = 1;
  std::vector<i64> modulus_;
  std::vector<i64> rho_;
  std::vector<std::vector<detail::Poly>> sigma_images_;
};

using Ring = std::shared_ptr<const RingParams>;

/// The Frobenius root rho as a polynomial of degree < r over Z/p^N.
inline std::vector<i64> frobenius_root(const RingParams& params) { return params.frobenius_root(); }

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

/// p-adic valuation of an element, or the sentinel "at least N" for zero.
struct Valuation {
  int value = 0;
  bool exact = true;

  static Valuation at_least(int n) { return {n, false}; }
  bool operator==(const Valuation&) const = default;
};

class WittElem {
 public:
  explicit WittElem(Ring ring) : ring_(std::move(ring)) { c_.fill(0); }

  WittElem(Ring ring, std::span<const i64> coeffs) : ring_(std::move(ring)) {
    c_.fill(0);
    require(coeffs.size() <= static_cast<std::size_t>(ring_->r()), "too many coefficients for ring degree");
    const i64 q = ring_->modulus_pn();
    for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = detail::reduce(coeffs[i], q);
  }

  WittElem(Ring ring, std::initializer_list<i64> coeffs)
      : WittElem(std::move(ring), std::span<const i64>(coeffs.begin(), coeffs.size())) {}

  static WittElem from_int(Ring ring, i64 n) {
    const i64 v = n;
    return WittElem(std::move(ring), std::span<const i64>(&v, 1));
  }
  static WittElem zero(Ring ring) { return WittElem(std::move(ring)); }
  static WittElem one(Ring ring) { return from_int(std::move(ring), 1); }
  /// The residue-polynomial generator x (for r = 1 the root of the linear modulus).
  static WittElem generator(Ring ring) {
    if (ring->r() == 1) return from_int(ring, -ring->modulus()[0]);
    WittElem g(std::move(ring));
    g.c_[1] = 1;
    return g;
  }
  /// p^k as an element.
  static WittElem p_power(Ring ring, int k) {
    WittElem e = one(ring);
    const WittElem pe = from_int(ring, ring->p());
    for (int i = 0; i < k; ++i) e = e * pe;
    return e;
  }

  const Ring& ring() const { return ring_; }
  int degree() const { return ring_->r(); }
  i64 coeff(int i) const { return c_[i]; }
  std::vector<i64> coeffs() const { return {c_.begin(), c_.begin() + degree()}; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.begin() + degree(), [](i64 c) { return c == 0; });
  }

  Valuation valuation() const {
    const i64 p = ring_->p();
    int best = ring_->precision();
    bool any = false;
    for (int i = 0; i < degree(); ++i) {
      if (c_[i] == 0) continue;
      any = true;
      best = std::min(best, detail::p_adic_val(c_[i], p));
    }
    if (!any) return Valuation::at_least(ring_->precision());
    return {best, true};
  }

  bool is_unit() const {
    const i64 p = ring_->p();
    for (int i = 0; i < degree(); ++i)
      if (c_[i] % p != 0) return true;
    return false;
  }

  /// Equality of residues in F_{p^r}.
  bool residue_equal(const WittElem& o) const {
    check(o);
    const i64 p = ring_->p();
    for (int i = 0; i < degree(); ++i)
      if ((c_[i] - o.c_[i]) % p != 0) return false;
    return true;
  }

  WittElem operator+(const WittElem& o) const {
    check(o);
    WittElem out(ring_);
    const i64 q = ring_->modulus_pn();
    for (int i = 0; i < degree(); ++i) {
      i64 s = c_[i] + o.c_[i];
      out.c_[i] = s >= q ? s - q : s;
    }
    return out;
  }

  WittElem operator-(const WittElem& o) const {
    check(o);
    WittElem out(ring_);
    const i64 q = ring_->modulus_pn();
    for (int i = 0; i < degree(); ++i) {
      i64 s = c_[i] - o.c_[i];
      out.c_[i] = s < 0 ? s + q : s;
    }
    return out;
  }

  WittElem operator-() const { return WittElem(ring_) - *this; }

  WittElem operator*(const WittElem& o) const {
    check(o);
    const int r = degree();
    const i64 q = ring_->modulus_pn();
    const auto& f = ring_->modulus();
    std::array<i64, 2 * kMaxDegree> prod{};
    for (int i = 0; i < r; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < r; ++j) {
        if (o.c_[j] == 0) continue;
        prod[i + j] = detail::reduce(static_cast<i128>(prod[i + j]) + static_cast<i128>(c_[i]) * o.c_[j], q);
      }
    }
    for (int k = 2 * r - 2; k >= r; --k) {
      const i64 c = prod[k];
      if (c == 0) continue;
      for (int m = 0; m < r; ++m)
        prod[k - r + m] = detail::reduce(static_cast<i128>(prod[k - r + m]) - static_cast<i128>(c) * f[m], q);
    }
    WittElem out(ring_);
    std::copy(prod.begin(), prod.begin() + r, out.c_.begin());
    return out;
  }

  WittElem& operator+=(const WittElem& o) { return *this = *this + o; }
  WittElem& operator-=(const WittElem& o) { return *this = *this - o; }
  WittElem& operator*=(const WittElem& o) { return *this = *this * o; }

  bool operator==(const WittElem& o) const {
    return same_ring(ring_, o.ring_) && std::equal(c_.begin(), c_.begin() + degree(), o.c_.begin());
  }

  /// sigma^power, power taken mod r.
  WittElem sigma(int power = 1) const {
    const int r = degree();
    const int k = ((power % r) + r) % r;
    if (k == 0) return *this;
    const i64 q = ring_->modulus_pn();
    WittElem out(ring_);
    for (int j = 0; j < r; ++j) {
      if (c_[j] == 0) continue;
      const auto& img = ring_->sigma_image(k, j);
      for (int i = 0; i < r; ++i)
        out.c_[i] = detail::reduce(static_cast<i128>(out.c_[i]) + static_cast<i128>(c_[j]) * img[i], q);
    }
    return out;
  }

  WittElem inverse() const {
    auto inv = detail::ring_inverse(coeffs(), ring_->modulus(), ring_->p(), ring_->modulus_pn(), degree());
    if (!inv) fail(ErrorKind::not_invertible, "element is not a unit");
    return WittElem(ring_, std::span<const i64>(*inv));
  }

  /// Exact division by p^e. The top e digits of the quotient are not
  /// determined by the input and are returned as zero.
  WittElem div_p_power(int e) const {
    if (e == 0) return *this;
    auto v = valuation();
    if (v.value < e) fail(ErrorKind::division_fails, "element not divisible by p^" + std::to_string(e));
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= ring_->p();
    WittElem out(ring_);
    for (int i = 0; i < degree(); ++i) out.c_[i] = c_[i] / pe;
    return out;
  }

  /// Same element viewed at a lower precision n <= N (its own ring object).
  WittElem reduce_to(const Ring& lower) const {
    require(lower->p() == ring_->p() && lower->r() == ring_->r() && lower->precision() <= ring_->precision(),
            "reduce_to needs a ring of lower precision over the same field");
    return WittElem(lower, std::span<const i64>(c_.data(), degree()));
  }

  /// Teichmueller representative of the residue of this element.
  WittElem teichmuller() const {
    WittElem y = *this;
    const int n = ring_->precision();
    for (int step = 0; step < n; ++step)
      for (int j = 0; j < degree(); ++j) y = y.pow(ring_->p());
    return y;
  }

  WittElem pow(i64 e) const {
    WittElem acc = one(ring_), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

 private:
  void check(const WittElem& o) const {
    if (!same_ring(ring_, o.ring_)) fail(ErrorKind::usage, "elements belong to different rings");
  }

  Ring ring_;
  std::array<i64, kMaxDegree> c_;
};

inline WittElem sigma(const WittElem& a, int power) { return a.sigma(power); }

}  // namespace phislope
