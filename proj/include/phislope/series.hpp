#pragma once

// One-variable truncated power series W_N(F_{p^r})[t] / t^M. Frobenius acts
// on coefficients and sends t to t^p.

#include <optional>
#include <vector>

#include "phislope/witt.hpp"

namespace phislope {

class WittSeries {
 public:
  WittSeries(Ring ring, int precision_t) : ring_(ring), coeffs_(checked(precision_t), WittElem(ring)) {}

  WittSeries(Ring ring, int precision_t, std::vector<WittElem> coeffs) : WittSeries(std::move(ring), precision_t) {
    require(coeffs.size() <= coeffs_.size(), "more coefficients than the t-precision allows");
    for (std::size_t j = 0; j < coeffs.size(); ++j) set(static_cast<int>(j), coeffs[j]);
  }

  static WittSeries constant(const WittElem& c, int precision_t) {
    WittSeries s(c.ring(), precision_t);
    s.coeffs_[0] = c;
    return s;
  }

  /// t^j (zero when j >= M).
  static WittSeries monomial(Ring ring, int precision_t, int j, const WittElem& c) {
    WittSeries s(std::move(ring), precision_t);
    if (j < precision_t) s.coeffs_[j] = c;
    return s;
  }

  static WittSeries t(Ring ring, int precision_t) {
    auto one = WittElem::one(ring);
    return monomial(std::move(ring), precision_t, 1, one);
  }

  const Ring& ring() const { return ring_; }
  int precision_t() const { return static_cast<int>(coeffs_.size()); }
  const WittElem& coeff(int j) const { return coeffs_[j]; }
  const std::vector<WittElem>& coeffs() const { return coeffs_; }

  void set(int j, const WittElem& c) {
    require(same_ring(c.ring(), ring_), "series coefficient from a different ring");
    coeffs_.at(j) = c;
  }

  WittSeries operator+(const WittSeries& o) const {
    check(o);
    WittSeries out = *this;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) out.coeffs_[j] += o.coeffs_[j];
    return out;
  }

  WittSeries operator-(const WittSeries& o) const {
    check(o);
    WittSeries out = *this;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) out.coeffs_[j] -= o.coeffs_[j];
    return out;
  }

  WittSeries operator-() const { return WittSeries(ring_, precision_t()) - *this; }

  WittSeries operator*(const WittSeries& o) const {
    check(o);
    const int m = precision_t();
    WittSeries out(ring_, m);
    for (int i = 0; i < m; ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (int j = 0; i + j < m; ++j) {
        if (o.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    return out;
  }

  WittSeries operator*(const WittElem& c) const {
    WittSeries out = *this;
    for (auto& x : out.coeffs_) x = c * x;
    return out;
  }

  WittSeries& operator+=(const WittSeries& o) { return *this = *this + o; }
  WittSeries& operator-=(const WittSeries& o) { return *this = *this - o; }
  WittSeries& operator*=(const WittSeries& o) { return *this = *this * o; }

  bool operator==(const WittSeries& o) const { return coeffs_ == o.coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// sigma^k on coefficients together with t -> t^{p^k}, truncated at t^M.
  WittSeries sigma(int power = 1) const {
    require(power >= 0, "series Frobenius power must be nonnegative");
    const int m = precision_t();
    // t^sigma = t^p even when r = 1; the power of t is not reduced mod r.
    i64 stretch = 1;
    for (int i = 0; i < power && stretch < m; ++i) stretch *= ring_->p();
    WittSeries out(ring_, m);
    for (int j = 0; j < m; ++j) {
      const i64 target = static_cast<i64>(j) * stretch;
      if (target >= m) break;
      out.coeffs_[target] = coeffs_[j].sigma(power);
    }
    return out;
  }

  /// t-adic order of the reduction mod p; nullopt means "at least M".
  std::optional<int> order_mod_p() const {
    for (int j = 0; j < precision_t(); ++j)
      if (coeffs_[j].is_unit()) return j;
    return std::nullopt;
  }

  /// Exponents whose coefficient is nonzero mod p.
  std::vector<int> support_mod_p() const {
    std::vector<int> out;
    for (int j = 0; j < precision_t(); ++j)
      if (coeffs_[j].is_unit()) out.push_back(j);
    return out;
  }

  /// Minimum coefficient valuation.
  Valuation valuation() const {
    Valuation best = Valuation::at_least(ring_->precision());
    for (const auto& c : coeffs_) {
      auto v = c.valuation();
      if (v.exact && (!best.exact || v.value < best.value)) best = v;
    }
    return best;
  }

  WittSeries div_p_power(int e) const {
    WittSeries out = *this;
    for (auto& c : out.coeffs_) c = c.div_p_power(e);
    return out;
  }

 private:
  static std::size_t checked(int m) {
    require(m >= 1, "t-precision must be >= 1");
    return static_cast<std::size_t>(m);
  }

  void check(const WittSeries& o) const {
    require(same_ring(ring_, o.ring_), "series over different rings");
    require(precision_t() == o.precision_t(), "series with different t-precision");
  }

  Ring ring_;
  std::vector<WittElem> coeffs_;
};

inline WittSeries sigma(const WittSeries& s, int power) { return s.sigma(power); }

}  // namespace phislope
