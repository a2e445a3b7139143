#pragma once

// Slope polygons stored as sorted slope multisets.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "phislope/semilinear.hpp"

namespace phislope {

using Rational = boost::rational<std::int64_t>;

struct SlopeRun {
  Rational slope;
  std::int64_t mult = 0;

  bool operator==(const SlopeRun&) const = default;
};

class SlopePolygon {
 public:
  SlopePolygon() = default;

  /// Sorts ascending and merges equal slopes.
  explicit SlopePolygon(std::vector<SlopeRun> runs) {
    for (const auto& run : runs) require(run.mult >= 1, "slope multiplicity must be positive");
    std::sort(runs.begin(), runs.end(), [](const SlopeRun& a, const SlopeRun& b) { return a.slope < b.slope; });
    for (const auto& run : runs) {
      if (!runs_.empty() && runs_.back().slope == run.slope)
        runs_.back().mult += run.mult;
      else
        runs_.push_back(run);
    }
  }

  static SlopePolygon from_slopes(const std::vector<Rational>& slopes) {
    std::vector<SlopeRun> runs;
    for (const auto& s : slopes) runs.push_back({s, 1});
    return SlopePolygon(std::move(runs));
  }

  const std::vector<SlopeRun>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  std::int64_t rank() const {
    std::int64_t n = 0;
    for (const auto& run : runs_) n += run.mult;
    return n;
  }

  /// Sum of all slopes (the height of the right endpoint).
  Rational total() const {
    Rational s = 0;
    for (const auto& run : runs_) s += run.slope * run.mult;
    return s;
  }

  /// Height of the polygon at integer abscissa x in [0, rank].
  Rational value_at(std::int64_t x) const {
    require(x >= 0 && x <= rank(), "abscissa outside polygon");
    Rational s = 0;
    for (const auto& run : runs_) {
      const std::int64_t take = std::min(x, run.mult);
      s += run.slope * take;
      x -= take;
      if (x == 0) break;
    }
    return s;
  }

  /// Break points (x, y) including both endpoints.
  std::vector<std::pair<std::int64_t, Rational>> vertices() const {
    std::vector<std::pair<std::int64_t, Rational>> out{{0, Rational(0)}};
    std::int64_t x = 0;
    Rational y = 0;
    for (const auto& run : runs_) {
      x += run.mult;
      y += run.slope * run.mult;
      out.emplace_back(x, y);
    }
    return out;
  }

  SlopePolygon scale_slopes(Rational factor) const {
    std::vector<SlopeRun> runs = runs_;
    for (auto& run : runs) run.slope *= factor;
    return SlopePolygon(std::move(runs));
  }

  SlopePolygon shift_slopes(Rational delta) const {
    std::vector<SlopeRun> runs = runs_;
    for (auto& run : runs) run.slope += delta;
    return SlopePolygon(std::move(runs));
  }

  SlopePolygon scale_multiplicities(std::int64_t factor) const {
    require(factor >= 1, "multiplicity factor must be positive");
    std::vector<SlopeRun> runs = runs_;
    for (auto& run : runs) run.mult *= factor;
    return SlopePolygon(std::move(runs));
  }

  /// Exact division of every multiplicity; fails if some run is not divisible.
  SlopePolygon divide_multiplicities(std::int64_t divisor) const {
    require(divisor >= 1, "multiplicity divisor must be positive");
    std::vector<SlopeRun> runs = runs_;
    for (auto& run : runs) {
      require(run.mult % divisor == 0, "multiplicity not divisible");
      run.mult /= divisor;
    }
    return SlopePolygon(std::move(runs));
  }

  bool operator==(const SlopePolygon&) const = default;
  bool operator<(const SlopePolygon& o) const { return to_string() < o.to_string(); }

  /// "mult x num/den" tokens joined by ", ", e.g. "2 x 0/1, 2 x 1/2".
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (i) os << ", ";
      os << runs_[i].mult << " x " << runs_[i].slope.numerator() << '/' << runs_[i].slope.denominator();
    }
    return os.str();
  }

  static SlopePolygon parse(std::string_view text) {
    std::vector<SlopeRun> runs;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto read_int = [&](const char* what) {
      skip_ws();
      std::int64_t v = 0;
      auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (res.ec != std::errc()) fail(ErrorKind::parse, std::string("polygon: expected ") + what);
      pos = static_cast<std::size_t>(res.ptr - text.data());
      return v;
    };
    auto expect = [&](char c) {
      skip_ws();
      if (pos >= text.size() || text[pos] != c) fail(ErrorKind::parse, std::string("polygon: expected '") + c + "'");
      ++pos;
    };
    skip_ws();
    if (pos == text.size()) return SlopePolygon();
    for (;;) {
      const auto mult = read_int("multiplicity");
      expect('x');
      const auto num = read_int("slope numerator");
      expect('/');
      const auto den = read_int("slope denominator");
      if (den <= 0) fail(ErrorKind::parse, "polygon: slope denominator must be positive");
      if (mult <= 0) fail(ErrorKind::parse, "polygon: multiplicity must be positive");
      runs.push_back({Rational(num, den), mult});
      skip_ws();
      if (pos == text.size()) break;
      expect(',');
    }
    return SlopePolygon(std::move(runs));
  }

 private:
  std::vector<SlopeRun> runs_;
};

inline std::ostream& operator<<(std::ostream& os, const SlopePolygon& poly) { return os << poly.to_string(); }

namespace detail {

// Lower convex hull of points sorted by x; returns the indices of hull vertices.
inline std::vector<std::size_t> lower_hull(const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (hull.size() >= 2) {
      const auto& a = pts[hull[hull.size() - 2]];
      const auto& b = pts[hull.back()];
      const auto& c = pts[i];
      // Drop b unless it lies strictly below segment a-c.
      const i128 cross = static_cast<i128>(b.first - a.first) * (c.second - a.second) -
                         static_cast<i128>(b.second - a.second) * (c.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

}  // namespace detail

/// Slopes of the roots of a monic polynomial (coefficients low-first) from
/// the lower convex hull of (i, v(c_{n-i})). Inexact valuations are treated
/// as unknown values >= N and must not be able to reach below the hull.
inline SlopePolygon newton_polygon_of_charpoly(const std::vector<WittElem>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  std::vector<std::pair<std::int64_t, std::int64_t>> lower_bounds;
  for (std::size_t i = 0; i <= n; ++i) {
    auto v = coeffs[n - i].valuation();
    if (v.exact)
      pts.emplace_back(static_cast<std::int64_t>(i), v.value);
    else
      lower_bounds.emplace_back(static_cast<std::int64_t>(i), v.value);
  }
  if (pts.empty() || pts.back().first != static_cast<std::int64_t>(n))
    fail(ErrorKind::precision_exhausted, "determinant vanishes modulo p^N");
  const auto hull = detail::lower_hull(pts);
  std::vector<SlopeRun> runs;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const auto& a = pts[hull[k - 1]];
    const auto& b = pts[hull[k]];
    runs.push_back({Rational(b.second - a.second, b.first - a.first), b.first - a.first});
  }
  SlopePolygon poly(std::move(runs));
  for (const auto& [x, bound] : lower_bounds) {
    if (Rational(bound) < poly.value_at(x))
      fail(ErrorKind::precision_exhausted,
           "coefficient " + std::to_string(n - static_cast<std::size_t>(x)) + " is too imprecise to fix the hull");
  }
  return poly;
}

/// Newton polygon of a square sigma^a-linear map: slopes of its linearization
/// divided by the number of compositions it took.
inline SlopePolygon newton_polygon(const SigmaMat& f) {
  require(f.square(), "newton_polygon: map must be square");
  const int k = linearization_length(f);
  const SigmaMat lin = iterate(f, k);
  return newton_polygon_of_charpoly(charpoly(lin.entries())).scale_slopes(Rational(1, k));
}

inline SlopePolygon hodge_polygon_from_filtration(const std::vector<int>& jumps) {
  std::vector<Rational> slopes;
  for (int j : jumps) slopes.emplace_back(j);
  return SlopePolygon::from_slopes(slopes);
}

inline SlopePolygon hodge_polygon_from_matrix(const WMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<Rational> slopes;
  for (int v : snf.diag_valuations) slopes.emplace_back(v);
  return SlopePolygon::from_slopes(slopes);
}

inline SlopePolygon hodge_polygon_from_matrix(const SigmaMat& f) { return hodge_polygon_from_matrix(f.entries()); }

struct DominanceReport {
  bool dominates = false;
  bool endpoints_equal = false;
  Rational newton_end;
  Rational hodge_end;
  /// First integer abscissa where the Newton polygon dips below the Hodge polygon.
  std::optional<std::int64_t> first_violation;
};

/// True iff the Newton polygon lies on or above the Hodge polygon at every
/// integer abscissa and the endpoints agree.
inline DominanceReport dominates(const SlopePolygon& newton, const SlopePolygon& hodge) {
  if (newton.rank() != hodge.rank()) fail(ErrorKind::usage, "dominates: rank mismatch");
  DominanceReport rep;
  rep.newton_end = newton.total();
  rep.hodge_end = hodge.total();
  rep.endpoints_equal = rep.newton_end == rep.hodge_end;
  for (std::int64_t x = 0; x <= newton.rank(); ++x)
    if (newton.value_at(x) < hodge.value_at(x)) {
      rep.first_violation = x;
      break;
    }
  rep.dominates = rep.endpoints_equal && !rep.first_violation;
  return rep;
}

inline SlopePolygon tensor_slopes(const SlopePolygon& a, const SlopePolygon& b) {
  std::vector<SlopeRun> runs;
  for (const auto& x : a.runs())
    for (const auto& y : b.runs()) runs.push_back({x.slope + y.slope, x.mult * y.mult});
  return SlopePolygon(std::move(runs));
}

inline SlopePolygon tensor_power_slopes(const SlopePolygon& a, int k) {
  require(k >= 1, "tensor power must be >= 1");
  SlopePolygon acc = a;
  for (int i = 1; i < k; ++i) acc = tensor_slopes(acc, a);
  return acc;
}

/// Unordered pairs of basis vectors, diagonal included.
inline SlopePolygon sym2_slopes(const SlopePolygon& a) {
  std::vector<SlopeRun> runs;
  const auto& rs = a.runs();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    runs.push_back({rs[i].slope * 2, rs[i].mult * (rs[i].mult + 1) / 2});
    for (std::size_t j = i + 1; j < rs.size(); ++j) runs.push_back({rs[i].slope + rs[j].slope, rs[i].mult * rs[j].mult});
  }
  return SlopePolygon(std::move(runs));
}

/// Unordered pairs of distinct basis vectors.
inline SlopePolygon wedge2_slopes(const SlopePolygon& a) {
  std::vector<SlopeRun> runs;
  const auto& rs = a.runs();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].mult >= 2) runs.push_back({rs[i].slope * 2, rs[i].mult * (rs[i].mult - 1) / 2});
    for (std::size_t j = i + 1; j < rs.size(); ++j) runs.push_back({rs[i].slope + rs[j].slope, rs[i].mult * rs[j].mult});
  }
  return SlopePolygon(std::move(runs));
}

}  // namespace phislope
