#pragma once

// JSON text forms. Integers travel as decimal strings so p^N-sized values
// round-trip exactly.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phislope/display.hpp"
#include "phislope/phimod.hpp"

namespace phislope::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::parse, "field '" + path + "': " + what);
}

inline const json& at(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline i64 to_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<i64>();
  if (!j.is_string()) bad(path, "expected a decimal integer string");
  const auto s = j.get<std::string>();
  i64 v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(path, "not a decimal integer: \"" + s + "\"");
  return v;
}

inline int to_small_int(const json& j, const std::string& path) {
  const i64 v = to_int(j, path);
  if (v < -(1 << 30) || v > (1 << 30)) bad(path, "integer out of range");
  return static_cast<int>(v);
}

inline const json& array_of(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  if (n != static_cast<std::size_t>(-1) && j.size() != n)
    bad(path, "expected " + std::to_string(n) + " items, found " + std::to_string(j.size()));
  return j;
}

template <class F>
auto guard(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    bad(path, e.what());
  }
}

}  // namespace detail

inline json to_json(const RingParams& r) {
  json mod = json::array();
  for (i64 c : r.modulus()) mod.push_back(std::to_string(c));
  return {{"p", r.p()}, {"r", r.r()}, {"precision_p", r.precision()}, {"modulus", mod}};
}

inline Ring ring_from_json(const json& j, const std::string& path = "params") {
  using namespace detail;
  const i64 p = to_int(at(j, "p", path), join(path, "p"));
  const int r = to_small_int(at(j, "r", path), join(path, "r"));
  const int n = to_small_int(at(j, "precision_p", path), join(path, "precision_p"));
  if (!j.contains("modulus")) return guard(path, [&] { return RingParams::make_default(p, r, n); });
  const auto& mj = array_of(at(j, "modulus", path), -1, join(path, "modulus"));
  std::vector<i64> mod;
  for (std::size_t i = 0; i < mj.size(); ++i) mod.push_back(to_int(mj[i], join(path, "modulus") + "[" + std::to_string(i) + "]"));
  return guard(join(path, "modulus"), [&] { return RingParams::make(p, r, n, mod); });
}

inline json to_json(const WittElem& a) {
  json out = json::array();
  for (i64 c : a.coeffs()) out.push_back(std::to_string(c));
  return out;
}

inline WittElem elem_from_json(const json& j, const Ring& ring, const std::string& path) {
  using namespace detail;
  if (j.is_number_integer() || j.is_string()) return WittElem::from_int(ring, to_int(j, path));
  const auto& arr = array_of(j, ring->r(), path);
  std::vector<i64> c;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const i64 v = to_int(arr[i], path + "[" + std::to_string(i) + "]");
    if (v < 0 || v >= ring->modulus_pn()) bad(path + "[" + std::to_string(i) + "]", "coefficient outside [0, p^N)");
    c.push_back(v);
  }
  return WittElem(ring, std::span<const i64>(c));
}

inline json to_json(const WMatrix& m, int twist) {
  json entries = json::array();
  for (const auto& e : m.data()) entries.push_back(to_json(e));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"twist", twist}, {"entries", entries}};
}

inline json to_json(const SigmaMat& m) { return to_json(m.entries(), m.twist()); }

inline SigmaMat sigmamat_from_json(const json& j, const Ring& ring, const std::string& path) {
  using namespace detail;
  const int rows = to_small_int(at(j, "rows", path), join(path, "rows"));
  const int cols = to_small_int(at(j, "cols", path), join(path, "cols"));
  const int twist = j.contains("twist") ? to_small_int(j["twist"], join(path, "twist")) : 0;
  if (rows < 1 || cols < 1) bad(path, "matrix must be nonempty");
  const auto& ej = array_of(at(j, "entries", path), static_cast<std::size_t>(rows) * cols, join(path, "entries"));
  std::vector<WittElem> data;
  for (std::size_t i = 0; i < ej.size(); ++i)
    data.push_back(elem_from_json(ej[i], ring, join(path, "entries") + "[" + std::to_string(i) + "]"));
  return SigmaMat(WMatrix(rows, cols, std::move(data)), twist);
}

inline json to_json(const FilteredPhiModule& m) {
  json out{{"params", to_json(*m.ring())},
           {"rank", m.rank()},
           {"frobenius", to_json(m.frobenius())},
           {"filtration_jumps", m.filtration_jumps()}};
  if (m.endo()) out["endo"] = to_json(*m.endo());
  return out;
}

inline FilteredPhiModule module_from_json(const json& j) {
  using namespace detail;
  const Ring ring = ring_from_json(at(j, "params", ""));
  const int rank = to_small_int(at(j, "rank", ""), "rank");
  const SigmaMat f = sigmamat_from_json(at(j, "frobenius", ""), ring, "frobenius");
  if (static_cast<int>(f.rows()) != rank || !f.square()) bad("frobenius", "must be a square matrix of size rank");
  const auto& jj = array_of(at(j, "filtration_jumps", ""), rank, "filtration_jumps");
  std::vector<int> jumps;
  for (std::size_t i = 0; i < jj.size(); ++i) jumps.push_back(to_small_int(jj[i], "filtration_jumps[" + std::to_string(i) + "]"));
  std::optional<SigmaMat> endo;
  if (j.contains("endo")) endo = sigmamat_from_json(j["endo"], ring, "endo");
  return guard("endo", [&] { return FilteredPhiModule(f, jumps, endo); });
}

inline json to_json(const DisplayData& d, int precision_t) {
  const auto& e = d.entries();
  json entries{{"a1", to_json(e.a1)}, {"a2", to_json(e.a2)}, {"b1", to_json(e.b1)}, {"b2", to_json(e.b2)},
               {"c1", to_json(e.c1)}, {"c2", to_json(e.c2)}, {"d1", to_json(e.d1)}, {"d2", to_json(e.d2)}};
  json out{{"params", to_json(*d.ring())}, {"entries", entries}, {"precision_t", precision_t}};
  if (!d.links().empty()) {
    json links = json::array();
    for (const auto& l : d.links()) links.push_back(to_json(l, 0));
    out["links"] = links;
  }
  return out;
}

struct DisplayInput {
  DisplayData display;
  int precision_t;
};

inline DisplayInput display_from_json(const json& j) {
  using namespace detail;
  const Ring ring = ring_from_json(at(j, "params", ""));
  const auto& ej = at(j, "entries", "");
  auto get = [&](const char* name) { return elem_from_json(at(ej, name, "entries"), ring, std::string("entries.") + name); };
  DisplayEntries e{get("a1"), get("a2"), get("b1"), get("b2"), get("c1"), get("c2"), get("d1"), get("d2")};
  std::vector<WMatrix> links;
  if (j.contains("links")) {
    const auto& lj = array_of(j["links"], -1, "links");
    for (std::size_t i = 0; i < lj.size(); ++i)
      links.push_back(sigmamat_from_json(lj[i], ring, "links[" + std::to_string(i) + "]").entries());
  }
  const int m = j.contains("precision_t") ? to_small_int(j["precision_t"], "precision_t") : default_precision_t(ring->p());
  if (m < 1) bad("precision_t", "must be >= 1");
  // Domain failures (non-invertible entries) are not parse errors.
  return {DisplayData::build(e, std::move(links)), m};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace phislope::io
