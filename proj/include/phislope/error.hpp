#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phislope {

enum class ErrorKind {
  usage,               // mismatched rings, bad dimensions, violated preconditions
  invalid_modulus,
  precision_exhausted,
  not_invertible,
  not_semisimple,
  not_cyclic,
  constraint_degenerate,
  division_fails,
  unclassifiable,
  odd_total,
  non_convergence,
  parse,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::invalid_modulus: return "invalid-modulus";
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::not_invertible: return "not-invertible";
    case ErrorKind::not_semisimple: return "not-semisimple";
    case ErrorKind::not_cyclic: return "not-cyclic";
    case ErrorKind::constraint_degenerate: return "constraint-degenerate";
    case ErrorKind::division_fails: return "division-fails";
    case ErrorKind::unclassifiable: return "unclassifiable";
    case ErrorKind::odd_total: return "odd-total";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

/// Every failure the library reports carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::usage, what);
}

}  // namespace phislope
