#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmsa {

enum class Errc {
  invalid_argument,
  domain,
  range,
  infeasible_likely,
  infeasible,
  repair_budget_exceeded,
  tighten_too_large,
  size_limit,
  ambiguous_regime,
  io,
  format,
  shape,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "INVALID-ARGUMENT";
    case Errc::domain: return "DOMAIN";
    case Errc::range: return "RANGE";
    case Errc::infeasible_likely: return "INFEASIBLE-LIKELY";
    case Errc::infeasible: return "INFEASIBLE";
    case Errc::repair_budget_exceeded: return "REPAIR-BUDGET-EXCEEDED";
    case Errc::tighten_too_large: return "TIGHTEN-TOO-LARGE";
    case Errc::size_limit: return "SIZE-LIMIT";
    case Errc::ambiguous_regime: return "AMBIGUOUS-REGIME";
    case Errc::io: return "IO";
    case Errc::format: return "FORMAT";
    case Errc::shape: return "SHAPE";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace cmsa
