#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace entx {

/// Raised when an operation is called outside its domain (bad parameters,
/// violated invariants, perturbative regime exceeded).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot produce a meaningful value
/// (degenerate ground state, norm drift, no bracketing root).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-evaluation diagnostic flags. They never abort a computation; sweeps
/// record them in the flags column.
enum class Flag : std::uint32_t {
  kNone = 0,
  kQuadratureBudget = 1u << 0,    // subdivision budget exhausted
  kSeriesNonConverged = 1u << 1,  // image/series tail rule not met
  kBesselTruncated = 1u << 2,     // angular Bessel series still above tail bound
  kAsymptoticRegime = 1u << 3,    // asymptotic formula used outside its limits
  kEmptyWindowSum = 1u << 4,      // closed-form window count M_max = 0
  kLowTemperatureRegime = 1u << 5,
};

using Flags = std::uint32_t;

constexpr Flags operator|(Flags a, Flag b) { return a | static_cast<Flags>(b); }
constexpr bool has_flag(Flags set, Flag f) { return (set & static_cast<Flags>(f)) != 0; }

/// Pipe-separated flag names, "" when none are set.
std::string describe_flags(Flags flags);

}  // namespace entx
