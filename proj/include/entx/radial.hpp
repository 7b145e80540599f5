#pragma once

// One-dimensional radial momentum integrals over [0, cutoff] shared by the
// field scenarios. Kernels are generic callables accepting double and
// std::complex<double>, so the oscillatory tail can be moved onto a ray in
// the complex plane when the cutoff spans too many periods.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "entx/error.hpp"
#include "entx/numerics.hpp"

namespace entx::radial {

struct Integral {
  double value = 0.0;
  Flags flags = 0;
};

/// Oscillation count above which the sine integral switches to the complex
/// ray representation of its tail.
inline constexpr double kMaxHalfPeriods = 4096.0;

/// sqrt(p^2 + m^2) without overflow at cutoffs beyond 1e154. The complex
/// form is the principal branch for Re p > 0.
inline double energy(double p, double m2) { return std::hypot(p, std::sqrt(m2)); }

inline std::complex<double> energy(std::complex<double> p, double m2) {
  return p * std::sqrt(1.0 + m2 / p / p);
}

inline std::vector<double> merge_breakpoints(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/// Geometric breakpoints from a tenth of the smallest physical scale up to
/// the cutoff; keeps integrands with ~1/p tails and sharp low-p features
/// resolved when the cutoff is many decades above them.
inline std::vector<double> scale_breakpoints(double cutoff, double smallest_scale) {
  if (!(smallest_scale > 0.0)) return {};
  return numerics::geometric_breakpoints(0.0, cutoff, 0.1 * smallest_scale, 4.0);
}

/// int_0^cutoff kernel(p) dp for a non-oscillatory kernel.
template <class K>
Integral plain(const K& kernel, double cutoff, double smallest_scale,
               const numerics::QuadratureSpec& spec) {
  Integral out;
  if (!(cutoff > 0.0)) return out;
  auto bp = scale_breakpoints(cutoff, smallest_scale);
  auto r = numerics::integrate_adaptive([&](double p) { return kernel(p); }, 0.0, cutoff, bp, spec);
  out.value = r.value;
  if (!r.converged) out.flags = out.flags | Flag::kQuadratureBudget;
  return out;
}

/// int_0^cutoff kernel(p) sin(omega p) dp. The kernel must be analytic in
/// Re p > 0 (singularities only on the imaginary axis) for the ray tail.
template <class K>
Integral sine(const K& kernel, double omega, double cutoff, double smallest_scale,
              const numerics::QuadratureSpec& spec) {
  Integral out;
  if (!(cutoff > 0.0)) return out;
  const double split = kMaxHalfPeriods * std::numbers::pi / omega;
  const double upper = std::min(cutoff, split);
  auto bp = merge_breakpoints(scale_breakpoints(upper, smallest_scale),
                              numerics::oscillation_breakpoints(0.0, upper, omega));
  auto r = numerics::integrate_adaptive(
      [&](double p) { return kernel(p) * std::sin(omega * p); }, 0.0, upper, bp, spec);
  out.value = r.value;
  if (!r.converged) out.flags = out.flags | Flag::kQuadratureBudget;
  if (cutoff > split) {
    auto g = [&](std::complex<double> p) { return kernel(p); };
    auto from_split = numerics::fourier_tail(g, split, omega, spec);
    auto from_cut = numerics::fourier_tail(g, cutoff, omega, spec);
    out.value += from_split.value.imag() - from_cut.value.imag();
    if (!from_split.converged || !from_cut.converged) {
      out.flags = out.flags | Flag::kQuadratureBudget;
    }
  }
  return out;
}

}  // namespace entx::radial
