#include "entx/numerics.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "entx/error.hpp"

namespace entx::numerics {

using std::numbers::pi;

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw PreconditionError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw PreconditionError("max_subdivisions must be >= 1");
}

void SeriesSpec::validate() const {
  if (max_terms < 1) throw PreconditionError("series max_terms must be >= 1");
  if (!(tail_tol > 0.0)) throw PreconditionError("series tail_tol must be positive");
  if (tail_run < 1) throw PreconditionError("series tail_run must be >= 1");
}

std::vector<double> oscillation_breakpoints(double a, double b, double omega,
                                            std::size_t max_panels) {
  std::vector<double> pts;
  if (!(omega > 0.0) || !(b > a) || omega * (b - a) <= 50.0) return pts;
  const double step = pi / omega;
  const double first = std::floor(a / step) + 1.0;
  for (double k = first; pts.size() < max_panels; k += 1.0) {
    const double x = k * step;
    if (x >= b) break;
    pts.push_back(x);
  }
  return pts;
}

std::vector<double> geometric_breakpoints(double a, double b, double start, double ratio) {
  std::vector<double> pts;
  if (!(start > 0.0) || !(ratio > 1.0)) return pts;
  for (double x = start; x < b; x *= ratio) {
    if (x > a) pts.push_back(x);
  }
  return pts;
}

SeriesResult sum_images(const std::function<double(int)>& term, const SeriesSpec& spec) {
  spec.validate();
  SeriesResult out;
  double partial = term(0);
  int quiet = 0;
  int n = 1;
  for (; n <= spec.max_terms; ++n) {
    const double pair = term(n) + term(-n);
    partial += pair;
    out.last_pair = std::abs(pair);
    if (std::abs(pair) <= spec.tail_tol * std::abs(partial)) {
      if (++quiet >= spec.tail_run) break;
    } else {
      quiet = 0;
    }
  }
  out.value = partial;
  out.terms = std::min(n, spec.max_terms);
  out.converged = quiet >= spec.tail_run;
  return out;
}

double closed_sine_sum(double a, double q) {
  const double s = std::sin(0.5 * pi * a);
  if (std::abs(s) < 1e-12) {
    throw PreconditionError("closed_sine_sum: sin(pi a / 2) vanishes (a even integer)");
  }
  const double m = std::floor(q / pi);
  if (std::abs(q - m * pi) < 1e-12 || std::abs(q - (m + 1.0) * pi) < 1e-12) {
    throw PreconditionError("closed_sine_sum: q on a window boundary m*pi");
  }
  return pi / (2.0 * s) * std::sin((2.0 * m + 1.0) * 0.5 * pi * a);
}

double lambert_w0(double x) {
  const double branch = -std::exp(-1.0);
  if (x < branch - 1e-15) throw PreconditionError("lambert_w0: x < -1/e");
  if (x <= branch) return -1.0;
  return boost::math::lambert_w0(x);
}

namespace {

constexpr double kRescaleHigh = 1e200;
constexpr double kRescaleFactor = 1e-200;

}  // namespace

bool bessel_j_half_array(double x, std::span<double> out) {
  if (!(x > 0.0)) throw PreconditionError("bessel_j_half: x must be positive");
  const std::size_t count = out.size();
  if (count == 0) return false;
  const double norm = std::sqrt(2.0 / (pi * x));
  const double j_m = norm * std::cos(x);  // J_{-1/2}
  const double j_0 = norm * std::sin(x);  // J_{1/2}

  if (static_cast<double>(count - 1) <= x) {
    // Upward recurrence is stable while the order stays below x.
    double prev = j_m;
    double cur = j_0;
    out[0] = cur;
    for (std::size_t k = 0; k + 1 < count; ++k) {
      const double next = (2.0 * static_cast<double>(k) + 1.0) / x * cur - prev;
      prev = cur;
      cur = next;
      out[k + 1] = cur;
    }
    return false;
  }

  // Miller: start well above both the requested order and x, recur down with
  // J_{v-1} = (2v/x) J_v - J_{v+1}, then normalize with the closed forms.
  const double top = std::max(static_cast<double>(count), x);
  const auto start = static_cast<std::size_t>(top + 20.0 + std::sqrt(40.0 * top));
  double above = 0.0;    // u_{k+1}
  double cur = 1e-300;   // u_k at k = start
  for (std::size_t k = start; k-- > 0;) {
    // Now cur holds u_{k+1}; produce u_k.
    const double nu = static_cast<double>(k + 1) + 0.5;
    const double next = 2.0 * nu / x * cur - above;
    above = cur;
    cur = next;
    if (k < count) out[k] = cur;
    if (std::abs(cur) > kRescaleHigh) {
      cur *= kRescaleFactor;
      above *= kRescaleFactor;
      for (std::size_t i = k; i < count; ++i) out[i] *= kRescaleFactor;
    }
  }
  // cur = u_0 (order 1/2), above = u_1; one more step gives order -1/2.
  const double u_0 = cur;
  const double u_m = 1.0 / x * u_0 - above;
  const double scale = std::abs(std::sin(x)) >= std::abs(std::cos(x)) ? j_0 / u_0 : j_m / u_m;
  for (std::size_t k = 0; k < count; ++k) out[k] *= scale;
  return true;
}

bool bessel_i_half_scaled_array(double x, std::span<double> out) {
  if (!(x > 0.0)) throw PreconditionError("bessel_i_half: x must be positive");
  const std::size_t count = out.size();
  if (count == 0) return false;
  const double norm = std::sqrt(2.0 / (pi * x));
  const double e2 = std::expm1(-2.0 * x);        // e^{-2x} - 1
  const double i_0 = -0.5 * norm * e2;           // e^{-x} I_{1/2}
  const double i_m = 0.5 * norm * (2.0 + e2);    // e^{-x} I_{-1/2}

  const double top = static_cast<double>(count - 1);
  if (top * top <= 5.0 * x) {
    // Error growth of the upward recurrence is bounded by ~exp(v^2 / x).
    double prev = i_m;
    double cur = i_0;
    out[0] = cur;
    for (std::size_t k = 0; k + 1 < count; ++k) {
      const double next = prev - (2.0 * static_cast<double>(k) + 1.0) / x * cur;
      prev = cur;
      cur = next;
      out[k + 1] = cur;
    }
    return false;
  }

  const double n = static_cast<double>(count);
  const auto start = static_cast<std::size_t>(
      std::max(n + 30.0, std::ceil(std::sqrt(n * n + 80.0 * x)) + 30.0));
  double above = 0.0;
  double cur = 1e-300;
  for (std::size_t k = start; k-- > 0;) {
    const double nu = static_cast<double>(k + 1) + 0.5;
    const double next = 2.0 * nu / x * cur + above;
    above = cur;
    cur = next;
    if (k < count) out[k] = cur;
    if (cur > kRescaleHigh) {
      cur *= kRescaleFactor;
      above *= kRescaleFactor;
      for (std::size_t i = k; i < count; ++i) out[i] *= kRescaleFactor;
    }
  }
  const double scale = i_0 / cur;
  for (std::size_t k = 0; k < count; ++k) out[k] *= scale;
  return true;
}

BesselHalf bessel_half(int n, double x) {
  if (n < 0) throw PreconditionError("bessel_half: order index must be >= 0");
  std::vector<double> j(static_cast<std::size_t>(n) + 1);
  std::vector<double> i(static_cast<std::size_t>(n) + 1);
  bessel_j_half_array(x, j);
  bessel_i_half_scaled_array(x, i);
  return {j.back(), i.back()};
}

AuxFG auxiliary_fg(double z) {
  if (!(z > 0.0)) throw PreconditionError("auxiliary_fg: z must be positive");
  if (z >= 40.0) {
    // Asymptotic series f ~ sum (-1)^k (2k)!/z^{2k+1}, g ~ sum (-1)^k (2k+1)!/z^{2k+2}.
    const double inv2 = 1.0 / (z * z);
    double tf = 1.0 / z;
    double tg = inv2;
    double f = 0.0;
    double g = 0.0;
    for (int k = 0; k < 14; ++k) {
      f += tf;
      g += tg;
      tf *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) * inv2;
      tg *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) * inv2;
    }
    return {f, g};
  }
  // With v = z u both integrands become e^{-v} times a Lorentzian of width z.
  QuadratureSpec spec;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-13;
  const double iz = 1.0 / z;
  auto integrand = [iz](double v) {
    const double u = v * iz;
    const double w = std::exp(-v) / (1.0 + u * u);
    return std::array<double, 2>{w, u * w};
  };
  std::vector<double> bp = {0.5 * z, z, 2.0 * z, 5.0 * z, 10.0 * z, 50.0 * z, 1.0, 5.0, 15.0};
  std::sort(bp.begin(), bp.end());
  auto r = integrate_adaptive_n<2>(integrand, 0.0, 50.0, bp, spec);
  return {r.value[0] * iz, r.value[1] * iz};
}

}  // namespace entx::numerics

namespace entx {

std::string describe_flags(Flags flags) {
  static constexpr std::pair<Flag, const char*> kNames[] = {
      {Flag::kQuadratureBudget, "quad_budget"},
      {Flag::kSeriesNonConverged, "series_nonconverged"},
      {Flag::kBesselTruncated, "bessel_truncated"},
      {Flag::kAsymptoticRegime, "asymptotic_regime"},
      {Flag::kEmptyWindowSum, "empty_window_sum"},
      {Flag::kLowTemperatureRegime, "low_t_regime"},
  };
  std::string out;
  for (const auto& [flag, name] : kNames) {
    if (has_flag(flags, flag)) {
      if (!out.empty()) out += '|';
      out += name;
    }
  }
  return out;
}

}  // namespace entx
