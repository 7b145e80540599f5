#include "entx/thermal.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "entx/radial.hpp"

namespace entx::thermal {

namespace {

constexpr double kPi = std::numbers::pi;

// Beyond beta (E - m) = 60 the occupation is below e^-60 of its value at p = 0.
constexpr double kOccupationSpan = 60.0;

// exp(beta m) n_p: O(1) at small p for any temperature, so the increments
// keep full relative accuracy when exp(-beta m) is tiny.
double scaled_occupation(double e, double m, double beta) {
  return 1.0 / (std::expm1(beta * (e - m)) - std::expm1(-beta * m));
}

// Continuation for the complex-ray tail; poles sit on the imaginary p axis.
std::complex<double> scaled_occupation(std::complex<double> e, double m, double beta) {
  return 1.0 / (std::exp(beta * (e - m)) - std::exp(-beta * m));
}

struct Vacuum {
  double p_hat = 0.0;
  double f_hat = 0.0;
  Flags flags = 0;
};

Vacuum vacuum(const ThermalParams& params, const numerics::QuadratureSpec& spec) {
  const auto& pr = params.free.pair;
  auto in = freefield::free_integrals(params.free.m, pr.delta_e, pr.d, params.free.cutoff(), spec,
                                      false);
  return {in.p_hat, in.f_hat, in.flags};
}

double gap(const Vacuum& v, const Increments& inc) {
  return std::abs(v.f_hat + inc.f_hat) - (v.p_hat + inc.p_hat);
}

}  // namespace

void ThermalParams::validate() const {
  free.validate();
  if (!(free.m > free.pair.delta_e)) {
    throw PreconditionError("thermal scenario requires m > delta_e");
  }
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw PreconditionError("theta must be >= 0");
  if (free.pair.alpha1 != free.pair.alpha2) {
    throw PreconditionError("thermal scenario requires equal couplings");
  }
}

double occupation(double p, const ThermalParams& params) {
  if (params.theta == 0.0) return 0.0;
  const double m = params.free.m;
  const double e = std::sqrt(p * p + m * m);
  return 1.0 / std::expm1(e / (params.theta * m));
}

Increments thermal_increments(const ThermalParams& params, const numerics::QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  Increments out;
  if (params.theta == 0.0) return out;
  const double m = params.free.m;
  const double m2 = m * m;
  const double de = params.free.pair.delta_e;
  const double d = params.free.pair.d;
  const double beta = 1.0 / (params.theta * m);
  const double damp = std::exp(-beta * m);
  if (damp == 0.0) return out;

  const double e_max = m + kOccupationSpan / beta;
  const double upper = std::min(params.free.cutoff(), std::sqrt(e_max * e_max - m2));
  const double scale = m * std::min(1.0, std::sqrt(params.theta));
  numerics::QuadratureSpec inc_spec = spec;
  inc_spec.abs_tol = spec.abs_tol * std::min(1.0, std::pow(params.theta, 1.5));

  // Occupation-weighted parts of the spontaneous and absorption channels.
  auto p_kernel = [=](double p) {
    const double e = std::sqrt(p * p + m2);
    const double a = 1.0 / (e + de);
    const double b = 1.0 / (e - de);
    return p * p / e * scaled_occupation(e, m, beta) * (a * a + b * b);
  };
  auto f_kernel = [=](auto p) {
    const auto e = std::sqrt(p * p + m2);
    return p / e * scaled_occupation(e, m, beta) * (1.0 / (e + de) + 1.0 / (de - e));
  };
  auto p = radial::plain(p_kernel, upper, scale, inc_spec);
  auto f = radial::sine(f_kernel, d, upper, scale, inc_spec);
  out.p_hat = damp * p.value;
  out.f_hat = damp * f.value / (de * d);
  out.flags = p.flags | f.flags;
  return out;
}

ReducedElements thermal_elements(const ThermalParams& params,
                                 const numerics::QuadratureSpec& spec) {
  params.validate();
  const Vacuum v = vacuum(params, spec);
  const Increments inc = thermal_increments(params, spec);
  const double alpha = params.free.pair.alpha1;
  const double pref = alpha * alpha / (4.0 * kPi * kPi);
  ReducedElements el;
  el.p1 = el.p2 = pref * (v.p_hat + inc.p_hat);
  el.f = pref * (v.f_hat + inc.f_hat);
  el.flags = v.flags | inc.flags;
  return el;
}

LowTemperature low_temperature_P1(const ThermalParams& params,
                                  const numerics::QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  LowTemperature out;
  if (params.theta == 0.0) return out;
  const double m = params.free.m;
  const double m2 = m * m;
  const double alpha = params.free.pair.alpha1;
  const double bm = 1.0 / params.theta;
  const double beta = bm / m;
  if (bm < 5.0) out.flags = out.flags | Flag::kLowTemperatureRegime;
  const double damp = std::exp(-bm);
  if (damp == 0.0) return out;
  const double e_max = m + kOccupationSpan / beta;
  const double upper = std::min(params.free.cutoff(), std::sqrt(e_max * e_max - m2));
  numerics::QuadratureSpec inc_spec = spec;
  inc_spec.abs_tol = spec.abs_tol * std::min(1.0, std::pow(params.theta, 1.5));
  auto kernel = [=](double p) {
    const double e = std::sqrt(p * p + m2);
    return 2.0 * p * p * scaled_occupation(e, m, beta) / (e * e * e);
  };
  auto r = radial::plain(kernel, upper, m * std::min(1.0, std::sqrt(params.theta)), inc_spec);
  out.integral = alpha * alpha / (4.0 * kPi * kPi) * damp * r.value;
  out.estimate = alpha * alpha * damp / (2.0 * kPi * kPi * std::sqrt(bm));
  out.flags |= r.flags;
  return out;
}

CriticalTemperature critical_temperature(const ThermalParams& params, double theta_tol,
                                         const numerics::QuadratureSpec& spec) {
  ThermalParams tp = params;
  tp.theta = 0.0;
  tp.validate();
  if (!(theta_tol > 0.0)) throw PreconditionError("theta_tol must be positive");
  const auto& pr = tp.free.pair;
  const Vacuum v = vacuum(tp, spec);
  if (!(gap(v, {}) > 0.0)) throw NumericalError("no critical temperature: vacuum negativity is zero");
  const double bracket =
      kPi / (2.0 * pr.d * pr.delta_e) - std::log(1.0 / (tp.free.m * pr.delta_x));
  if (!(bracket > 0.0)) {
    throw NumericalError("no critical temperature: Lambert-W bracket is not positive");
  }

  CriticalTemperature out;
  out.flags = v.flags;
  const double w = numerics::lambert_w0(8.0 / (bracket * bracket));
  out.estimate = 2.0 / w;
  if (0.5 * w < 5.0) out.flags = out.flags | Flag::kLowTemperatureRegime;

  auto g = [&](double theta) {
    tp.theta = theta;
    const auto inc = thermal_increments(tp, spec);
    out.flags |= inc.flags;
    return gap(v, inc);
  };
  double lo = 0.0;
  double hi = 0.05;
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw NumericalError("no critical temperature below theta = 1e8");
  }
  while (hi - lo > theta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.root = 0.5 * (lo + hi);
  return out;
}

}  // namespace entx::thermal
