#include "entx/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "entx/radial.hpp"

namespace entx::potential {

namespace {

constexpr double kPi = std::numbers::pi;

// Partial sums of sum_n (+-1)^n (2n+1) I~_{n+1/2}(s) J_{n+1/2}(x1) J_{n+1/2}(x2)
// for both signs at once, using precomputed J(x1).
struct SeriesPair {
  double plus = 0.0;
  double minus = 0.0;
  bool truncated = false;
  int terms = 0;
};

SeriesPair bessel_series(std::span<const double> j1, double x1, double x2, double s, int start,
                         int cap, std::vector<double>& j2, std::vector<double>& iv) {
  SeriesPair out;
  // J_{n+1/2}(x) only starts to decay once n exceeds x.
  const double guess = std::max(x1, x2);
  int order = std::max(start, 1);
  while (order < cap && order < guess) order *= 2;
  for (;;) {
    order = std::min(order, cap);
    const auto len = static_cast<std::size_t>(order);
    j2.resize(len);
    iv.resize(len);
    numerics::bessel_j_half_array(x2, j2);
    numerics::bessel_i_half_scaled_array(s, iv);
    double plus = 0.0;
    double minus = 0.0;
    double last = 0.0;
    for (std::size_t n = 0; n < len; ++n) {
      const double t = (2.0 * static_cast<double>(n) + 1.0) * iv[n] * j1[n] * j2[n];
      plus += t;
      minus += (n % 2 == 0) ? t : -t;
      if (n + 2 >= len) last = std::max(last, std::abs(t));
    }
    const double scale = std::max(std::abs(plus), std::abs(minus));
    const bool ok = last <= 1e-10 * scale || last == 0.0;
    if (ok || order >= cap) {
      out.plus = plus;
      out.minus = minus;
      out.truncated = !ok;
      out.terms = order;
      return out;
    }
    order *= 2;
  }
}

// Bracket terms of the delta P and delta F kernels.
double bracket_p(double e1, double e2, double de) {
  const double a = 1.0 / (e1 + de);
  const double b = 1.0 / (e2 + de);
  return (a * a + b * b) / (e1 + e2) + a * b * (a + b);
}

double bracket_f(double e1, double e2, double de) {
  const double a = 1.0 / (e1 + de);
  const double b = 1.0 / (e2 + de);
  return a * b + (a + b) / (e1 + e2);
}

}  // namespace

void PotentialParams::validate() const {
  free.validate();
  if (!(free.m > 0.0)) throw PreconditionError("potential scenario requires m > 0");
  if (!(sigma_b > 0.0)) throw PreconditionError("sigma_b must be positive");
  if (n_max_partial < 1) throw PreconditionError("n_max_partial must be >= 1");
  if (n_max_cap < n_max_partial) throw PreconditionError("n_max_cap below n_max_partial");
  if (free.pair.alpha1 != free.pair.alpha2) {
    throw PreconditionError("potential scenario requires equal couplings");
  }
  if (!std::isfinite(lambda_v0)) throw PreconditionError("lambda_v0 must be finite");
}

double gaussian_ft(double v0, double sigma_b, double p) {
  if (!(sigma_b > 0.0)) throw PreconditionError("sigma_b must be positive");
  return v0 * sigma_b * sigma_b * sigma_b * std::exp(-0.5 * sigma_b * sigma_b * p * p) /
         std::pow(2.0 * kPi, 1.5);
}

AngularResult angular_expansion(int sign, double sigma_b, double p1, double p2, double d,
                                int n_max) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw PreconditionError("angular_expansion: p1, p2 > 0");
  if (!(sigma_b > 0.0) || !(d > 0.0)) throw PreconditionError("angular_expansion: sigma, d > 0");
  if (n_max < 0) throw PreconditionError("angular_expansion: n_max >= 0");
  if (sign != 1 && sign != -1) throw PreconditionError("angular_expansion: sign must be +-1");
  const auto len = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> j1(len), j2(len), iv(len);
  const double s = sigma_b * sigma_b * p1 * p2;
  numerics::bessel_j_half_array(0.5 * p1 * d, j1);
  numerics::bessel_j_half_array(0.5 * p2 * d, j2);
  numerics::bessel_i_half_scaled_array(s, iv);
  double sum = 0.0;
  double last = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    double t = (2.0 * static_cast<double>(n) + 1.0) * iv[n] * j1[n] * j2[n];
    if (sign < 0 && n % 2 == 1) t = -t;
    sum += t;
    last = std::abs(t);
  }
  AngularResult out;
  out.scaled = std::pow(2.0 * kPi, 3.5) / (p1 * p2 * sigma_b * d) * sum;
  out.exponent = s;
  out.terms = n_max + 1;
  out.truncated = last > 1e-10 * std::abs(sum);
  return out;
}

DeltaElements constant_potential_delta(const freefield::FreeFieldParams& free, double lambda,
                                       const numerics::QuadratureSpec& spec) {
  free.validate();
  const double m = free.m;
  const double m2 = m * m;
  const double de = free.pair.delta_e;
  const double d = free.pair.d;
  const double alpha = free.pair.alpha1;
  const double scale = m > 0.0 ? std::min(m, de) : de;
  auto kp = [=](double p) {
    const double e = std::sqrt(p * p + m2);
    const double a = 1.0 / (e + de);
    return p * p * (a * a / (e * e * e) + 2.0 * a * a * a / (e * e));
  };
  auto kf = [=](auto p) {
    const auto e = std::sqrt(p * p + m2);
    const auto a = 1.0 / (e + de);
    return p * (a * a / (e * e) + a / (e * e * e));
  };
  auto ip = radial::plain(kp, free.cutoff(), scale, spec);
  auto iff = radial::sine(kf, d, free.cutoff(), scale, spec);
  DeltaElements out;
  const double pref = -lambda * alpha * alpha * m2 / (8.0 * kPi * kPi);
  out.delta_p = pref * ip.value;
  out.delta_f = pref / (de * d) * iff.value;
  out.flags = ip.flags | iff.flags;
  return out;
}

TaylorCheck mass_shift_taylor_check(const freefield::FreeFieldParams& free, double lambda,
                                    const numerics::QuadratureSpec& spec) {
  free.validate();
  if (!(1.0 + lambda > 0.0)) throw PreconditionError("mass shift requires 1 + lambda > 0");
  const auto& pr = free.pair;
  const double pref = pr.alpha1 * pr.alpha1 / (4.0 * kPi * kPi);
  auto base = freefield::free_integrals(free.m, pr.delta_e, pr.d, free.cutoff(), spec, false);
  auto shifted = freefield::free_integrals(std::sqrt(1.0 + lambda) * free.m, pr.delta_e, pr.d,
                                           free.cutoff(), spec, false);
  auto rhs = constant_potential_delta(free, lambda, spec);
  TaylorCheck out;
  out.lhs_p = pref * (shifted.p_hat - base.p_hat);
  out.lhs_f = pref * (shifted.f_hat - base.f_hat);
  out.rhs_p = rhs.delta_p;
  out.rhs_f = rhs.delta_f;
  return out;
}

DeltaElements delta_elements(const PotentialParams& params, const numerics::QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  DeltaElements out;
  if (params.lambda_v0 == 0.0) return out;

  const double m = params.free.m;
  const double m2 = m * m;
  const double de = params.free.pair.delta_e;
  const double d = params.free.pair.d;
  const double alpha = params.free.pair.alpha1;
  const double sigma = params.sigma_b;
  const double sigma2 = sigma * sigma;
  const double cutoff = params.free.cutoff();
  const int cap = params.fixed_n_max > 0 ? params.fixed_n_max : params.n_max_cap;
  const int start = params.fixed_n_max > 0 ? params.fixed_n_max : params.n_max_partial;
  const double half_d = 0.5 * d;

  // Magnitude reference for absolute tolerances: the wide-potential limit.
  freefield::FreeFieldParams unit = params.free;
  unit.pair.alpha1 = unit.pair.alpha2 = 1.0;
  const auto ref = constant_potential_delta(unit, 2.0 / m2, spec);
  const double mag = std::max(std::abs(ref.delta_p), std::abs(ref.delta_f)) *
                     std::max(1e-6, std::min(1.0, std::pow(sigma * m, 3)));

  numerics::QuadratureSpec outer_spec = spec;
  outer_spec.abs_tol = std::max(1e-300, 1e-10 * mag * 4.0 * kPi * d / sigma2);
  outer_spec.rel_tol = std::max(spec.rel_tol, 1e-9);
  numerics::QuadratureSpec inner_spec = outer_spec;
  inner_spec.abs_tol = outer_spec.abs_tol / cutoff;

  const double width = std::min(9.0 / sigma, cutoff);
  Flags flags = 0;
  int max_order = 0;
  std::vector<double> j1(static_cast<std::size_t>(cap));
  std::vector<double> j2, iv;

  auto outer = [&](double p1) -> std::array<double, 2> {
    const double e1 = std::sqrt(p1 * p1 + m2);
    numerics::bessel_j_half_array(half_d * p1, j1);
    // The kernel is symmetric under p1 <-> p2: integrate p2 < p1 and double.
    const double lo = std::max(0.0, p1 - width);
    const double hi = p1;
    std::vector<double> bp;
    for (double k : {4.0, 2.0, 1.0}) bp.push_back(p1 - k / sigma);
    bp = radial::merge_breakpoints(bp, numerics::oscillation_breakpoints(lo, hi, half_d));
    auto inner = [&](double p2) -> std::array<double, 2> {
      const double e2 = std::sqrt(p2 * p2 + m2);
      const double s = sigma2 * p1 * p2;
      const auto series = bessel_series(j1, half_d * p1, half_d * p2, s, start, cap, j2, iv);
      if (series.truncated) flags = flags | Flag::kBesselTruncated;
      max_order = std::max(max_order, series.terms);
      const double diff = p1 - p2;
      const double w = p1 * p2 * std::exp(-0.5 * sigma2 * diff * diff) / (e1 * e2);
      return {w * bracket_p(e1, e2, de) * series.plus, w * bracket_f(e1, e2, de) * series.minus};
    };
    auto r = numerics::integrate_adaptive_n<2>(inner, lo, hi, bp, inner_spec);
    if (!r.converged) flags = flags | Flag::kQuadratureBudget;
    return {2.0 * r.value[0], 2.0 * r.value[1]};
  };

  const double scale = std::min({m, de, 1.0 / sigma});
  auto bp = radial::merge_breakpoints(radial::scale_breakpoints(cutoff, scale),
                                      numerics::oscillation_breakpoints(0.0, cutoff, half_d));
  auto r = numerics::integrate_adaptive_n<2>(outer, 0.0, cutoff, bp, outer_spec);
  if (!r.converged) flags = flags | Flag::kQuadratureBudget;

  const double pref = -params.lambda_v0 * alpha * alpha * sigma2 / (4.0 * kPi * d);
  out.delta_p = pref * r.value[0];
  out.delta_f = pref / de * r.value[1];
  out.flags = flags;
  out.max_order = max_order;
  return out;
}

ReducedElements corrected_elements(const PotentialParams& params,
                                   const numerics::QuadratureSpec& spec) {
  params.validate();
  ReducedElements el = freefield::free_matrix_elements(params.free, spec);
  const auto delta = delta_elements(params, spec);
  el.p1 += delta.delta_p;
  el.p2 += delta.delta_p;
  el.f += delta.delta_f;
  el.e.reset();
  el.flags |= delta.flags;
  return el;
}

}  // namespace entx::potential
