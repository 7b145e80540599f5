#include "entx/freefield.hpp"

#include <cmath>
#include <numbers>

#include "entx/radial.hpp"

namespace entx::freefield {

namespace {

constexpr double kPi = std::numbers::pi;

double smallest_scale(double m, double delta_e) {
  return m > 0.0 ? std::min(m, delta_e) : delta_e;
}

}  // namespace

void FreeFieldParams::validate() const {
  if (!(m >= 0.0)) throw PreconditionError("mass must be >= 0");
  pair.validate();
}

Integrals free_integrals(double m, double delta_e, double d, double cutoff,
                         const numerics::QuadratureSpec& spec, bool with_e) {
  spec.validate();
  const double m2 = m * m;
  const double de = delta_e;
  const double scale = smallest_scale(m, de);
  Integrals out;

  // Ratio forms stay finite for any cutoff.
  auto p_kernel = [=](double p) {
    const double e = radial::energy(p, m2);
    return (p / e) * (p / (e + de)) / (e + de);
  };
  auto f_kernel = [=](auto p) {
    const auto e = radial::energy(p, m2);
    return (p / e) / (e + de);
  };
  auto e_kernel = [=](auto p) {
    const auto e = radial::energy(p, m2);
    return (p / e) / ((e + de) * (e + de));
  };

  auto p = radial::plain(p_kernel, cutoff, scale, spec);
  auto f = radial::sine(f_kernel, d, cutoff, scale, spec);
  out.p_hat = p.value;
  out.f_hat = f.value / (de * d);
  out.flags = p.flags | f.flags;
  if (with_e) {
    auto e = radial::sine(e_kernel, d, cutoff, scale, spec);
    out.e_hat = e.value / d;
    out.flags |= e.flags;
  }
  return out;
}

ReducedElements free_matrix_elements(const FreeFieldParams& params,
                                     const numerics::QuadratureSpec& spec) {
  params.validate();
  if (params.pair.alpha1 != params.pair.alpha2) {
    throw PreconditionError("free field scenario requires equal couplings");
  }
  const double alpha = params.pair.alpha1;
  auto in = free_integrals(params.m, params.pair.delta_e, params.pair.d, params.cutoff(), spec);
  const double pref = alpha * alpha / (4.0 * kPi * kPi);
  ReducedElements el;
  el.p1 = el.p2 = pref * in.p_hat;
  el.f = pref * in.f_hat;
  el.e = cplx(pref * in.e_hat, 0.0);
  el.flags = in.flags;
  return el;
}

double free_negativity(const FreeFieldParams& params, const numerics::QuadratureSpec& spec) {
  return negativity(free_matrix_elements(params, spec));
}

AsymptoticResult free_negativity_asymptotic(const FreeFieldParams& params, Regime regime,
                                            double limit) {
  params.validate();
  const auto& pr = params.pair;
  const double s = regime == Regime::kGapDominated ? pr.delta_e : params.m;
  if (!(s > 0.0)) throw PreconditionError("mass-dominated asymptote requires m > 0");
  AsymptoticResult out;
  const double bracket = kPi / (2.0 * pr.d * pr.delta_e) - std::log(1.0 / (s * pr.delta_x));
  out.n = pr.alpha1 * pr.alpha1 / (2.0 * kPi * kPi) * std::max(bracket, 0.0);
  if (pr.d * pr.delta_e > limit || pr.d * params.m > limit) {
    out.flags = out.flags | Flag::kAsymptoticRegime;
  }
  return out;
}

}  // namespace entx::freefield
