#include "entx/dirichlet.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace entx::dirichlet {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_n sin((2n+a)q)/(2n+a) on window m; a = 0 is the removable limit.
double window_sum(double a, long m) {
  if (a == 0.0) return (2.0 * static_cast<double>(m) + 1.0) * 0.5 * kPi;
  return numerics::closed_sine_sum(a, (static_cast<double>(m) + 0.5) * kPi);
}

double p_bracket(double gamma, long m) { return window_sum(0.0, m) - window_sum(gamma + 1.0, m); }

double f_bracket(double gamma, long m) { return window_sum(gamma, m) - window_sum(1.0, m); }

// int_lo^hi dq/(q+c)^2 and int_lo^hi dq/(q+c)
double p_weight(double lo, double hi, double c) { return (hi - lo) / ((lo + c) * (hi + c)); }
double f_weight(double lo, double hi, double c) { return std::log1p((hi - lo) / (lo + c)); }

struct Hats {
  double p = 0.0;
  double f = 0.0;
};

ReducedElements from_hats(const DirichletParams& pr, const Hats& h) {
  const double pref = pr.alpha * pr.alpha / (4.0 * kPi * kPi);
  ReducedElements el;
  el.p1 = el.p2 = pref * h.p;
  el.f = pref * pr.gamma / pr.eps * h.f;
  return el;
}

Hats closed_form(const DirichletParams& pr) {
  const double c = pr.c();
  const double q = pr.q_max();
  const auto windows = static_cast<long>(std::floor(q / kPi));
  Hats h;
  for (long m = 0; m < windows; ++m) {
    const double lo = static_cast<double>(m) * kPi;
    const double hi = lo + kPi;
    h.p += p_weight(lo, hi, c) * p_bracket(pr.gamma, m);
    h.f += f_weight(lo, hi, c) * f_bracket(pr.gamma, m);
  }
  const double lo = static_cast<double>(windows) * kPi;
  if (q > lo) {
    h.p += p_weight(lo, q, c) * p_bracket(pr.gamma, windows);
    h.f += f_weight(lo, q, c) * f_bracket(pr.gamma, windows);
  }
  return h;
}

Hats integral(const DirichletParams& pr, const numerics::QuadratureSpec& spec, bool& converged) {
  const double c = pr.c();
  const double q = pr.q_max();
  const double a_p = pr.gamma + 1.0;
  const double a_f = pr.gamma;
  std::vector<double> edges;
  for (double k = 1.0; k * kPi < q; k += 1.0) edges.push_back(k * kPi);
  auto integrand = [&](double x) {
    const double s0 = (2.0 * std::floor(x / kPi) + 1.0) * 0.5 * kPi;
    const double sp = s0 - numerics::closed_sine_sum(a_p, x);
    const double sf = numerics::closed_sine_sum(a_f, x) - numerics::closed_sine_sum(1.0, x);
    const double inv = 1.0 / (x + c);
    return std::array<double, 2>{sp * inv * inv, sf * inv};
  };
  auto r = numerics::integrate_adaptive_n<2>(integrand, 0.0, q, edges, spec);
  converged = r.converged;
  return {r.value[0], r.value[1]};
}

// int_0^{aQ} sin t/(t + ac)^2 dt for a > 0, with the a -> 0 limit.
double image_p(double a, double q_max, double c) {
  if (a == 0.0) return std::log1p(q_max / c) + c / (q_max + c) - 1.0;
  const double x = a * q_max;
  const double z = a * c;
  const double zz = x + z;
  const auto fz = numerics::auxiliary_fg(z);
  const auto fzz = numerics::auxiliary_fg(zz);
  return fz.g - (std::cos(x) * fzz.g + std::sin(x) * (1.0 / zz - fzz.f));
}

// (1/b) int_0^{bQ} sin t/(t + bc) dt, b > 0.
double image_f(double b, double q_max, double c) {
  const double x = b * q_max;
  const double z = b * c;
  const double zz = x + z;
  const auto fz = numerics::auxiliary_fg(z);
  const auto fzz = numerics::auxiliary_fg(zz);
  return (fz.f - (std::cos(x) * fzz.f + std::sin(x) * fzz.g)) / b;
}

}  // namespace

void DirichletParams::validate() const {
  if (!(gamma > 0.0)) throw PreconditionError("gamma must be positive");
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (!(lambda_tilde > 0.0)) throw PreconditionError("lambda_tilde must be positive");
  if (!(alpha >= 0.0)) throw PreconditionError("alpha must be >= 0");
  if (orientation == Orientation::kPerpendicular && !(gamma < 1.0)) {
    throw PreconditionError("perpendicular configuration requires gamma < 1 (d < L_x)");
  }
}

ReducedElements dirichlet_elements_perpendicular(const DirichletParams& params, Method method,
                                                 const numerics::QuadratureSpec& spec) {
  params.validate();
  if (params.orientation != Orientation::kPerpendicular) {
    throw PreconditionError("orientation must be perpendicular");
  }
  spec.validate();
  if (std::floor(params.q_max() / kPi) < 1.0) {
    ReducedElements zero;
    zero.flags = zero.flags | Flag::kEmptyWindowSum;
    return zero;
  }
  bool converged = true;
  const Hats h = method == Method::kClosedForm ? closed_form(params) : integral(params, spec, converged);
  ReducedElements el = from_hats(params, h);
  if (!converged) el.flags = el.flags | Flag::kQuadratureBudget;
  return el;
}

ReducedElements dirichlet_elements_parallel(const DirichletParams& params,
                                            const numerics::SeriesSpec& series) {
  params.validate();
  if (params.orientation != Orientation::kParallel) {
    throw PreconditionError("orientation must be parallel");
  }
  const double c = params.c();
  const double q = params.q_max();
  const double g2 = params.gamma * params.gamma;
  auto p_term = [&](int n) {
    const double two_n = 2.0 * std::abs(static_cast<double>(n));
    return image_p(two_n, q, c) - image_p(std::abs(2.0 * n + 1.0), q, c);
  };
  auto f_term = [&](int n) {
    const double b0 = std::sqrt(4.0 * n * static_cast<double>(n) + g2);
    const double odd = 2.0 * n + 1.0;
    const double b1 = std::sqrt(odd * odd + g2);
    return image_f(b0, q, c) - image_f(b1, q, c);
  };
  const auto sp = numerics::sum_images(p_term, series);
  const auto sf = numerics::sum_images(f_term, series);
  ReducedElements el = from_hats(params, {sp.value, sf.value});
  if (!sp.converged || !sf.converged) el.flags = el.flags | Flag::kSeriesNonConverged;
  return el;
}

WindowSensitivity window_sensitivity(const DirichletParams& params) {
  params.validate();
  const double c = params.c();
  const double ratio = params.q_max() / kPi;
  auto literal = [&](long m_max) {
    Hats h;
    for (long m = 0; m <= m_max; ++m) {
      const double lo = static_cast<double>(m) * kPi;
      h.p += p_weight(lo, lo + kPi, c) * p_bracket(params.gamma, m);
      h.f += f_weight(lo, lo + kPi, c) * f_bracket(params.gamma, m);
    }
    return h;
  };
  const Hats lo = literal(static_cast<long>(std::floor(ratio)));
  const Hats hi = literal(static_cast<long>(std::ceil(ratio)));
  return {std::abs(hi.p - lo.p) / std::abs(lo.p), std::abs(hi.f - lo.f) / std::abs(lo.f)};
}

}  // namespace entx::dirichlet
