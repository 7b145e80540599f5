#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature, symmetric image
// sums, the closed sine-series identity, Lambert W, and half-integer order
// Bessel functions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <vector>

namespace entx::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 20000;

  void validate() const;
};

template <std::size_t N>
struct QuadratureResultN {
  std::array<double, N> value{};
  std::array<double, N> error{};
  int intervals = 0;
  bool converged = true;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = true;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600270400567, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::array<double, N> value{};
  std::array<double, N> error{};
  double key = 0.0;  // largest component error, used for heap ordering
};

template <std::size_t N>
struct PanelLess {
  bool operator()(const Panel<N>& x, const Panel<N>& y) const {
    if (x.key != y.key) return x.key < y.key;
    return x.a > y.a;  // deterministic tie-break
  }
};

inline std::array<double, 1> as_array(double v) { return {v}; }
template <std::size_t N>
const std::array<double, N>& as_array(const std::array<double, N>& v) {
  return v;
}

template <std::size_t N, class F>
Panel<N> gk21(const F& f, double a, double b) {
  constexpr double kEps = 2.220446049250313e-16;
  constexpr double kTiny = 2.2250738585072014e-308;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<std::array<double, N>, 21> fv{};
  fv[10] = as_array(f(center));
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = as_array(f(center - dx));
    fv[20 - j] = as_array(f(center + dx));
  }

  Panel<N> panel;
  panel.a = a;
  panel.b = b;
  for (std::size_t c = 0; c < N; ++c) {
    double resk = kWgk[10] * fv[10][c];
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (int j = 0; j < 10; ++j) {
      const double pair = fv[j][c] + fv[20 - j][c];
      resk += kWgk[j] * pair;
      resabs += kWgk[j] * (std::abs(fv[j][c]) + std::abs(fv[20 - j][c]));
      if (j % 2 == 1) resg += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fv[10][c] - mean);
    for (int j = 0; j < 10; ++j) {
      resasc += kWgk[j] * (std::abs(fv[j][c] - mean) + std::abs(fv[20 - j][c] - mean));
    }
    const double ah = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    panel.value[c] = resk * half;
    panel.error[c] = err;
  }
  panel.key = *std::max_element(panel.error.begin(), panel.error.end());
  return panel;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of a scalar or fixed-size
/// vector integrand over [a, b], seeded with the given interior breakpoints.
///
/// The integrand returns either `double` or `std::array<double, N>`. Each
/// component must satisfy err <= max(abs_tol, rel_tol * |value|) for the
/// result to count as converged. The budget counts bisections beyond the
/// initial panels. Panel sums are accumulated in left-endpoint order, so the
/// result is bit-identical for identical inputs.
template <std::size_t N, class F>
QuadratureResultN<N> integrate_adaptive_n(const F& f, double a, double b,
                                          std::span<const double> breakpoints,
                                          const QuadratureSpec& spec) {
  using Panel = detail::Panel<N>;
  QuadratureResultN<N> out;
  if (!(b > a)) return out;

  std::vector<double> edges;
  edges.reserve(breakpoints.size() + 2);
  edges.push_back(a);
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel, std::vector<Panel>, detail::PanelLess<N>> heap;
  std::vector<Panel> settled;  // panels too narrow to split further
  std::array<double, N> total{};
  std::array<double, N> total_err{};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = detail::gk21<N>(f, edges[i], edges[i + 1]);
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += p.value[c];
      total_err[c] += p.error[c];
    }
    heap.push(std::move(p));
  }

  auto satisfied = [&] {
    for (std::size_t c = 0; c < N; ++c) {
      if (total_err[c] > std::max(spec.abs_tol, spec.rel_tol * std::abs(total[c]))) return false;
    }
    return true;
  };

  int splits = 0;
  while (!heap.empty() && !satisfied()) {
    if (splits >= spec.max_subdivisions) {
      out.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-14 * std::max(std::abs(worst.a), std::abs(worst.b))) {
      settled.push_back(std::move(worst));
      continue;
    }
    Panel left = detail::gk21<N>(f, worst.a, mid);
    Panel right = detail::gk21<N>(f, mid, worst.b);
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += left.value[c] + right.value[c] - worst.value[c];
      total_err[c] += left.error[c] + right.error[c] - worst.error[c];
    }
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++splits;
  }
  if (heap.empty() && !satisfied()) out.converged = false;

  while (!heap.empty()) {
    settled.push_back(heap.top());
    heap.pop();
  }
  std::sort(settled.begin(), settled.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  out.value.fill(0.0);
  out.error.fill(0.0);
  for (const Panel& p : settled) {
    for (std::size_t c = 0; c < N; ++c) {
      out.value[c] += p.value[c];
      out.error[c] += p.error[c];
    }
  }
  out.intervals = static_cast<int>(settled.size());
  return out;
}

/// Scalar adaptive quadrature with interior breakpoints.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    std::span<const double> breakpoints,
                                    const QuadratureSpec& spec = {}) {
  auto r = integrate_adaptive_n<1>(f, a, b, breakpoints, spec);
  return {r.value[0], r.error[0], r.intervals, r.converged};
}

template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    const QuadratureSpec& spec = {}) {
  return integrate_adaptive(f, a, b, std::span<const double>{}, spec);
}

/// Breakpoints at the zeros k*pi/omega of sin(omega*p) inside (a, b), used
/// when omega*(b - a) exceeds the oscillation threshold (50); at most
/// max_panels points are produced.
std::vector<double> oscillation_breakpoints(double a, double b, double omega,
                                            std::size_t max_panels = 1u << 16);

/// Geometric breakpoints start, start*ratio, ... strictly inside (a, b).
std::vector<double> geometric_breakpoints(double a, double b, double start, double ratio);

struct ComplexQuadratureResult {
  std::complex<double> value;
  bool converged = true;
};

/// Integral of exp(i*omega*p) g(p) over [a, infinity), omega > 0, computed on
/// the vertical ray p = a + i t where the oscillation becomes exponential
/// decay. Requires g analytic and decaying in the quadrant Re p >= a,
/// Im p >= 0.
template <class G>
ComplexQuadratureResult fourier_tail(const G& g, double a, double omega,
                                     const QuadratureSpec& spec = {}) {
  const double t_max = 60.0 / omega;
  const std::array<double, 4> bp = {0.05 / omega, 1.0 / omega, 5.0 / omega, 20.0 / omega};
  auto integrand = [&](double t) {
    const std::complex<double> v = std::exp(-omega * t) * g(std::complex<double>(a, t));
    return std::array<double, 2>{v.real(), v.imag()};
  };
  auto r = integrate_adaptive_n<2>(integrand, 0.0, t_max, bp, spec);
  const std::complex<double> phase = std::complex<double>(0.0, 1.0) *
                                     std::exp(std::complex<double>(0.0, omega * a));
  return {phase * std::complex<double>(r.value[0], r.value[1]), r.converged};
}

struct SeriesSpec {
  int max_terms = 1000000;
  double tail_tol = 1e-10;
  int tail_run = 3;

  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  int terms = 0;  // largest |n| included
  bool converged = true;
  double last_pair = 0.0;  // |term(N) + term(-N)| of the final pair
};

/// Symmetric image sum: term(0) + sum_{n>=1} [term(n) + term(-n)], truncated
/// once tail_run consecutive pairs fall below tail_tol * |partial sum|.
SeriesResult sum_images(const std::function<double(int)>& term, const SeriesSpec& spec = {});

/// sum_{n in Z} sin((2n+a)q)/(2n+a) = pi/(2 sin(pi a/2)) * sin((2m+1) pi a/2)
/// for m*pi < q < (m+1)*pi. Throws PreconditionError when sin(pi a/2) or the
/// distance of q to the window edges is below 1e-12.
double closed_sine_sum(double a, double q);

/// Principal branch W0 of the Lambert function; x >= -1/e.
double lambert_w0(double x);

struct BesselHalf {
  double j = 0.0;         // J_{n+1/2}(x)
  double i_scaled = 0.0;  // I_{n+1/2}(x) * exp(-x)
};

/// Half-integer order Bessel functions of order n + 1/2 at x > 0.
BesselHalf bessel_half(int n, double x);

/// J_{k+1/2}(x) for k = 0 .. out.size()-1. Returns true when the Miller
/// downward recurrence was needed (orders beyond x).
bool bessel_j_half_array(double x, std::span<double> out);

/// exp(-x) I_{k+1/2}(x) for k = 0 .. out.size()-1. Returns true when the
/// Miller downward recurrence was needed.
bool bessel_i_half_scaled_array(double x, std::span<double> out);

/// Auxiliary functions of the sine and cosine integrals for z > 0:
///   f(z) = int_0^inf sin t / (t + z) dt,  g(z) = int_0^inf cos t / (t + z) dt.
/// Evaluated through their Laplace representations
///   f(z) = int_0^inf e^{-zu} / (1 + u^2) du,  g(z) = int_0^inf u e^{-zu} / (1 + u^2) du.
struct AuxFG {
  double f = 0.0;
  double g = 0.0;
};
AuxFG auxiliary_fg(double z);

}  // namespace entx::numerics
