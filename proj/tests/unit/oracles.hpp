#pragma once

// Independent reference evaluations used by the tests. Nothing here calls into
// the library's numerics, so they can serve as oracles for it.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>

namespace oracle {

/// Composite Simpson rule on a uniform grid with `panels` (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t panels) {
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  long double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) {
    const double x = a + h * static_cast<double>(i);
    sum += (i % 2 == 1 ? 4.0L : 2.0L) * f(x);
  }
  return static_cast<double>(sum * h / 3.0L);
}

/// Ascending power series of J_nu (sign = -1) or I_nu (sign = +1), long double.
inline long double bessel_series(long double nu, long double x, int sign) {
  const long double half = x / 2.0L;
  long double term = std::pow(half, nu) / std::tgamma(nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= static_cast<long double>(sign) * half * half /
            (static_cast<long double>(k) * (static_cast<long double>(k) + nu));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

/// Si(z) and Ci(z) from their power series (reliable for z <= ~12).
inline double sine_integral(double z) {
  long double sum = 0.0L;
  long double power = z;  // z^{2k+1}/(2k+1)!
  for (int k = 0; k < 80; ++k) {
    sum += (k % 2 == 0 ? 1.0L : -1.0L) * power / (2.0L * k + 1.0L);
    power *= static_cast<long double>(z) * z / ((2.0L * k + 2.0L) * (2.0L * k + 3.0L));
  }
  return static_cast<double>(sum);
}

inline double cosine_integral(double z) {
  constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
  long double sum = kEulerGamma + std::log(static_cast<long double>(z));
  long double power = static_cast<long double>(z) * z / 2.0L;  // z^{2k}/(2k)!
  for (int k = 1; k < 80; ++k) {
    sum += (k % 2 == 1 ? -1.0L : 1.0L) * power / (2.0L * k);
    power *= static_cast<long double>(z) * z / ((2.0L * k + 1.0L) * (2.0L * k + 2.0L));
  }
  return static_cast<double>(sum);
}

/// Newton iteration on w e^w - x for the principal Lambert branch, x > 0.
inline double lambert_newton(double x) {
  double w = std::log1p(x);
  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double step = (w * ew - x) / (ew * (w + 1.0));
    w -= step;
    if (std::abs(step) < 1e-17 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

}  // namespace oracle
