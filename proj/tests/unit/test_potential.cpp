#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entx/potential.hpp"
#include "oracles.hpp"

using namespace entx;
using namespace entx::potential;
using std::numbers::pi;

namespace {

// dE/m = 0.1, m dX = 1e-3, units m = 1.
freefield::FreeFieldParams free_params(double md, double alpha = 0.1) {
  return {1.0, DetectorPair::symmetric(0.1, alpha, md, 1e-3)};
}

PotentialParams gaussian(double md, double lv, double sigma) {
  PotentialParams p;
  p.free = free_params(md);
  p.lambda_v0 = lv;
  p.sigma_b = sigma;
  return p;
}

// 4 pi^2 int dc1 dc2 I0(s s1 s2) exp(sign s c1 c2) cos(r (p2 c2 - p1 c1)) exp(-s):
// the angular double integral after the two azimuths are done analytically.
double angular_oracle(int sign, double sigma, double p1, double p2, double d) {
  const double s = sigma * sigma * p1 * p2;
  const double r = 0.5 * d;
  auto inner = [&](double c1) {
    auto f = [&](double c2) {
      const double s1 = std::sqrt(std::max(0.0, 1.0 - c1 * c1));
      const double s2 = std::sqrt(std::max(0.0, 1.0 - c2 * c2));
      const double i0 = static_cast<double>(oracle::bessel_series(0.0L, s * s1 * s2, +1));
      return i0 * std::exp(sign * s * c1 * c2 - s) * std::cos(r * (p2 * c2 - p1 * c1));
    };
    return oracle::simpson(f, -1.0, 1.0, 600);
  };
  return 4.0 * pi * pi * oracle::simpson(inner, -1.0, 1.0, 600);
}

}  // namespace

TEST_CASE("gaussian_ft") {
  const double v0 = 2.5;
  CHECK(gaussian_ft(v0, 1.3, 0.0) == doctest::Approx(v0 * std::pow(1.3, 3) / std::pow(2 * pi, 1.5)));
  const double p = 0.7;
  CHECK(gaussian_ft(v0, 2.6, p) / gaussian_ft(v0, 1.3, p) ==
        doctest::Approx(8.0 * std::exp(-1.5 * 1.3 * 1.3 * p * p)));
  // int d^3p V~(p) = V(0)
  auto radial = [&](double q) { return 4.0 * pi * q * q * gaussian_ft(v0, 1.3, q); };
  CHECK(oracle::simpson(radial, 0.0, 15.0, 20000) == doctest::Approx(v0).epsilon(1e-10));
  CHECK_THROWS_AS(gaussian_ft(1.0, 0.0, 1.0), PreconditionError);
}

TEST_CASE("angular expansion against direct angular quadrature") {
  for (int sign : {+1, -1}) {
    for (auto [sigma, p1, p2, d] : {std::array<double, 4>{0.01, 1.0, 1.0, 2.0},
                                    std::array<double, 4>{0.8, 2.0, 3.0, 1.5},
                                    std::array<double, 4>{1.5, 3.0, 2.5, 0.7}}) {
      auto a = angular_expansion(sign, sigma, p1, p2, d, 40);
      CHECK_FALSE(a.truncated);
      CHECK(a.scaled == doctest::Approx(angular_oracle(sign, sigma, p1, p2, d)).epsilon(1e-7));
    }
  }
}

TEST_CASE("angular expansion limits") {
  // sigma -> 0: product of single-detector angular integrals 4 pi j0(p d/2).
  const double p1 = 1.3;
  const double p2 = 0.6;
  const double d = 2.0;
  const double sigma = std::sqrt(1e-4 / (p1 * p2));
  auto a = angular_expansion(+1, sigma, p1, p2, d, 30);
  const double j1 = std::sin(p1 * d / 2) / (p1 * d / 2);
  const double j2 = std::sin(p2 * d / 2) / (p2 * d / 2);
  CHECK(a.scaled == doctest::Approx(16.0 * pi * pi * j1 * j2 * std::exp(-1e-4)).epsilon(1e-4));

  // d -> 0: only the n = 0 term survives.
  auto full = angular_expansion(+1, 0.5, p1, p2, 1e-6, 20);
  auto lead = angular_expansion(+1, 0.5, p1, p2, 1e-6, 0);
  CHECK(full.scaled == doctest::Approx(lead.scaled).epsilon(1e-10));

  // Sign average keeps the even orders only.
  const double s = 0.25 * 1.3 * 0.6;
  auto plus = angular_expansion(+1, 0.5, p1, p2, d, 12);
  auto minus = angular_expansion(-1, 0.5, p1, p2, d, 12);
  long double even = 0.0L;
  for (int n = 0; n <= 12; n += 2) {
    const long double nu = n + 0.5L;
    even += (2 * n + 1) * oracle::bessel_series(nu, s, +1) * std::exp(-static_cast<long double>(s)) *
            oracle::bessel_series(nu, p1 * d / 2, -1) * oracle::bessel_series(nu, p2 * d / 2, -1);
  }
  const double pref = std::pow(2 * pi, 3.5) / (p1 * p2 * 0.5 * d);
  CHECK(0.5 * (plus.scaled + minus.scaled) ==
        doctest::Approx(pref * static_cast<double>(even)).epsilon(1e-12));
}

TEST_CASE("zero potential and exact linearity") {
  auto zero = delta_elements(gaussian(0.5, 0.0, 1.0));
  CHECK(zero.delta_p == 0.0);
  CHECK(zero.delta_f == 0.0);
  auto a = delta_elements(gaussian(0.5, 0.01, 1.0));
  auto b = delta_elements(gaussian(0.5, 0.02, 1.0));
  CHECK(std::abs(b.delta_p - 2.0 * a.delta_p) <= 1e-12 * std::abs(b.delta_p));
  CHECK(std::abs(b.delta_f - 2.0 * a.delta_f) <= 1e-12 * std::abs(b.delta_f));
}

TEST_CASE("constant potential reproduces the mass-shift Taylor term") {
  auto free = free_params(0.5);
  for (double lambda : {1e-3, -1e-3}) {
    auto t = mass_shift_taylor_check(free, lambda);
    CHECK(std::abs(t.lhs_p - t.rhs_p) <= std::max(1e-10, std::abs(t.lhs_p) * std::abs(lambda) * 5));
    CHECK(std::abs(t.lhs_f - t.rhs_f) <= std::max(1e-10, std::abs(t.lhs_f) * std::abs(lambda) * 5));
  }
  auto up = mass_shift_taylor_check(free, 1e-3);
  auto down = mass_shift_taylor_check(free, -1e-3);
  CHECK(up.rhs_p == -down.rhs_p);
  CHECK(up.rhs_f == -down.rhs_f);
  auto none = mass_shift_taylor_check(free, 0.0);
  CHECK(none.lhs_p == 0.0);
  CHECK(none.rhs_p == 0.0);
}

TEST_CASE("wide potential acts as a mass shift") {
  // sigma_b = 100 d at md = 0.5.
  auto p = gaussian(0.5, -0.01, 50.0);
  const double n = negativity(corrected_elements(p));
  freefield::FreeFieldParams shifted = free_params(0.5);
  shifted.m = std::sqrt(1.0 - 0.02);
  const double n_eff = freefield::free_negativity(shifted);
  CHECK(std::abs(n - n_eff) <= 0.02 * n_eff);
}

TEST_CASE("attractive potential helps, repulsive hurts") {
  const double base = negativity(freefield::free_matrix_elements(free_params(0.5)));
  const double att = negativity(corrected_elements(gaussian(0.5, -0.01, 1.0)));
  const double rep = negativity(corrected_elements(gaussian(0.5, 0.01, 1.0)));
  CHECK(att > base);
  CHECK(base > rep);
}

TEST_CASE("Bessel order doubling leaves the corrections unchanged") {
  auto p = gaussian(0.5, -0.01, 2.0);
  auto adaptive = delta_elements(p);
  CHECK(adaptive.flags == 0);
  p.fixed_n_max = adaptive.max_order;
  auto once = delta_elements(p);
  p.fixed_n_max = 2 * adaptive.max_order;
  auto twice = delta_elements(p);
  CHECK(std::abs(twice.delta_p - once.delta_p) <= 1e-8 * std::abs(once.delta_p));
  CHECK(std::abs(twice.delta_f - once.delta_f) <= 1e-8 * std::abs(once.delta_f));
}

TEST_CASE("entanglement onset at the tuned separation") {
  const double md = 0.9145;
  const auto base = freefield::free_matrix_elements(free_params(md));
  CHECK(negativity(base) == 0.0);
  CHECK(std::abs(std::abs(base.f) - base.p1) < 0.01 * base.p1);
  CHECK(negativity(corrected_elements(gaussian(md, -0.01, 20.0))) > 0.0);
  CHECK(negativity(corrected_elements(gaussian(md, 0.01, 20.0))) == 0.0);
}

TEST_CASE("parameter validation") {
  auto p = gaussian(0.5, 0.01, 0.0);
  CHECK_THROWS_AS(delta_elements(p), PreconditionError);
  p = gaussian(0.5, 0.01, 1.0);
  p.free.m = 0.0;
  CHECK_THROWS_AS(delta_elements(p), PreconditionError);
  CHECK_THROWS_AS(angular_expansion(0, 1.0, 1.0, 1.0, 1.0, 4), PreconditionError);
  CHECK_THROWS_AS(angular_expansion(1, 1.0, 0.0, 1.0, 1.0, 4), PreconditionError);
}
