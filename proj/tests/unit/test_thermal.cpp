#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "entx/thermal.hpp"
#include "oracles.hpp"

using namespace entx;
using namespace entx::thermal;
using std::numbers::pi;

namespace {

// dE/m = 0.1, m dX = 1e-3, d = eps/dE; m = 1.
ThermalParams fig6(double eps, double theta) {
  ThermalParams t;
  t.free = {1.0, DetectorPair::symmetric(0.1, 0.1, eps / 0.1, 1e-3)};
  t.theta = theta;
  return t;
}

double gap(const ReducedElements& el) { return std::abs(el.f) - el.p1; }

}  // namespace

TEST_CASE("occupation") {
  auto t = fig6(0.07, 0.0);
  CHECK(occupation(0.0, t) == 0.0);
  CHECK(occupation(3.0, t) == 0.0);
  t.theta = 1.0 / std::log(2.0);
  CHECK(occupation(0.0, t) == doctest::Approx(1.0).epsilon(1e-14));
  // beta E = 4.7
  t.theta = 1.0 / 4.7;
  const double n = occupation(0.0, t);
  CHECK(n / std::exp(-4.7) == doctest::Approx(1.0 / (1.0 - std::exp(-4.7))).epsilon(1e-12));
  CHECK(std::abs(n / std::exp(-4.7) - 1.0) < 0.01);
}

TEST_CASE("validation") {
  auto t = fig6(0.07, 0.1);
  t.free.m = 0.1;
  CHECK_THROWS_AS(thermal_elements(t), PreconditionError);
  t.free.m = 0.05;
  CHECK_THROWS_AS(thermal_elements(t), PreconditionError);
  t = fig6(0.07, -0.1);
  CHECK_THROWS_AS(thermal_elements(t), PreconditionError);
}

TEST_CASE("zero temperature is the vacuum") {
  for (double eps : {0.07, 0.075, 0.08}) {
    auto t = fig6(eps, 0.0);
    auto th = thermal_elements(t);
    auto vac = freefield::free_matrix_elements(t.free);
    CHECK(th.p1 == vac.p1);
    CHECK(th.f == vac.f);
    CHECK_FALSE(th.e.has_value());
  }
}

TEST_CASE("full thermal integrand against direct quadrature") {
  auto t = fig6(0.07, 0.05);
  const double m = 1.0;
  const double de = 0.1;
  const double d = 0.7;
  const double beta = 1.0 / 0.05;
  auto n = [&](double e) { return 1.0 / std::expm1(beta * e); };
  auto kp = [&](double p) {
    const double e = std::sqrt(p * p + m * m);
    return p * p / e * ((1 + n(e)) / ((e + de) * (e + de)) + n(e) / ((e - de) * (e - de)));
  };
  auto kf = [&](double p) {
    const double e = std::sqrt(p * p + m * m);
    return p * std::sin(p * d) / e * ((1 + n(e)) / (e + de) + n(e) / (de - e)) / (de * d);
  };
  const double pref = 0.01 / (4.0 * pi * pi);
  const double ref_p = pref * oracle::simpson(kp, 0.0, 1000.0, 4000000);
  const double ref_f = pref * oracle::simpson(kf, 0.0, 1000.0, 4000000);
  auto el = thermal_elements(t);
  CHECK(el.p1 == doctest::Approx(ref_p).epsilon(1e-10));
  CHECK(el.f.real() == doctest::Approx(ref_f).epsilon(1e-10));

  // Occupation-weighted part alone.
  auto nk = [&](double p) {
    const double e = std::sqrt(p * p + m * m);
    return p * p / e * n(e) * (1.0 / ((e + de) * (e + de)) + 1.0 / ((e - de) * (e - de)));
  };
  auto inc = thermal_increments(t);
  CHECK(inc.p_hat == doctest::Approx(oracle::simpson(nk, 0.0, 10.0, 200000)).epsilon(1e-10));
}

TEST_CASE("channel positivity") {
  auto t = fig6(0.07, 0.5);
  for (double p : {0.0, 0.01, 0.3, 1.0, 10.0, 100.0}) {
    const double e = std::sqrt(p * p + 1.0);
    const double n = occupation(p, t);
    CHECK((1 + n) / ((e + 0.1) * (e + 0.1)) > 0.0);
    CHECK(n / ((e - 0.1) * (e - 0.1)) > 0.0);
  }
}

TEST_CASE("decay with temperature and ordering in eps") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.01 * i);
  for (int i = 1; i <= 8; ++i) grid.push_back(0.5 * i);
  std::vector<double> prev;
  for (double eps : {0.07, 0.075, 0.08}) {
    std::vector<double> curve;
    for (double th : grid) curve.push_back(k_value(negativity(thermal_elements(fig6(eps, th))), 0.1));
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1]);
    CHECK(curve.front() > 0.0);
    CHECK(curve.back() == 0.0);
    if (!prev.empty()) {
      for (std::size_t i = 0; i < curve.size(); ++i) CHECK(curve[i] <= prev[i]);
    }
    prev = curve;
  }
}

TEST_CASE("low temperature correction") {
  auto zero = low_temperature_P1(fig6(0.07, 0.0));
  CHECK(zero.integral == 0.0);
  CHECK(zero.estimate == 0.0);

  // dE -> 0 integral vs the exact occupation increment of P at dE/m = 0.1.
  auto t = fig6(0.07, 0.05);
  auto lt = low_temperature_P1(t);
  const double dp = thermal_elements(t).p1 - thermal_elements(fig6(0.07, 0.0)).p1;
  CHECK(dp > 0.0);
  CHECK(std::abs(lt.integral - dp) <= 0.05 * dp);
  CHECK(lt.flags == 0);

  // Closed-form estimate at beta m = 20: same exponential, crude prefactor.
  CHECK(lt.estimate > 0.0);
  MESSAGE("beta m = 20: estimate / integral = " << lt.estimate / lt.integral);

  auto hot = low_temperature_P1(fig6(0.07, 0.25));
  CHECK(has_flag(hot.flags, Flag::kLowTemperatureRegime));
}

TEST_CASE("critical temperature") {
  auto far = fig6(0.07, 0.0);
  far.free.pair = DetectorPair::symmetric(0.1, 0.1, 40.0, 1e-3);
  CHECK_THROWS_AS(critical_temperature(far), NumericalError);

  for (double eps : {0.07, 0.075, 0.08}) {
    auto c = critical_temperature(fig6(eps, 0.0), 1e-5);
    CHECK(c.root > 0.0);
    CHECK(gap(thermal_elements(fig6(eps, c.root - 0.002))) > 0.0);
    CHECK(gap(thermal_elements(fig6(eps, c.root + 0.002))) < 0.0);
    CHECK(std::isfinite(c.estimate));
    MESSAGE("eps " << eps << ": root " << c.root << " estimate " << c.estimate);
  }
}
