#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "entx/dirichlet.hpp"
#include "entx/freefield.hpp"
#include "oracles.hpp"

using namespace entx;
using namespace entx::dirichlet;
using std::numbers::pi;

namespace {

DirichletParams make(double gamma, double eps, Orientation o, double lt = 1e3) {
  DirichletParams p;
  p.gamma = gamma;
  p.eps = eps;
  p.lambda_tilde = lt;
  p.orientation = o;
  p.alpha = 0.1;
  return p;
}

double k_of(const ReducedElements& el) { return k_value(negativity(el), 0.1); }

double free_k(double eps, double lt) {
  freefield::FreeFieldParams fp{0.0, DetectorPair::symmetric(eps, 0.1, 1.0, 1.0 / lt)};
  return k_of(freefield::free_matrix_elements(fp));
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(dirichlet_elements_perpendicular(make(1.0, 0.02, Orientation::kPerpendicular),
                                                   Method::kClosedForm),
                  PreconditionError);
  CHECK_THROWS_AS(dirichlet_elements_perpendicular(make(0.5, 0.0, Orientation::kPerpendicular),
                                                   Method::kClosedForm),
                  PreconditionError);
  CHECK_THROWS_AS(dirichlet_elements_parallel(make(0.5, 0.02, Orientation::kPerpendicular)),
                  PreconditionError);
  CHECK_NOTHROW(dirichlet_elements_parallel(make(1.5, 0.02, Orientation::kParallel)));
}

TEST_CASE("window terms equal the printed closed-form summands") {
  const double gamma = 0.37;
  const double eps = 0.02;
  const double c = eps / gamma;
  // Full-window sum through m = 40, evaluated both ways.
  double printed_p = 0.0;
  double printed_f = 0.0;
  for (int m = 0; m <= 40; ++m) {
    const double x = m + eps / (gamma * pi);
    printed_p += (2.0 * m + 1.0) / (x * (x + 1.0)) *
                 (1.0 - std::sin((2 * m + 1) * (gamma + 1) * pi / 2) /
                            ((2 * m + 1) * std::sin((gamma + 1) * pi / 2)));
    printed_f += std::log((x + 1.0) / x) *
                 (std::sin((2 * m + 1) * gamma * pi / 2) / std::sin(gamma * pi / 2) -
                  (m % 2 == 0 ? 1.0 : -1.0));
  }
  // The same truncation through the library: cutoff exactly at 41 pi.
  auto p = make(gamma, eps, Orientation::kPerpendicular, 41.0 * pi * gamma);
  auto el = dirichlet_elements_perpendicular(p, Method::kClosedForm);
  CHECK(el.p1 == doctest::Approx(0.01 / (8.0 * pi * pi) * printed_p).epsilon(1e-12));
  CHECK(el.f.real() == doctest::Approx(0.01 * gamma / (8.0 * pi * eps) * printed_f).epsilon(1e-12));
  (void)c;
}

TEST_CASE("closed form and direct integral agree") {
  for (double gamma : {0.1, 0.5, 0.8}) {
    auto p = make(gamma, 0.02, Orientation::kPerpendicular);
    auto a = dirichlet_elements_perpendicular(p, Method::kClosedForm);
    auto b = dirichlet_elements_perpendicular(p, Method::kIntegral);
    CHECK(b.flags == 0);
    CHECK(a.p1 == doctest::Approx(b.p1).epsilon(1e-8));
    CHECK(a.f.real() == doctest::Approx(b.f.real()).epsilon(1e-8));
  }
}

TEST_CASE("elements vanish as the plates close in") {
  auto half = dirichlet_elements_perpendicular(make(0.5, 0.02, Orientation::kPerpendicular),
                                               Method::kClosedForm);
  auto edge = dirichlet_elements_perpendicular(make(1.0 - 1e-6, 0.02, Orientation::kPerpendicular),
                                               Method::kClosedForm);
  CHECK(edge.p1 >= 0.0);
  CHECK(edge.p1 <= 1e-6 * half.p1);
  CHECK(std::abs(edge.f) <= 1e-6 * std::abs(half.f));
}

TEST_CASE("empty window sum") {
  auto el = dirichlet_elements_perpendicular(make(0.5, 0.02, Orientation::kPerpendicular, 1.0),
                                             Method::kClosedForm);
  CHECK(el.p1 == 0.0);
  CHECK(has_flag(el.flags, Flag::kEmptyWindowSum));
}

TEST_CASE("wide plates recover free space for both orientations") {
  for (double eps : {0.015, 0.02, 0.03}) {
    const double kf = free_k(eps, 1e3);
    const double kp = k_of(dirichlet_elements_perpendicular(
        make(0.01, eps, Orientation::kPerpendicular), Method::kClosedForm));
    const double kl = k_of(dirichlet_elements_parallel(make(0.01, eps, Orientation::kParallel)));
    CHECK(kf > 0.0);
    CHECK(std::abs(kp - kf) <= 0.01 * kf);
    CHECK(std::abs(kl - kf) <= 0.01 * kf);
    CHECK(std::abs(kl - kp) <= 0.01 * kp);
  }
}

TEST_CASE("parallel P equals the midplane window sum") {
  // A detector on the midplane sees the a = 1 bracket (2m+1)pi/2 - (-1)^m pi/2.
  const double gamma = 0.7;
  const double eps = 0.02;
  const double c = eps / gamma;
  const double q = 1e3 / gamma;
  long double sum = 0.0L;
  const long windows = static_cast<long>(std::floor(q / pi));
  for (long m = 0; m <= windows; ++m) {
    const double lo = m * pi;
    const double hi = std::min(lo + pi, q);
    const double w = 1.0 / (lo + c) - 1.0 / (hi + c);
    sum += w * ((2.0 * m + 1.0) * pi / 2.0 - (m % 2 == 0 ? 1.0 : -1.0) * pi / 2.0);
  }
  auto el = dirichlet_elements_parallel(make(gamma, eps, Orientation::kParallel));
  CHECK(el.p1 == doctest::Approx(0.01 / (4.0 * pi * pi) * static_cast<double>(sum)).epsilon(1e-8));
}

TEST_CASE("parallel F image term against direct q quadrature") {
  // n = 0 image pair of the F kernel, integrated numerically in q.
  const double gamma = 1.3;
  const double c = 0.02 / gamma;
  const double q = 200.0 / gamma;
  auto p = make(gamma, 0.02, Orientation::kParallel, 200.0);
  numerics::SeriesSpec one;
  one.max_terms = 1;
  one.tail_tol = 1e-300;
  auto el = dirichlet_elements_parallel(p, one);
  const double b0 = gamma;
  const double b1 = std::sqrt(1.0 + gamma * gamma);
  const double b2 = std::sqrt(4.0 + gamma * gamma);
  const double b3 = std::sqrt(9.0 + gamma * gamma);
  auto kern = [&](double x) {
    // n = 0, +1, -1 terms of the F sum.
    return (std::sin(b0 * x) / b0 - std::sin(b1 * x) / b1 + 2.0 * std::sin(b2 * x) / b2 -
            std::sin(b3 * x) / b3 - std::sin(b1 * x) / b1) /
           (x + c);
  };
  const double ref = oracle::simpson(kern, 0.0, q, 4000000);
  CHECK(el.f.real() == doctest::Approx(0.01 * gamma / (4.0 * pi * pi * 0.02) * ref).epsilon(1e-7));
}

TEST_CASE("parallel image truncation refinement") {
  auto p = make(0.8, 0.02, Orientation::kParallel);
  numerics::SeriesSpec s1;
  s1.max_terms = 400;
  s1.tail_tol = 1e-300;
  numerics::SeriesSpec s2 = s1;
  s2.max_terms = 800;
  auto a = dirichlet_elements_parallel(p, s1);
  auto b = dirichlet_elements_parallel(p, s2);
  CHECK(a.p1 == doctest::Approx(b.p1).epsilon(1e-6));
  CHECK(a.f.real() == doctest::Approx(b.f.real()).epsilon(1e-6));
}

TEST_CASE("parallel degradation at gamma = 2") {
  const double k_small = k_of(dirichlet_elements_parallel(make(0.01, 0.03, Orientation::kParallel)));
  const double k_big = k_of(dirichlet_elements_parallel(make(2.0, 0.03, Orientation::kParallel)));
  CHECK(k_big >= 0.0);
  CHECK(k_big < k_small);
}

TEST_CASE("coarse shape check: monotone in gamma and ordered in eps") {
  const std::vector<double> grid = {0.01, 0.05, 0.2, 0.5, 0.9};
  std::vector<double> prev_curve;
  for (double eps : {0.015, 0.02, 0.03}) {
    std::vector<double> curve;
    for (double g : grid) {
      auto el = dirichlet_elements_perpendicular(make(g, eps, Orientation::kPerpendicular),
                                                 Method::kClosedForm);
      CHECK(el.p1 >= 0.0);
      curve.push_back(k_of(el));
    }
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1]);
    if (!prev_curve.empty()) {
      for (std::size_t i = 0; i < curve.size(); ++i) CHECK(curve[i] <= prev_curve[i]);
    }
    prev_curve = curve;
  }
}

TEST_CASE("window sensitivity diagnostic") {
  auto s = window_sensitivity(make(0.5, 0.02, Orientation::kPerpendicular));
  CHECK(std::isfinite(s.p_rel));
  CHECK(s.p_rel > 0.0);
  CHECK(s.p_rel < 1e-2);
  MESSAGE("floor/ceil sensitivity P " << s.p_rel << " F " << s.f_rel);
}
