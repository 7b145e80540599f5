#pragma once

// Massless field between Dirichlet plates at x = +-L_x/2, in the
// dimensionless variables gamma = d/L_x, eps = d dE, lambda_tilde = d/dX.

#include "entx/core.hpp"
#include "entx/numerics.hpp"

namespace entx::dirichlet {

enum class Orientation { kPerpendicular, kParallel };
enum class Method { kClosedForm, kIntegral };

struct DirichletParams {
  double gamma = 0.0;
  double eps = 0.0;
  double lambda_tilde = 0.0;
  Orientation orientation = Orientation::kPerpendicular;
  double alpha = 0.0;

  void validate() const;
  double c() const { return eps / gamma; }             // eps/gamma, dE in units of 1/L_x
  double q_max() const { return lambda_tilde / gamma; }  // cutoff in units of 1/L_x
};

/// Closed-form (window sum) or direct-integral evaluation for detectors on
/// the x axis. E is not computed. The last, partial window [M pi, q_max] is
/// integrated exactly in both methods, M = floor(q_max / pi).
ReducedElements dirichlet_elements_perpendicular(const DirichletParams& params, Method method,
                                                 const numerics::QuadratureSpec& spec = {});

/// Detectors on the y axis: image sums of per-image q integrals. The q
/// integrals are done in closed form through the sine/cosine-integral
/// auxiliary functions.
ReducedElements dirichlet_elements_parallel(const DirichletParams& params,
                                            const numerics::SeriesSpec& series = {});

/// Relative change of the printed window sum (full windows m = 0..M_max) when
/// M_max = floor(q_max/pi) is replaced by ceil(q_max/pi); reported for P and F.
struct WindowSensitivity {
  double p_rel = 0.0;
  double f_rel = 0.0;
};
WindowSensitivity window_sensitivity(const DirichletParams& params);

}  // namespace entx::dirichlet
