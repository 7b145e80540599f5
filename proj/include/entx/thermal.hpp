#pragma once

// Massive scalar field in a thermal state. theta = k_B T / m with k_B = 1.

#include "entx/core.hpp"
#include "entx/freefield.hpp"
#include "entx/numerics.hpp"

namespace entx::thermal {

struct ThermalParams {
  freefield::FreeFieldParams free;  // requires m > delta_e
  double theta = 0.0;

  void validate() const;
};

/// Bose-Einstein occupation 1/(exp(E_p/(theta m)) - 1); 0 at theta = 0.
double occupation(double p, const ThermalParams& params);

/// Occupation-weighted parts of the radial integrals, without alpha^2/(4 pi^2).
/// P_hat(theta) = P_hat(0) + p_hat, F_hat(theta) = F_hat(0) + f_hat.
struct Increments {
  double p_hat = 0.0;
  double f_hat = 0.0;
  Flags flags = 0;
};

Increments thermal_increments(const ThermalParams& params,
                              const numerics::QuadratureSpec& spec = {});

/// Thermal P and F; E is not computed. At theta = 0 this is the vacuum result.
ReducedElements thermal_elements(const ThermalParams& params,
                                 const numerics::QuadratureSpec& spec = {});

struct LowTemperature {
  double integral = 0.0;  // alpha^2 int_0^{1/dX} dp 2 p^2 n_p / (4 pi^2 E^3)
  double estimate = 0.0;  // alpha^2 exp(-beta m) / (2 pi^2 sqrt(beta m))
  Flags flags = 0;        // kLowTemperatureRegime when beta m < 5
};

LowTemperature low_temperature_P1(const ThermalParams& params,
                                  const numerics::QuadratureSpec& spec = {});

struct CriticalTemperature {
  double estimate = 0.0;  // Lambert-W formula, in units of theta
  double root = 0.0;      // bisection root of |F| - P = 0
  Flags flags = 0;
};

/// Throws NumericalError("no critical temperature") when the vacuum
/// negativity vanishes, or when the Lambert-W bracket is not positive.
/// params.theta is ignored.
CriticalTemperature critical_temperature(const ThermalParams& params, double theta_tol = 1e-6,
                                         const numerics::QuadratureSpec& spec = {});

}  // namespace entx::thermal
