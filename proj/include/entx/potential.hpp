#pragma once

// Corrections to P and F from a classical potential coupled to :phi^2:,
// for a spherically symmetric Gaussian potential centered between the
// detectors and for a constant potential.

#include "entx/core.hpp"
#include "entx/freefield.hpp"
#include "entx/numerics.hpp"

namespace entx::potential {

struct PotentialParams {
  freefield::FreeFieldParams free;
  double lambda_v0 = 0.0;  // lambda * V0, units of m^2
  double sigma_b = 0.0;
  int n_max_partial = 8;   // starting order of the angular Bessel series
  int n_max_cap = 1024;
  int fixed_n_max = 0;     // > 0 disables the adaptive order selection

  void validate() const;
};

/// V0 sigma^3 exp(-sigma^2 p^2 / 2) / (2 pi)^{3/2}
double gaussian_ft(double v0, double sigma_b, double p);

struct AngularResult {
  double scaled = 0.0;     // value * exp(-sigma^2 p1 p2)
  double exponent = 0.0;   // sigma^2 p1 p2
  int terms = 0;
  bool truncated = false;  // last term above 1e-10 of the partial sum
};

/// int dOmega1 dOmega2 exp(sign sigma^2 p1.p2) exp(-i (p2 - p1).r1) with
/// |r1| = d/2, through the half-integer Bessel series truncated at n_max.
AngularResult angular_expansion(int sign, double sigma_b, double p1, double p2, double d,
                                int n_max);

struct DeltaElements {
  double delta_p = 0.0;  // delta P1 = delta P2
  double delta_f = 0.0;
  Flags flags = 0;
  int max_order = 0;     // largest Bessel order used at any node
};

/// Gaussian potential corrections, linear in lambda_v0 and alpha^2.
DeltaElements delta_elements(const PotentialParams& params,
                             const numerics::QuadratureSpec& spec = {});

/// Constant potential V = m^2/2 with coupling lambda (Klein-Gordon mass
/// shift m^2 -> (1 + lambda) m^2): first-order corrections in closed radial form.
DeltaElements constant_potential_delta(const freefield::FreeFieldParams& free, double lambda,
                                       const numerics::QuadratureSpec& spec = {});

struct TaylorCheck {
  double lhs_p = 0.0;  // P(sqrt(1+lambda) m) - P(m)
  double rhs_p = 0.0;  // constant-potential delta P
  double lhs_f = 0.0;
  double rhs_f = 0.0;
};

TaylorCheck mass_shift_taylor_check(const freefield::FreeFieldParams& free, double lambda = 1e-3,
                                    const numerics::QuadratureSpec& spec = {});

/// Free elements plus the potential corrections.
ReducedElements corrected_elements(const PotentialParams& params,
                                   const numerics::QuadratureSpec& spec = {});

}  // namespace entx::potential
