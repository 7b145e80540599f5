#pragma once

// Free-space scalar field with a sharp momentum cutoff 1/delta_x.

#include "entx/core.hpp"
#include "entx/numerics.hpp"

namespace entx::freefield {

struct FreeFieldParams {
  double m = 0.0;
  DetectorPair pair;

  void validate() const;
  double cutoff() const { return 1.0 / pair.delta_x; }
};

/// Radial integrals without the alpha^2 / (4 pi^2) prefactor:
///   p_hat = int p^2 / (E (E + dE)^2)
///   f_hat = int p sin(pd) / (E (E + dE) dE d)
///   e_hat = int p sin(pd) / (d E (E + dE)^2)
struct Integrals {
  double p_hat = 0.0;
  double f_hat = 0.0;
  double e_hat = 0.0;
  Flags flags = 0;
};

Integrals free_integrals(double m, double delta_e, double d, double cutoff,
                         const numerics::QuadratureSpec& spec = {}, bool with_e = true);

ReducedElements free_matrix_elements(const FreeFieldParams& params,
                                     const numerics::QuadratureSpec& spec = {});

double free_negativity(const FreeFieldParams& params, const numerics::QuadratureSpec& spec = {});

enum class Regime { kGapDominated, kMassDominated };

struct AsymptoticResult {
  double n = 0.0;
  Flags flags = 0;  // kAsymptoticRegime when d dE or d m exceed the limit
};

/// (alpha^2 / 2 pi^2) max(pi/(2 d dE) - ln(1/(s dX)), 0) with s = dE or m.
AsymptoticResult free_negativity_asymptotic(const FreeFieldParams& params, Regime regime,
                                            double limit = 0.1);

}  // namespace entx::freefield
