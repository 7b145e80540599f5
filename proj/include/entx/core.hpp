#pragma once

// Perturbative two-detector state model: reduced density matrix, negativity,
// discrete-environment matrix elements and the adiabatic rate bound.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "entx/error.hpp"

namespace entx {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct DetectorPair {
  double delta_e = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double d = 0.0;
  double delta_x = 0.0;
  Vec3 r1{};
  Vec3 r2{};

  void validate() const;

  /// Equal couplings, detectors at (-d/2, 0, 0) and (d/2, 0, 0).
  static DetectorPair symmetric(double delta_e, double alpha, double d, double delta_x);
};

struct ReducedElements {
  double p1 = 0.0;
  double p2 = 0.0;
  std::optional<cplx> e;  // absent when not computed for a scenario
  cplx f{0.0, 0.0};
  double f_imag_dropped = 0.0;  // imaginary part discarded when F was formed
  Flags flags = 0;

  void validate() const;
  /// Multiply every element by `factor` (e.g. alpha^2 when elements were
  /// computed at unit coupling).
  ReducedElements scaled(double factor) const;
};

/// 4x4 reduced state in the basis {ee, eg, ge, gg}.
using RhoA = Eigen::Matrix4cd;

struct ModeModel {
  std::vector<double> energies;
  std::vector<cplx> f1;  // <g|F_1|k> for mode k
  std::vector<cplx> f2;
  std::vector<std::string> labels;

  void validate() const;
  std::size_t size() const { return energies.size(); }
};

ReducedElements matrix_elements_discrete(const ModeModel& model, const DetectorPair& pair);

RhoA assemble_rho_A(const ReducedElements& elems);

/// Leading-order negativity max(sqrt((P1-P2)^2 + 4|F|^2) - P1 - P2, 0).
double negativity(const ReducedElements& elems);

/// Signed variant without the clamp, used for root finding.
double negativity_unclamped(const ReducedElements& elems);

/// K = 2 pi^2 N / alpha^2 for equal couplings.
double k_value(double n, double alpha);

/// Partial transpose over the first qubit.
Eigen::Matrix4cd partial_transpose_first(const RhoA& rho);

/// 2 |lambda_min| of the partial transpose of the assembled state (0 when
/// the spectrum is non-negative). Includes all orders of the 4x4 matrix.
double exact_pt_negativity(const RhoA& rho);

/// min_{k,j} (E_k + dE)^2 / (alpha_j |f_jk|); +infinity when every coupling
/// vanishes.
double adiabatic_rate_bound(const ModeModel& model, const DetectorPair& pair);

}  // namespace entx
