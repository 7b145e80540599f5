#pragma once

// Brute-force check of the perturbative engine: two qubits coupled to a few
// truncated bosonic modes, exact ground state and adiabatic switching.

#include <Eigen/Dense>
#include <vector>

#include "entx/core.hpp"

namespace entx::verifier {

/// Basis: qubit index s (ordering of RhoA) times mode occupations, mode 0
/// the slowest-varying digit. Full index = s * mode_dim + mode_index.
struct TruncatedHamiltonian {
  ModeModel model;
  DetectorPair pair;
  int n_max = 0;
  std::size_t mode_dim = 0;
  Eigen::MatrixXcd h0;    // diagonal free part
  Eigen::MatrixXcd hint;  // sum_j alpha_j sigma_x^(j) (x) F_j

  std::size_t dim() const { return 4 * mode_dim; }
  Eigen::MatrixXcd at(double eta) const { return h0 + eta * hint; }
  /// Occupation of mode k in the mode index.
  int occupation(std::size_t mode_index, std::size_t k) const;
};

inline constexpr std::size_t kDefaultDimensionCap = 324;

TruncatedHamiltonian build_truncated(const ModeModel& model, const DetectorPair& pair, int n_max,
                                     std::size_t dimension_cap = kDefaultDimensionCap);

/// Partial trace of a pure state over the modes.
RhoA reduce(const TruncatedHamiltonian& h, const Eigen::VectorXcd& psi);

/// Elements read off the positions P1 = (1,1), P2 = (2,2), E = (2,1), F = (3,0).
ReducedElements elements_from_rho(const RhoA& rho);

struct GroundState {
  Eigen::VectorXcd psi;
  double energy = 0.0;
  double gap = 0.0;
  RhoA rho;
  ReducedElements elements;
};

/// Throws NumericalError when the ground state is degenerate (gap < 1e-10).
GroundState exact_ground_reduced(const TruncatedHamiltonian& h);

/// Largest |difference| over P1, P2, E, F.
double element_distance(const ReducedElements& a, const ReducedElements& b);

enum class RampShape { kLinear, kSmooth };

struct RampSchedule {
  double total_time = 1.0;
  RampShape shape = RampShape::kSmooth;
  double samples_per_unit_time = 0.0;  // 0: derived from the step bound only

  void validate() const;
  double eta(double t) const;
  /// max |d eta / dt| over the ramp.
  double max_rate() const;
  /// Ramp duration giving the requested max |d eta / dt|.
  static RampSchedule with_max_rate(double rate, RampShape shape);
};

struct RampResult {
  RhoA rho;
  double fidelity = 0.0;    // |<ground of H(1)|psi(total_time)>|^2
  double norm_drift = 0.0;  // max | ||psi|| - 1 | along the way
  double negativity = 0.0;  // exact partial-transpose negativity of rho
  long steps = 0;
};

/// Starts from |g g, vacuum>; step h <= 1/(50 ||H(1)||), each step the
/// exponential at the midpoint eta, summed to round-off. Throws
/// NumericalError on norm drift > 1e-8.
RampResult evolve_ramp(const TruncatedHamiltonian& h, const RampSchedule& ramp);

/// exp(-i H(eta) t) psi through the eigendecomposition of H(eta).
Eigen::VectorXcd propagate(const TruncatedHamiltonian& h, double eta, const Eigen::VectorXcd& psi,
                           double t);

/// Momentum-grid discretization of a scalar field of mass m: mode j has
/// energy E_j = sqrt(p_j^2 + m^2) and coupling exp(i p_j.r_k) sqrt(w_j / (2 E_j)),
/// with weights reproducing int d^3p / (2 pi)^3.
ModeModel field_modes(double m, const DetectorPair& pair, const std::vector<Vec3>& momenta,
                      const std::vector<double>& weights);

struct MomentumGrid {
  std::vector<Vec3> momenta;
  std::vector<double> weights;
};

/// Midpoint radial shells on [0, cutoff] times a Fibonacci sphere of
/// directions with equal solid-angle weights.
MomentumGrid shell_grid(double cutoff, int radial, int directions);

}  // namespace entx::verifier
