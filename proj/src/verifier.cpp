#include "entx/verifier.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <numbers>

namespace entx::verifier {

namespace {

constexpr double kPi = std::numbers::pi;

// Qubit s = 2 q1 + q2 with q = 0 excited.
int excited_count(int s) { return ((s >> 1) == 0 ? 1 : 0) + ((s & 1) == 0 ? 1 : 0); }

}  // namespace

int TruncatedHamiltonian::occupation(std::size_t mode_index, std::size_t k) const {
  const std::size_t base = static_cast<std::size_t>(n_max) + 1;
  std::size_t stride = 1;
  for (std::size_t i = k + 1; i < model.size(); ++i) stride *= base;
  return static_cast<int>((mode_index / stride) % base);
}

TruncatedHamiltonian build_truncated(const ModeModel& model, const DetectorPair& pair, int n_max,
                                     std::size_t dimension_cap) {
  model.validate();
  pair.validate();
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  const std::size_t base = static_cast<std::size_t>(n_max) + 1;
  std::size_t mode_dim = 1;
  for (std::size_t k = 0; k < model.size(); ++k) {
    mode_dim *= base;
    if (4 * mode_dim > dimension_cap) {
      throw PreconditionError("truncated dimension exceeds the cap of " +
                              std::to_string(dimension_cap));
    }
  }
  TruncatedHamiltonian h;
  h.model = model;
  h.pair = pair;
  h.n_max = n_max;
  h.mode_dim = mode_dim;
  const std::size_t dim = h.dim();
  const std::size_t modes = model.size();
  h.h0 = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.hint = h.h0;

  std::vector<std::size_t> stride(modes, 1);
  for (std::size_t k = modes; k-- > 1;) stride[k - 1] = stride[k] * base;

  const std::array<double, 2> alpha = {pair.alpha1, pair.alpha2};
  const std::array<const std::vector<cplx>*, 2> f = {&model.f1, &model.f2};
  for (int s = 0; s < 4; ++s) {
    for (std::size_t idx = 0; idx < mode_dim; ++idx) {
      const auto row = static_cast<Eigen::Index>(static_cast<std::size_t>(s) * mode_dim + idx);
      double e0 = pair.delta_e * excited_count(s);
      for (std::size_t k = 0; k < modes; ++k) e0 += model.energies[k] * h.occupation(idx, k);
      h.h0(row, row) = e0;
      for (int j = 0; j < 2; ++j) {
        const int flipped = s ^ (j == 0 ? 2 : 1);
        for (std::size_t k = 0; k < modes; ++k) {
          const int n = h.occupation(idx, k);
          const cplx fk = (*f[static_cast<std::size_t>(j)])[k];
          const double a = alpha[static_cast<std::size_t>(j)];
          // f a_k + conj(f) a_k^dagger
          if (n > 0) {
            const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(flipped) * mode_dim +
                                                       idx - stride[k]);
            h.hint(col, row) += a * fk * std::sqrt(static_cast<double>(n));
          }
          if (n < n_max) {
            const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(flipped) * mode_dim +
                                                       idx + stride[k]);
            h.hint(col, row) += a * std::conj(fk) * std::sqrt(static_cast<double>(n + 1));
          }
        }
      }
    }
  }
  return h;
}

RhoA reduce(const TruncatedHamiltonian& h, const Eigen::VectorXcd& psi) {
  if (static_cast<std::size_t>(psi.size()) != h.dim()) {
    throw PreconditionError("state dimension does not match the Hamiltonian");
  }
  RhoA rho = RhoA::Zero();
  const auto d = static_cast<Eigen::Index>(h.mode_dim);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rho(a, b) = psi.segment(b * d, d).dot(psi.segment(a * d, d));
    }
  }
  return rho;
}

ReducedElements elements_from_rho(const RhoA& rho) {
  ReducedElements el;
  el.p1 = rho(1, 1).real();
  el.p2 = rho(2, 2).real();
  el.e = rho(2, 1);
  el.f = rho(3, 0);
  return el;
}

GroundState exact_ground_reduced(const TruncatedHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.at(1.0));
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  GroundState g;
  g.energy = es.eigenvalues()(0);
  g.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
  if (g.gap < 1e-10) throw NumericalError("degenerate ground state (gap < 1e-10)");
  g.psi = es.eigenvectors().col(0);
  g.rho = reduce(h, g.psi);
  g.elements = elements_from_rho(g.rho);
  return g;
}

double element_distance(const ReducedElements& a, const ReducedElements& b) {
  double d = std::max(std::abs(a.p1 - b.p1), std::abs(a.p2 - b.p2));
  d = std::max(d, std::abs(a.f - b.f));
  if (a.e && b.e) d = std::max(d, std::abs(*a.e - *b.e));
  return d;
}

void RampSchedule::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw PreconditionError("ramp total_time must be positive");
  }
  if (!(samples_per_unit_time >= 0.0)) throw PreconditionError("samples_per_unit_time must be >= 0");
}

double RampSchedule::eta(double t) const {
  const double x = std::clamp(t / total_time, 0.0, 1.0);
  if (shape == RampShape::kLinear) return x;
  const double s = std::sin(0.5 * kPi * x);
  return s * s;
}

double RampSchedule::max_rate() const {
  return shape == RampShape::kLinear ? 1.0 / total_time : 0.5 * kPi / total_time;
}

RampSchedule RampSchedule::with_max_rate(double rate, RampShape shape) {
  if (!(rate > 0.0)) throw PreconditionError("ramp rate must be positive");
  RampSchedule r;
  r.shape = shape;
  r.total_time = shape == RampShape::kLinear ? 1.0 / rate : 0.5 * kPi / rate;
  return r;
}

Eigen::VectorXcd propagate(const TruncatedHamiltonian& h, double eta, const Eigen::VectorXcd& psi,
                           double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.at(eta));
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * psi);
}

RampResult evolve_ramp(const TruncatedHamiltonian& h, const RampSchedule& ramp) {
  ramp.validate();
  const GroundState ground = exact_ground_reduced(h);
  const double norm = h.at(1.0).cwiseAbs().rowwise().sum().maxCoeff();  // bounds the spectral norm
  double step = 1.0 / (50.0 * norm);
  if (ramp.samples_per_unit_time > 0.0) step = std::min(step, 1.0 / ramp.samples_per_unit_time);
  const long steps = static_cast<long>(std::ceil(ramp.total_time / step));
  const double dt = ramp.total_time / static_cast<double>(steps);

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(h.dim()));
  psi(static_cast<Eigen::Index>(3 * h.mode_dim)) = 1.0;
  RampResult out;
  Eigen::VectorXcd term(psi.size());
  for (long i = 0; i < steps; ++i) {
    const double eta = ramp.eta((static_cast<double>(i) + 0.5) * dt);
    // exp(-i H dt) psi as a Taylor series; ||H dt|| <= 1/50 so a handful of
    // terms reach round-off.
    term = psi;
    for (int n = 1; n <= 30; ++n) {
      term = (h.h0 * term + eta * (h.hint * term)) * cplx(0.0, -dt / n);
      psi += term;
      if (term.norm() < 1e-17) break;
    }
    const double drift = std::abs(psi.norm() - 1.0);
    out.norm_drift = std::max(out.norm_drift, drift);
    if (drift > 1e-8) {
      throw NumericalError("norm drift " + std::to_string(drift) + " at step " + std::to_string(i));
    }
  }
  out.steps = steps;
  out.fidelity = std::norm(ground.psi.dot(psi));
  out.rho = reduce(h, psi);
  out.negativity = exact_pt_negativity(out.rho);
  return out;
}

ModeModel field_modes(double m, const DetectorPair& pair, const std::vector<Vec3>& momenta,
                      const std::vector<double>& weights) {
  if (momenta.size() != weights.size()) throw PreconditionError("momenta and weights differ in size");
  if (!(m >= 0.0)) throw PreconditionError("mass must be >= 0");
  ModeModel model;
  for (std::size_t j = 0; j < momenta.size(); ++j) {
    const auto& p = momenta[j];
    const double e = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m * m);
    if (!(weights[j] > 0.0)) throw PreconditionError("weights must be positive");
    const double amp = std::sqrt(weights[j] / (2.0 * e));
    auto phase = [&](const Vec3& r) { return p[0] * r[0] + p[1] * r[1] + p[2] * r[2]; };
    model.energies.push_back(e);
    model.f1.push_back(std::polar(amp, phase(pair.r1)));
    model.f2.push_back(std::polar(amp, phase(pair.r2)));
    model.labels.push_back("p" + std::to_string(j));
  }
  model.validate();
  return model;
}

MomentumGrid shell_grid(double cutoff, int radial, int directions) {
  if (!(cutoff > 0.0) || radial < 1 || directions < 1) {
    throw PreconditionError("shell_grid: cutoff > 0, radial >= 1, directions >= 1");
  }
  MomentumGrid g;
  const double dp = cutoff / radial;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double solid = 4.0 * kPi / directions;
  for (int i = 0; i < radial; ++i) {
    const double p = (i + 0.5) * dp;
    const double w = p * p * dp * solid / std::pow(2.0 * kPi, 3);
    for (int k = 0; k < directions; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / directions;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      g.momenta.push_back({p * rho * std::cos(phi), p * rho * std::sin(phi), p * z});
      g.weights.push_back(w);
    }
  }
  return g;
}

}  // namespace entx::verifier
