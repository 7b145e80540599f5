#include "entx/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace entx {

void DetectorPair::validate() const {
  if (!(delta_e > 0.0)) throw PreconditionError("delta_e must be positive");
  if (!(d > 0.0)) throw PreconditionError("separation d must be positive");
  if (!(delta_x > 0.0)) throw PreconditionError("delta_x must be positive");
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) throw PreconditionError("couplings must be >= 0");
  double dist2 = 0.0;
  for (int i = 0; i < 3; ++i) dist2 += (r1[i] - r2[i]) * (r1[i] - r2[i]);
  if (std::abs(std::sqrt(dist2) - d) > 1e-12 * d) {
    throw PreconditionError("|r1 - r2| does not match d");
  }
}

DetectorPair DetectorPair::symmetric(double delta_e, double alpha, double d, double delta_x) {
  DetectorPair p;
  p.delta_e = delta_e;
  p.alpha1 = alpha;
  p.alpha2 = alpha;
  p.d = d;
  p.delta_x = delta_x;
  p.r1 = {-0.5 * d, 0.0, 0.0};
  p.r2 = {0.5 * d, 0.0, 0.0};
  return p;
}

void ReducedElements::validate() const {
  if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw PreconditionError("P1, P2 must be >= 0");
  if (!std::isfinite(std::abs(f))) throw PreconditionError("F must be finite");
  if (e) {
    const double gap = p1 * p2 - std::norm(*e);
    if (gap < -1e-14 * p1 * p2 - 1e-300) throw PreconditionError("P1 P2 < |E|^2");
  }
  if (p1 + p2 > 1.0) throw PreconditionError("P1 + P2 > 1: outside the perturbative regime");
}

ReducedElements ReducedElements::scaled(double factor) const {
  ReducedElements out = *this;
  out.p1 *= factor;
  out.p2 *= factor;
  if (out.e) *out.e *= factor;
  out.f *= factor;
  out.f_imag_dropped *= factor;
  return out;
}

void ModeModel::validate() const {
  if (energies.empty()) throw PreconditionError("mode model is empty");
  if (f1.size() != energies.size() || f2.size() != energies.size()) {
    throw PreconditionError("mode model lists differ in length");
  }
  if (!labels.empty() && labels.size() != energies.size()) {
    throw PreconditionError("mode labels differ in length");
  }
  for (double e : energies) {
    if (!(e > 0.0)) throw PreconditionError("mode energies must be positive");
  }
}

ReducedElements matrix_elements_discrete(const ModeModel& model, const DetectorPair& pair) {
  model.validate();
  if (!(pair.delta_e > 0.0)) throw PreconditionError("delta_e must be positive");
  const double de = pair.delta_e;
  double p1 = 0.0;
  double p2 = 0.0;
  cplx e{0.0, 0.0};
  cplx f{0.0, 0.0};
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double den = model.energies[k] + de;
    const cplx cross = model.f1[k] * std::conj(model.f2[k]);
    p1 += std::norm(model.f1[k]) / (den * den);
    p2 += std::norm(model.f2[k]) / (den * den);
    e += cross / (den * den);
    f += cross / (de * den);
  }
  ReducedElements out;
  const double a12 = pair.alpha1 * pair.alpha2;
  out.p1 = pair.alpha1 * pair.alpha1 * p1;
  out.p2 = pair.alpha2 * pair.alpha2 * p2;
  out.e = a12 * e;
  out.f = cplx(a12 * f.real(), 0.0);
  out.f_imag_dropped = a12 * f.imag();
  return out;
}

RhoA assemble_rho_A(const ReducedElements& elems) {
  elems.validate();
  if (elems.p1 + elems.p2 > 1.0 - 1e-9) {
    throw PreconditionError("P1 + P2 = 1: degenerate, outside the perturbative regime");
  }
  RhoA rho = RhoA::Zero();
  const cplx e = elems.e.value_or(cplx{0.0, 0.0});
  rho(1, 1) = elems.p1;
  rho(2, 2) = elems.p2;
  rho(3, 3) = 1.0 - elems.p1 - elems.p2;
  rho(2, 1) = e;
  rho(1, 2) = std::conj(e);
  rho(3, 0) = elems.f;
  rho(0, 3) = std::conj(elems.f);
  return rho;
}

double negativity_unclamped(const ReducedElements& elems) {
  const double dp = elems.p1 - elems.p2;
  return std::sqrt(dp * dp + 4.0 * std::norm(elems.f)) - elems.p1 - elems.p2;
}

double negativity(const ReducedElements& elems) {
  return std::max(negativity_unclamped(elems), 0.0);
}

double k_value(double n, double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("K requires alpha > 0");
  return 2.0 * std::numbers::pi * std::numbers::pi * n / (alpha * alpha);
}

Eigen::Matrix4cd partial_transpose_first(const RhoA& rho) {
  // index = 2*q1 + q2; transpose the q1 labels
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * c + b, 2 * a + d);
  return pt;
}

double exact_pt_negativity(const RhoA& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose_first(rho),
                                                     Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -2.0 * lmin : 0.0;
}

double adiabatic_rate_bound(const ModeModel& model, const DetectorPair& pair) {
  model.validate();
  double best = std::numeric_limits<double>::infinity();
  const std::array<double, 2> alpha = {pair.alpha1, pair.alpha2};
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double num = (model.energies[k] + pair.delta_e) * (model.energies[k] + pair.delta_e);
    const std::array<double, 2> amp = {std::abs(model.f1[k]), std::abs(model.f2[k])};
    for (int j = 0; j < 2; ++j) {
      const double c = alpha[j] * amp[j];
      if (c > 0.0) best = std::min(best, num / c);
    }
  }
  return best;
}

}  // namespace entx
