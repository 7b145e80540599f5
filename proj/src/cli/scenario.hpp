#pragma once

// Parameter documents -> library parameter structs. Shared by config
// validation and evaluation so both see the same objects.

#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "entx/cli.hpp"

#include "entx/core.hpp"
#include "entx/dirichlet.hpp"
#include "entx/freefield.hpp"
#include "entx/potential.hpp"
#include "entx/thermal.hpp"

namespace entx::cli::detail {

using nlohmann::json;

inline double num(const json& p, const char* key) { return p.at(key).get<double>(); }

inline freefield::FreeFieldParams free_params(const json& p, double alpha) {
  return {num(p, "m"), DetectorPair::symmetric(num(p, "delta_e"), alpha, num(p, "d"),
                                               num(p, "delta_x"))};
}

inline dirichlet::Orientation orientation(const json& p) {
  const auto s = p.at("orientation").get<std::string>();
  if (s == "perpendicular") return dirichlet::Orientation::kPerpendicular;
  if (s == "parallel") return dirichlet::Orientation::kParallel;
  throw PreconditionError("orientation must be 'perpendicular' or 'parallel', got '" + s + "'");
}

inline dirichlet::Method method(const json& p) {
  const auto s = p.at("method").get<std::string>();
  if (s == "closed_form") return dirichlet::Method::kClosedForm;
  if (s == "integral") return dirichlet::Method::kIntegral;
  throw PreconditionError("method must be 'closed_form' or 'integral', got '" + s + "'");
}

inline dirichlet::DirichletParams dirichlet_params(const json& p, double alpha) {
  dirichlet::DirichletParams d;
  d.gamma = num(p, "gamma");
  d.eps = num(p, "eps");
  d.lambda_tilde = num(p, "lambda_tilde");
  d.orientation = orientation(p);
  d.alpha = alpha;
  return d;
}

inline potential::PotentialParams potential_params(const json& p, double alpha, int cap) {
  potential::PotentialParams pp;
  pp.free = free_params(p, alpha);
  pp.lambda_v0 = num(p, "lambda_v0");
  pp.sigma_b = num(p, "sigma_b");
  pp.n_max_cap = cap;
  return pp;
}

inline thermal::ThermalParams thermal_params(const json& p, double alpha) {
  thermal::ThermalParams t;
  t.free = free_params(p, alpha);
  t.theta = num(p, "theta");
  return t;
}

inline cplx complex_of(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw PreconditionError("couplings are numbers or [re, im] pairs");
}

inline ModeModel mode_model(const json& p) {
  ModeModel m;
  for (const auto& e : p.at("energies")) m.energies.push_back(e.get<double>());
  for (const auto& f : p.at("f1")) m.f1.push_back(complex_of(f));
  for (const auto& f : p.at("f2")) m.f2.push_back(complex_of(f));
  m.validate();
  return m;
}

// Separation and cutoff play no role for a discrete model.
inline DetectorPair verify_pair(const json& p) {
  return DetectorPair::symmetric(num(p, "delta_e"), num(p, "alpha"), 1.0, 1.0);
}

using Row = std::vector<std::string>;

/// Runs `row(i)` for i in [0, count) on up to `jobs` threads; results are
/// stored by index so the output order never depends on scheduling.
std::vector<Row> parallel_rows(std::size_t count, int jobs, const std::function<Row(std::size_t)>& row);

/// Header block shared by every table.
std::vector<std::string> header_for(const json& resolved);

}  // namespace entx::cli::detail
