#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "entx/cli.hpp"
#include "entx/verifier.hpp"
#include "scenario.hpp"

namespace entx::cli {

namespace detail {

std::vector<Row> parallel_rows(std::size_t count, int jobs,
                               const std::function<Row(std::size_t)>& row) {
  std::vector<Row> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = row(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, jobs));
  if (n == 1 || count < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(n, count); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::string> header_for(const json& resolved) {
  return {kVersion, "config: " + resolved.dump()};
}

}  // namespace detail

namespace {

using detail::Row;
using nlohmann::json;

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

std::string flag_text(Flags f) {
  const auto s = describe_flags(f);
  return s.empty() ? "none" : s;
}

std::vector<std::string> columns_for(const RunConfig& cfg) {
  std::vector<std::string> cols;
  if (cfg.sweep) cols.push_back(cfg.sweep->param);
  for (const char* c : {"P1", "P2", "E", "F", "N", "K"}) cols.emplace_back(c);
  if (cfg.scenario == "verify") {
    for (const char* c : {"N_pert", "N_ramp", "elem_error", "fidelity"}) cols.emplace_back(c);
  }
  cols.emplace_back("flags");
  return cols;
}

// Elements are evaluated at unit coupling and rescaled, so K is the same
// number for every alpha.
Row element_row(const ReducedElements& unit, double alpha) {
  const auto el = unit.scaled(alpha * alpha);
  Row r;
  r.push_back(format_number(el.p1));
  r.push_back(format_number(el.p2));
  r.push_back(el.e ? format_number(std::abs(*el.e)) : "NA");
  r.push_back(format_number(std::abs(el.f)));
  r.push_back(format_number(negativity(el)));
  r.push_back(format_number(kTwoPiSq * negativity(unit)));
  r.push_back(flag_text(el.flags));
  return r;
}

Row verify_row(const json& p) {
  using namespace detail;
  const auto model = mode_model(p);
  const auto pair = verify_pair(p);
  const double alpha = pair.alpha1;
  const auto h = verifier::build_truncated(model, pair, static_cast<int>(num(p, "n_max")));
  const auto g = verifier::exact_ground_reduced(h);
  const auto pert = matrix_elements_discrete(model, pair);
  const double n_exact = exact_pt_negativity(g.rho);

  std::string n_ramp = "NA";
  std::string fidelity = "NA";
  const double rate = num(p, "ramp_fraction") * adiabatic_rate_bound(model, pair);
  if (rate > 0.0 && std::isfinite(rate)) {
    const auto shape = p.at("ramp").get<std::string>() == "linear" ? verifier::RampShape::kLinear
                                                                    : verifier::RampShape::kSmooth;
    const auto res = verifier::evolve_ramp(h, verifier::RampSchedule::with_max_rate(rate, shape));
    n_ramp = format_number(res.negativity);
    fidelity = format_number(res.fidelity);
  }

  Row r;
  r.push_back(format_number(g.elements.p1));
  r.push_back(format_number(g.elements.p2));
  r.push_back(g.elements.e ? format_number(std::abs(*g.elements.e)) : "NA");
  r.push_back(format_number(std::abs(g.elements.f)));
  r.push_back(format_number(n_exact));
  r.push_back(alpha > 0.0 ? format_number(k_value(n_exact, alpha)) : "NA");
  r.push_back(format_number(negativity(pert)));
  r.push_back(n_ramp);
  r.push_back(format_number(verifier::element_distance(g.elements, pert)));
  r.push_back(fidelity);
  r.push_back(flag_text(g.elements.flags | pert.flags));
  return r;
}

Row evaluate(const RunConfig& cfg, const json& p) {
  using namespace detail;
  const double alpha = num(p, "alpha");
  if (cfg.scenario == "free") {
    return element_row(freefield::free_matrix_elements(free_params(p, 1.0), cfg.quad), alpha);
  }
  if (cfg.scenario == "dirichlet") {
    const auto dp = dirichlet_params(p, 1.0);
    const auto el = dp.orientation == dirichlet::Orientation::kPerpendicular
                        ? dirichlet::dirichlet_elements_perpendicular(dp, method(p), cfg.quad)
                        : dirichlet::dirichlet_elements_parallel(dp, cfg.series);
    return element_row(el, alpha);
  }
  if (cfg.scenario == "potential") {
    return element_row(potential::corrected_elements(potential_params(p, 1.0, cfg.bessel_cap), cfg.quad),
                       alpha);
  }
  if (cfg.scenario == "thermal") {
    return element_row(thermal::thermal_elements(thermal_params(p, 1.0), cfg.quad), alpha);
  }
  return verify_row(p);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "NA";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Table run(const RunConfig& cfg, int jobs) {
  Table t;
  t.header = detail::header_for(cfg.resolved);
  t.columns = columns_for(cfg);
  const std::size_t count = cfg.sweep ? cfg.sweep->values.size() : 1;
  const std::size_t width = t.columns.size();
  t.rows = detail::parallel_rows(count, jobs, [&](std::size_t i) {
    json p = cfg.params;
    Row lead;
    if (cfg.sweep) {
      p[cfg.sweep->param] = cfg.sweep->values[i];
      lead.push_back(format_number(cfg.sweep->values[i]));
    }
    Row body;
    try {
      body = evaluate(cfg, p);
    } catch (const NumericalError&) {
      body.assign(width - lead.size() - 1, "NA");
      body.push_back("numerical_error");
    }
    lead.insert(lead.end(), body.begin(), body.end());
    return lead;
  });
  return t;
}

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& h : table.header) out << "# " << h << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace entx::cli
