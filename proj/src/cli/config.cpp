#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "entx/cli.hpp"
#include "entx/verifier.hpp"
#include "scenario.hpp"

namespace entx::cli {

namespace {

using nlohmann::json;

const std::map<std::string, json>& defaults() {
  static const std::map<std::string, json> table = {
      {"free", {{"m", 0.0}, {"delta_e", 1.0}, {"alpha", 0.1}, {"d", 1.0}, {"delta_x", 1e-3}}},
      {"dirichlet",
       {{"gamma", 0.5},
        {"eps", 0.02},
        {"lambda_tilde", 1e3},
        {"orientation", "perpendicular"},
        {"method", "closed_form"},
        {"alpha", 0.1}}},
      {"potential",
       {{"m", 1.0},
        {"delta_e", 0.1},
        {"alpha", 0.1},
        {"d", 0.5},
        {"delta_x", 1e-3},
        {"lambda_v0", -0.01},
        {"sigma_b", 1.0}}},
      {"thermal",
       {{"m", 1.0}, {"delta_e", 0.1}, {"alpha", 0.1}, {"d", 0.7}, {"delta_x", 1e-3}, {"theta", 0.0}}},
      {"verify",
       {{"energies", {1.0, 1.7}},
        {"f1", {{1.0, 0.0}, {0.5, 0.3}}},
        {"f2", {{0.9, 0.0}, {0.4, -0.2}}},
        {"delta_e", 0.5},
        {"alpha", 0.1},
        {"n_max", 2},
        {"ramp", "smooth"},
        {"ramp_fraction", 0.01}}},
  };
  return table;
}

const std::map<std::string, json>& numeric_defaults() {
  static const numerics::QuadratureSpec q;
  static const numerics::SeriesSpec s;
  static const std::map<std::string, json> table = {
      {"rel_tol", q.rel_tol},           {"abs_tol", q.abs_tol},
      {"max_subdivisions", q.max_subdivisions}, {"series_max_terms", s.max_terms},
      {"series_tail_tol", s.tail_tol},  {"bessel_cap", 1024},
  };
  return table;
}

bool same_kind(const json& a, const json& b) {
  if (a.is_number()) return b.is_number();
  return a.type() == b.type();
}

void validate_point(const std::string& scenario, const json& p, const RunConfig& cfg) {
  using namespace detail;
  const double alpha = num(p, "alpha");
  if (scenario == "free") {
    free_params(p, alpha).validate();
  } else if (scenario == "dirichlet") {
    dirichlet_params(p, alpha).validate();
    (void)method(p);
  } else if (scenario == "potential") {
    potential_params(p, alpha, cfg.bessel_cap).validate();
  } else if (scenario == "thermal") {
    thermal_params(p, alpha).validate();
  } else {
    const auto model = mode_model(p);
    const auto pair = verify_pair(p);
    pair.validate();
    const double n_max = num(p, "n_max");
    if (n_max != std::floor(n_max)) throw PreconditionError("n_max must be an integer");
    (void)verifier::build_truncated(model, pair, static_cast<int>(n_max));
    const auto ramp = p.at("ramp").get<std::string>();
    if (ramp != "linear" && ramp != "smooth") {
      throw PreconditionError("ramp must be 'linear' or 'smooth'");
    }
    if (!(num(p, "ramp_fraction") >= 0.0)) throw PreconditionError("ramp_fraction must be >= 0");
  }
}

std::string point_text(const std::optional<Sweep>& sweep, double v) {
  if (!sweep) return "";
  std::ostringstream os;
  os << " at " << sweep->param << " = " << v;
  return os.str();
}

}  // namespace

json load_document(const std::string& path, const std::vector<std::string>& sets) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config file '" + path + "'");
    try {
      doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
      throw PreconditionError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw PreconditionError("config root must be an object");
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw PreconditionError("--set expects key=value, got '" + s + "'");
    }
    std::string key = s.substr(0, eq);
    const std::string text = s.substr(eq + 1);
    if (key.find('.') == std::string::npos && key != "scenario") key = "params." + key;
    json value;
    try {
      value = json::parse(text);
    } catch (const json::parse_error&) {
      value = text;
    }
    std::string pointer = "/" + key;
    for (auto& c : pointer) {
      if (c == '.') c = '/';
    }
    doc[json::json_pointer(pointer)] = value;
  }
  return doc;
}

std::vector<double> grid(double start, double stop, int count, const std::string& spacing) {
  if (count < 2) throw PreconditionError("sweep count must be >= 2");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw PreconditionError("sweep bounds must be finite");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double n = count - 1;
  if (spacing == "linear") {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + (stop - start) * (i / n);
  } else if (spacing == "log") {
    if (!(start > 0.0) || !(stop > 0.0)) throw PreconditionError("log sweep needs positive bounds");
    const double a = std::log(start);
    const double b = std::log(stop);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * (i / n));
  } else {
    throw PreconditionError("sweep spacing must be 'linear' or 'log', got '" + spacing + "'");
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

RunConfig resolve(const json& doc, const std::string& scenario_override) {
  if (!doc.is_object()) throw PreconditionError("config root must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "scenario" && key != "params" && key != "sweep" && key != "numerics") {
      throw PreconditionError("unknown top-level key '" + key + "'");
    }
  }
  RunConfig cfg;
  cfg.scenario = scenario_override;
  if (cfg.scenario.empty()) {
    if (!doc.contains("scenario")) throw PreconditionError("no scenario given");
    cfg.scenario = doc.at("scenario").get<std::string>();
  }
  const auto it = defaults().find(cfg.scenario);
  if (it == defaults().end()) throw PreconditionError("unknown scenario '" + cfg.scenario + "'");

  cfg.params = it->second;
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw PreconditionError("'params' must be an object");
    for (const auto& [key, value] : doc["params"].items()) {
      if (!cfg.params.contains(key)) {
        throw PreconditionError("unknown parameter '" + key + "' for scenario '" + cfg.scenario + "'");
      }
      if (!same_kind(cfg.params[key], value)) {
        throw PreconditionError("parameter '" + key + "' has the wrong type");
      }
      cfg.params[key] = value;
    }
  }

  json numerics = json::object();
  for (const auto& [key, value] : numeric_defaults()) numerics[key] = value;
  if (doc.contains("numerics")) {
    for (const auto& [key, value] : doc["numerics"].items()) {
      if (!numerics.contains(key)) throw PreconditionError("unknown numerics key '" + key + "'");
      if (!value.is_number()) throw PreconditionError("numerics '" + key + "' must be a number");
      numerics[key] = value;
    }
  }
  cfg.quad.rel_tol = numerics["rel_tol"].get<double>();
  cfg.quad.abs_tol = numerics["abs_tol"].get<double>();
  cfg.quad.max_subdivisions = numerics["max_subdivisions"].get<int>();
  cfg.series.max_terms = numerics["series_max_terms"].get<int>();
  cfg.series.tail_tol = numerics["series_tail_tol"].get<double>();
  cfg.bessel_cap = numerics["bessel_cap"].get<int>();
  cfg.quad.validate();
  cfg.series.validate();

  json sweep_doc = nullptr;
  if (doc.contains("sweep") && !doc["sweep"].is_null()) {
    const json& s = doc["sweep"];
    for (const auto& [key, _] : s.items()) {
      if (key != "param" && key != "start" && key != "stop" && key != "count" && key != "spacing" &&
          key != "values") {
        throw PreconditionError("unknown sweep key '" + key + "'");
      }
    }
    Sweep sw;
    if (!s.contains("param")) throw PreconditionError("sweep needs 'param'");
    sw.param = s["param"].get<std::string>();
    if (!cfg.params.contains(sw.param) || !cfg.params[sw.param].is_number()) {
      throw PreconditionError("sweep parameter '" + sw.param + "' is not a numeric parameter of '" +
                              cfg.scenario + "'");
    }
    if (s.contains("values")) {
      sw.values = s["values"].get<std::vector<double>>();
      if (sw.values.size() < 2) throw PreconditionError("sweep needs at least 2 values");
    } else {
      for (const char* k : {"start", "stop", "count"}) {
        if (!s.contains(k)) throw PreconditionError(std::string("sweep needs '") + k + "'");
      }
      sw.values = grid(s["start"].get<double>(), s["stop"].get<double>(), s["count"].get<int>(),
                       s.value("spacing", std::string("linear")));
    }
    sweep_doc = {{"param", sw.param}, {"values", sw.values}};
    cfg.sweep = std::move(sw);
  }

  // Every point is checked before anything runs.
  auto check = [&](const json& p, double v) {
    try {
      validate_point(cfg.scenario, p, cfg);
    } catch (const PreconditionError& e) {
      throw PreconditionError(std::string(e.what()) + point_text(cfg.sweep, v));
    } catch (const json::exception& e) {
      throw PreconditionError(std::string("bad parameter value: ") + e.what());
    }
  };
  if (cfg.sweep) {
    for (double v : cfg.sweep->values) {
      json p = cfg.params;
      p[cfg.sweep->param] = v;
      check(p, v);
    }
  } else {
    check(cfg.params, 0.0);
  }

  cfg.resolved = {{"scenario", cfg.scenario},
                  {"params", cfg.params},
                  {"sweep", sweep_doc},
                  {"numerics", numerics}};
  return cfg;
}

}  // namespace entx::cli
