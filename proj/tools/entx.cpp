#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "entx/cli.hpp"
#include "entx/error.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  int jobs = 1;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::string figure = "all";
};

void common_flags(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--set", o.sets, "override, key=value (repeatable)");
  app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--tol-rel", o.tol_rel, "quadrature relative tolerance");
  app->add_option("--tol-abs", o.tol_abs, "quadrature absolute tolerance");
}

int report(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
  return code;
}

int run_scenario(const std::string& scenario, Options o) {
  if (o.tol_rel) o.sets.push_back("numerics.rel_tol=" + json(*o.tol_rel).dump());
  if (o.tol_abs) o.sets.push_back("numerics.abs_tol=" + json(*o.tol_abs).dump());
  const auto doc = entx::cli::load_document(o.config, o.sets);
  const auto cfg = entx::cli::resolve(doc, scenario);
  const auto table = entx::cli::run(cfg, o.jobs);

  // Buffer first: a failure never leaves a partial table behind.
  std::ostringstream buf;
  entx::cli::write_csv(table, buf);
  if (o.out.empty() || o.out == "-") {
    std::cout << buf.str() << std::flush;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw entx::PreconditionError("cannot write '" + o.out + "'");
    f << buf.str();
  }
  return 0;
}

int run_figures(const Options& o) {
  entx::numerics::QuadratureSpec quad;
  if (o.tol_rel) quad.rel_tol = *o.tol_rel;
  if (o.tol_abs) quad.abs_tol = *o.tol_abs;
  const auto files = entx::cli::emit_figure_data(o.figure, o.out.empty() ? "." : o.out, o.jobs, quad);
  for (const auto& f : files) std::cout << f.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative detector-pair entanglement in scalar field environments"};
  app.set_version_flag("--version", std::string(entx::cli::kVersion));
  app.require_subcommand(1);

  Options opts;
  std::string chosen;
  for (const char* name : {"free", "dirichlet", "potential", "thermal", "verify"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " scenario");
    common_flags(sub, opts);
    sub->add_option("--out", opts.out, "output CSV (default stdout)");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* fig = app.add_subcommand("figures", "write figure data tables");
  fig->add_option("figure", opts.figure, "fig2..fig6 or all")->capture_default_str();
  fig->add_option("--out", opts.out, "output directory (default .)");
  fig->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  fig->add_option("--tol-rel", opts.tol_rel, "quadrature relative tolerance");
  fig->add_option("--tol-abs", opts.tol_abs, "quadrature absolute tolerance");
  fig->callback([&chosen] { chosen = "figures"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    return chosen == "figures" ? run_figures(opts) : run_scenario(chosen, opts);
  } catch (const entx::PreconditionError& e) {
    return report("invalid_config", e.what(), 2);
  } catch (const entx::NumericalError& e) {
    return report("numerical", e.what(), 3);
  } catch (const json::exception& e) {
    return report("invalid_config", e.what(), 2);
  } catch (const std::exception& e) {
    return report("internal", e.what(), 1);
  }
}
