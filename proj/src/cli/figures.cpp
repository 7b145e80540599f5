#include <cmath>
#include <fstream>

#include "entx/cli.hpp"
#include "scenario.hpp"

namespace entx::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Curve {
  json doc;
};

json sweep(const char* param, double start, double stop, int count, const char* spacing) {
  return {{"param", param}, {"start", start}, {"stop", stop}, {"count", count}, {"spacing", spacing}};
}

std::vector<Curve> curves_for(const std::string& id) {
  std::vector<Curve> out;
  if (id == "fig2" || id == "fig3") {
    const bool perp = id == "fig2";
    for (double eps : {0.015, 0.02, 0.03}) {
      out.push_back({{{"scenario", "dirichlet"},
                      {"params",
                       {{"eps", eps},
                        {"lambda_tilde", 1e3},
                        {"orientation", perp ? "perpendicular" : "parallel"}}},
                      {"sweep", sweep("gamma", 0.01, perp ? 0.99 : 2.0, 60, "log")}}});
    }
  } else if (id == "fig4" || id == "fig5") {
    const double d = id == "fig4" ? 0.5 : 0.9145;
    const std::vector<double> lams =
        id == "fig4" ? std::vector<double>{-0.01, 0.0, 0.01} : std::vector<double>{-0.01, 0.01};
    for (double lam : lams) {
      out.push_back({{{"scenario", "potential"},
                      {"params",
                       {{"m", 1.0}, {"delta_e", 0.1}, {"d", d}, {"delta_x", 1e-3}, {"lambda_v0", lam}}},
                      {"sweep", sweep("sigma_b", 0.2, 20.0, 30, "log")}}});
    }
  } else if (id == "fig6") {
    for (double eps : {0.07, 0.075, 0.08}) {
      out.push_back({{{"scenario", "thermal"},
                      {"params", {{"m", 1.0}, {"delta_e", 0.1}, {"d", eps / 0.1}, {"delta_x", 1e-3}}},
                      {"sweep", sweep("theta", 0.0, 4.0, 81, "linear")}}});
    }
  } else {
    throw PreconditionError("unknown figure '" + id + "' (fig2..fig6 or all)");
  }
  return out;
}

// Wide-potential limit: the potential acts as a mass shift m^2 -> (1 + 2 lambda_v0) m^2.
Table asymptotes(const std::string& id, const numerics::QuadratureSpec& quad) {
  const double d = id == "fig4" ? 0.5 : 0.9145;
  const double alpha = 0.1;
  Table t;
  t.header = detail::header_for({{"figure", id},
                                 {"params", {{"m", 1.0}, {"delta_e", 0.1}, {"d", d}, {"delta_x", 1e-3}}},
                                 {"numerics", {{"rel_tol", quad.rel_tol}, {"abs_tol", quad.abs_tol}}}});
  t.columns = {"lambda_v0", "m_eff", "N", "K"};
  for (double lam : {-0.01, 0.01}) {
    const double m_eff = std::sqrt(1.0 + 2.0 * lam);
    freefield::FreeFieldParams fp{m_eff, DetectorPair::symmetric(0.1, alpha, d, 1e-3)};
    const double n = freefield::free_negativity(fp, quad);
    t.rows.push_back({format_number(lam), format_number(m_eff), format_number(n),
                      format_number(k_value(n, alpha))});
  }
  return t;
}

void write_file(const fs::path& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path.string() + "'");
  write_csv(t, out);
}

}  // namespace

std::vector<fs::path> emit_figure_data(const std::string& id, const fs::path& out_dir, int jobs,
                                       const numerics::QuadratureSpec& quad) {
  if (id == "all") {
    std::vector<fs::path> all;
    for (const char* f : {"fig2", "fig3", "fig4", "fig5", "fig6"}) {
      auto files = emit_figure_data(f, out_dir, jobs, quad);
      all.insert(all.end(), files.begin(), files.end());
    }
    return all;
  }
  quad.validate();
  const auto curves = curves_for(id);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw PreconditionError("cannot create '" + out_dir.string() + "'");

  std::vector<fs::path> files;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    json doc = curves[i].doc;
    doc["numerics"] = {{"rel_tol", quad.rel_tol}, {"abs_tol", quad.abs_tol},
                       {"max_subdivisions", quad.max_subdivisions}};
    const auto cfg = resolve(doc, "");
    const auto path = out_dir / (id + "_curve" + std::to_string(i + 1) + ".csv");
    write_file(path, run(cfg, jobs));
    files.push_back(path);
  }
  if (id == "fig4" || id == "fig5") {
    const auto path = out_dir / (id + "_asymptotes.csv");
    write_file(path, asymptotes(id, quad));
    files.push_back(path);
  }
  return files;
}

}  // namespace entx::cli
