#include "glasso/error.hpp"
#include "glasso/experiments.hpp"
#include "glasso/version.hpp"

namespace glasso {
namespace {

template <typename T>
T get(const nlohmann::json& j, const char* section, const char* key) {
  const nlohmann::json* node = &j;
  std::string name = key;
  if (section != nullptr) {
    require(j.contains(section), ErrorCode::format_error,
            std::string("manifest: missing section ") + section);
    node = &j.at(section);
    name = std::string(section) + "." + key;
  }
  require(node->contains(key), ErrorCode::format_error, "manifest: missing key " + name);
  try {
    return node->at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::format_error, "manifest: key " + name + " has the wrong type");
  }
}

}  // namespace

nlohmann::json phase_config_json(const PhaseConfig& c) {
  nlohmann::json j;
  j["scene"] = {{"side", c.scene.side}, {"T", c.scene.T}, {"D", c.scene.D},
                {"sigma", c.scene.sigma}};
  j["seed"] = c.base_seed;
  j["lambda"] = {{"mode", std::string(to_string(c.lambda_mode))},
                 {"lambda1", c.lambda1},
                 {"lambda2", c.lambda2}};
  j["solver"] = {{"max_iterations", c.solver.max_iterations},
                 {"kkt_tolerance", c.solver.kkt_tolerance},
                 {"objective_rel_tolerance", c.solver.objective_rel_tolerance},
                 {"anomaly_first", c.solver.anomaly_first ? 1 : 0}};
  j["phase"] = {{"s_values", c.s_values},
                {"alpha_values", c.alpha_values},
                {"trials_per_cell", c.trials_per_cell},
                {"epsilon_p", c.epsilon_p}};
  j["certify"] = {{"epsilon_override", c.epsilon_override}};
  return j;
}

PhaseConfig phase_config_from_json(const nlohmann::json& j) {
  PhaseConfig c;
  c.scene.side = get<Index>(j, "scene", "side");
  c.scene.T = get<Index>(j, "scene", "T");
  c.scene.D = get<Index>(j, "scene", "D");
  c.scene.sigma = get<double>(j, "scene", "sigma");
  c.base_seed = get<std::uint64_t>(j, nullptr, "seed");
  c.lambda_mode = parse_lambda_mode(get<std::string>(j, "lambda", "mode"));
  c.lambda1 = get<double>(j, "lambda", "lambda1");
  c.lambda2 = get<double>(j, "lambda", "lambda2");
  c.solver.max_iterations = get<Index>(j, "solver", "max_iterations");
  c.solver.kkt_tolerance = get<double>(j, "solver", "kkt_tolerance");
  c.solver.objective_rel_tolerance = get<double>(j, "solver", "objective_rel_tolerance");
  if (j.at("solver").contains("anomaly_first"))
    c.solver.anomaly_first = get<Index>(j, "solver", "anomaly_first") != 0;
  c.s_values = get<std::vector<Index>>(j, "phase", "s_values");
  c.alpha_values = get<std::vector<double>>(j, "phase", "alpha_values");
  c.trials_per_cell = get<Index>(j, "phase", "trials_per_cell");
  c.epsilon_p = get<double>(j, "phase", "epsilon_p");
  if (j.contains("certify") && j.at("certify").contains("epsilon_override"))
    c.epsilon_override = get<double>(j, "certify", "epsilon_override");
  return c;
}

nlohmann::json phase_manifest(const PhaseGrid& grid, const Boundary& boundary) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = phase_config_json(grid.config);
  j["base_seed"] = grid.config.base_seed;
  j["nonconverged"] = grid.nonconverged;
  j["lambda_mode"] = std::string(to_string(grid.config.lambda_mode));
  nlohmann::json cells = nlohmann::json::array();
  for (Index si = 0; si < grid.config.s_values.size(); ++si) {
    for (Index ai = 0; ai < grid.config.alpha_values.size(); ++ai) {
      const PhaseCell& c = grid.cell(si, ai);
      cells.push_back({{"s", grid.config.s_values[si]},
                       {"alpha", grid.config.alpha_values[ai]},
                       {"trials", c.trials},
                       {"successes", c.successes},
                       {"nonconverged", c.nonconverged},
                       {"mean_precision", c.mean_precision},
                       {"mean_recall", c.mean_recall},
                       {"mean_iterations", c.mean_iterations}});
    }
  }
  j["cells"] = std::move(cells);
  nlohmann::json points = nlohmann::json::array();
  for (const BoundaryPoint& p : boundary.points) {
    nlohmann::json pj = {{"s", p.s}, {"present", p.present}};
    if (p.present) pj["alpha_half"] = p.alpha;
    points.push_back(std::move(pj));
  }
  j["boundary"] = {{"points", std::move(points)}};
  if (boundary.slope_defined) j["boundary"]["loglog_slope"] = boundary.slope;
  return j;
}

PhaseGrid grid_from_manifest(const nlohmann::json& manifest) {
  require(manifest.contains("config") && manifest.contains("cells"), ErrorCode::format_error,
          "manifest: needs config and cells");
  PhaseGrid grid;
  grid.config = phase_config_from_json(manifest.at("config"));
  const Index ns = grid.config.s_values.size(), na = grid.config.alpha_values.size();
  const nlohmann::json& cells = manifest.at("cells");
  require(cells.is_array() && cells.size() == ns * na, ErrorCode::format_error,
          "manifest: cell count does not match the grid");
  grid.cells.resize(ns * na);
  for (Index k = 0; k < ns * na; ++k) {
    const nlohmann::json& cj = cells[k];
    PhaseCell& c = grid.cells[k];
    c.trials = get<Index>(cj, nullptr, "trials");
    c.successes = get<Index>(cj, nullptr, "successes");
    c.nonconverged = get<Index>(cj, nullptr, "nonconverged");
    c.mean_precision = get<double>(cj, nullptr, "mean_precision");
    c.mean_recall = get<double>(cj, nullptr, "mean_recall");
    c.mean_iterations = get<double>(cj, nullptr, "mean_iterations");
    require(c.successes <= c.trials, ErrorCode::format_error, "manifest: successes > trials");
    require(get<Index>(cj, nullptr, "s") == grid.config.s_values[k / na] &&
                get<double>(cj, nullptr, "alpha") == grid.config.alpha_values[k % na],
            ErrorCode::format_error, "manifest: cells are not in s-major order");
    grid.nonconverged += c.nonconverged;
  }
  return grid;
}

}  // namespace glasso
