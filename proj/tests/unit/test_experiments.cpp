#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "../support/check_error.hpp"
#include "glasso/experiments.hpp"
#include "glasso/rng.hpp"

using namespace glasso;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhaseGrid synthetic_grid(std::vector<Index> s, std::vector<double> alpha, Index trials) {
  PhaseGrid g;
  g.config.s_values = std::move(s);
  g.config.alpha_values = std::move(alpha);
  g.config.trials_per_cell = trials;
  g.cells.resize(g.config.s_values.size() * g.config.alpha_values.size());
  for (PhaseCell& c : g.cells) c.trials = trials;
  return g;
}

PhaseConfig tiny_config() {
  PhaseConfig c;
  c.scene.side = 4;
  c.scene.T = 2;
  c.scene.D = 4;
  c.scene.sigma = 1.0;
  c.s_values = {1, 3};
  c.alpha_values = {1.0, 16.0};
  c.trials_per_cell = 3;
  c.base_seed = 99;
  return c;
}

}  // namespace

TEST_CASE("trial seeds") {
  CHECK(trial_seed(0, 0, 0, 0) == 0xE220A8397B1DCDAFull);
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 6; ++s)
    for (std::uint64_t a = 0; a < 8; ++a)
      for (std::uint64_t t = 0; t < 200; ++t) seen.insert(trial_seed(12345, s, a, t));
  CHECK(seen.size() == 6 * 8 * 200);
}

TEST_CASE("boundary of a single column with a tie") {
  PhaseGrid g = synthetic_grid({1}, {1.0, 2.0, 4.0, 8.0}, 2);
  const Index succ[] = {0, 0, 2, 2};
  for (Index a = 0; a < 4; ++a) g.cells[a].successes = succ[a];
  const Boundary b = extract_boundary(g);
  REQUIRE(b.points.size() == 1);
  CHECK(b.points[0].present);
  CHECK(b.points[0].alpha == 2.0);
  CHECK_FALSE(b.slope_defined);
}

TEST_CASE("boundary slope of a diagonal grid is one") {
  std::vector<Index> s = {1, 2, 4, 8, 16, 32};
  std::vector<double> alpha;
  for (int k = 0; k < 8; ++k) alpha.push_back(0.5 * std::ldexp(1.0, k));
  PhaseGrid g = synthetic_grid(s, alpha, 4);
  for (Index si = 0; si < s.size(); ++si)
    for (Index ai = 0; ai < alpha.size(); ++ai)
      g.cells[si * alpha.size() + ai].successes = alpha[ai] >= double(s[si]) ? 4 : 0;
  const Boundary b = extract_boundary(g);
  REQUIRE(b.slope_defined);
  CHECK(b.slope == doctest::Approx(1.0));
}

TEST_CASE("constant columns have no boundary point") {
  PhaseGrid g = synthetic_grid({1, 2, 4}, {1.0, 2.0, 4.0}, 1);
  for (Index ai = 0; ai < 3; ++ai) {
    g.cells[ai].successes = 1;  // s = 1 always succeeds
    g.cells[3 + ai].successes = ai >= 1 ? 1 : 0;
    g.cells[6 + ai].successes = ai >= 2 ? 1 : 0;
  }
  const Boundary b = extract_boundary(g);
  CHECK_FALSE(b.points[0].present);
  CHECK(b.points[1].present);
  CHECK(b.points[2].present);
  CHECK(b.slope_defined);
}

TEST_CASE("CSV and PGM rendering against golden files") {
  PhaseGrid g = synthetic_grid({1, 2}, {1.0, 4.0}, 2);
  const Index succ[] = {1, 2, 0, 1};
  const double prec[] = {0.75, 1.0, 0.25, 1.0};
  const double rec[] = {1.0, 1.0, 0.5, 0.75};
  for (Index i = 0; i < 4; ++i) {
    g.cells[i].successes = succ[i];
    g.cells[i].mean_precision = prec[i];
    g.cells[i].mean_recall = rec[i];
  }
  const std::filesystem::path golden = GLASSO_GOLDEN_DIR;
  CHECK(phase_csv(g) == slurp(golden / "grid2x2.csv"));
  CHECK(phase_pgm(g) == slurp(golden / "grid2x2.pgm"));
  // 0.5 rounds half away from zero.
  const std::string pgm = phase_pgm(g);
  CHECK(static_cast<unsigned char>(pgm[pgm.size() - 2]) == 128);
}

TEST_CASE("CSV has one row per cell") {
  const PhaseGrid g = synthetic_grid({1, 2, 4}, {1.0, 2.0, 4.0, 8.0, 16.0}, 1);
  const std::string csv = phase_csv(g);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 15);
}

TEST_CASE("phase sweep does not depend on the worker count") {
  const PhaseConfig c = tiny_config();
  const PhaseGrid one = run_phase_sweep(c, 1);
  const PhaseGrid three = run_phase_sweep(c, 3);
  CHECK(phase_csv(one) == phase_csv(three));
  CHECK(one.nonconverged == three.nonconverged);
  // Small support at high amplitude is recovered.
  CHECK(one.cell(0, 1).successes == 3);
  const TrialOutcome t = run_trial(c, 0, 1, 2);
  CHECK(t.success);
  CHECK(t.converged);
}

TEST_CASE("manifest round trip") {
  const PhaseConfig c = tiny_config();
  const nlohmann::json cj = phase_config_json(c);
  const PhaseConfig back = phase_config_from_json(cj);
  CHECK(phase_config_json(back) == cj);

  const PhaseGrid grid = run_phase_sweep(c, 1);
  const nlohmann::json m = phase_manifest(grid, extract_boundary(grid));
  const PhaseGrid again = grid_from_manifest(nlohmann::json::parse(m.dump()));
  CHECK(phase_csv(again) == phase_csv(grid));
  CHECK(phase_pgm(again) == phase_pgm(grid));
}

TEST_CASE("phase config validation") {
  PhaseConfig c = tiny_config();
  c.s_values.clear();
  CHECK_GLASSO_ERROR(c.validate(), ErrorCode::invalid_argument);
  c = tiny_config();
  c.alpha_values = {1.0, -2.0};
  CHECK_GLASSO_ERROR(c.validate(), ErrorCode::invalid_argument);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}
