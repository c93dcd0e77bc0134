#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support/check_error.hpp"
#include "glasso/cli.hpp"
#include "glasso/instance_io.hpp"

using namespace glasso;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("glasso_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

cli::Config small_config(const fs::path& out) {
  cli::Config c;
  for (const char* kv : {"scene.side=8", "scene.T=2", "scene.s1=1", "scene.s2=1", "scene.alpha=16",
                         "phase.s_values=[1,2]", "phase.alpha_values=[2,16]",
                         "phase.trials_per_cell=2", "workers=1"})
    c.apply_override(kv);
  c.apply_override("io.output_dir=" + out.string());
  return c;
}

int run_args(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config overrides are type checked") {
  cli::Config c;
  CHECK(c.get_index("scene.side") == 16);
  c.apply_override("scene.alpha=2.5");
  CHECK(c.get_double("scene.alpha") == 2.5);
  c.apply_override("phase.s_values=1,3");
  CHECK(c.get_index_list("phase.s_values") == std::vector<Index>{1, 3});
  CHECK_GLASSO_ERROR(c.apply_override("scene.bogus=1"), ErrorCode::unknown_key);
  CHECK_GLASSO_ERROR(c.apply_override("scene.side=abc"), ErrorCode::malformed_config);
  CHECK_GLASSO_ERROR(c.apply_override("scene.side"), ErrorCode::malformed_config);
  c.merge_json(nlohmann::json::parse(R"({"scene": {"T": 8}, "seed": 5})"));
  CHECK(c.get_index("scene.T") == 8);
  CHECK(c.get_u64("seed") == 5);
  CHECK_GLASSO_ERROR(c.merge_json(nlohmann::json::parse(R"({"scene": {"nope": 1}})")),
                     ErrorCode::unknown_key);
}

TEST_CASE("every key a subcommand reads is listed in its help") {
  TempDir tmp("keys");
  const fs::path out = tmp.path / "out";
  for (const std::string& sub : {std::string("gen"), std::string("coherence"), std::string("solve"),
                                 std::string("demix"), std::string("certify"),
                                 std::string("phase")}) {
    const cli::Config c = small_config(out);
    const int code = cli::run_subcommand(sub, c, {});
    CHECK_MESSAGE(code != cli::kExitValidation, sub);
    const std::vector<std::string>& keys = cli::subcommand_keys(sub);
    const std::string help = cli::help_text(sub);
    for (const std::string& k : c.accessed()) {
      CHECK_MESSAGE(std::find(keys.begin(), keys.end(), k) != keys.end(), sub << " reads " << k);
      CHECK_MESSAGE(help.find(k) != std::string::npos, sub << " help lacks " << k);
    }
  }
  const cli::Config c = small_config(out);
  cli::Inputs in;
  in.manifest = out / "manifest.json";
  CHECK(cli::run_subcommand("render", c, in) == cli::kExitOk);
  for (const std::string& k : c.accessed()) {
    const std::vector<std::string>& keys = cli::subcommand_keys("render");
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  }
}

TEST_CASE("gen output is deterministic") {
  TempDir tmp("gen");
  const cli::Config a = small_config(tmp.path / "a");
  const cli::Config b = small_config(tmp.path / "b");
  REQUIRE(cli::run_subcommand("gen", a, {}) == cli::kExitOk);
  REQUIRE(cli::run_subcommand("gen", b, {}) == cli::kExitOk);
  const std::string bytes = slurp(tmp.path / "a" / "instance.six");
  CHECK(!bytes.empty());
  CHECK(bytes == slurp(tmp.path / "b" / "instance.six"));
}

TEST_CASE("solve with huge explicit weights returns zero") {
  TempDir tmp("solve");
  cli::Config c = small_config(tmp.path);
  c.apply_override("lambda.mode=explicit");
  c.apply_override("lambda.lambda1=1e9");
  c.apply_override("lambda.lambda2=1e9");
  CHECK(cli::run_subcommand("solve", c, {}) == cli::kExitOk);
  const Vector est = load_estimate(tmp.path / "estimate.est");
  CHECK(est.size() == 2 * 64 * 2);
  CHECK(est.cwiseAbs().maxCoeff() == 0.0);
  const nlohmann::json j = nlohmann::json::parse(slurp(tmp.path / "solve.json"));
  CHECK(j["converged"] == true);
  CHECK(j["declared_support"].empty());
}

TEST_CASE("command line exit codes") {
  TempDir tmp("exit");
  CHECK(run_args({"glasso", "gen", "--set", "scene.bogus=1"}) == cli::kExitValidation);
  CHECK(run_args({"glasso", "render", "-o", tmp.path.string()}) == cli::kExitIo);
  CHECK(run_args({"glasso", "solve", "--instance", (tmp.path / "absent.six").string(), "-o",
                  tmp.path.string()}) == cli::kExitIo);
  CHECK(run_args({"glasso", "gen", "-o", tmp.path.string(), "scene.side=8", "scene.T=2"}) ==
        cli::kExitOk);
  CHECK(fs::exists(tmp.path / "instance.six"));
  CHECK(run_args({"glasso", "nosuch"}) == cli::kExitValidation);
}
