#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "glasso/solver.hpp"

namespace glasso::cli {

enum class KeyType { integer, number, text, integer_list, number_list };

struct KeySpec {
  std::string name;
  KeyType type;
  nlohmann::json default_value;
  std::string help;
};

/// Every config key with its type and default.
const std::vector<KeySpec>& key_registry();
/// Subcommands in dispatch order.
const std::vector<std::string>& subcommands();
/// Keys a subcommand reads; listed in its --help.
const std::vector<std::string>& subcommand_keys(std::string_view subcommand);

/// Flat key -> value store seeded with registry defaults. A JSON config file
/// uses the nested layout ({"scene": {"side": 16}, "seed": 0, ...}); dotted
/// overrides "scene.side=8" are applied after it.
class Config {
 public:
  Config();

  void merge_json(const nlohmann::json& nested);
  void merge_file(const std::filesystem::path& path);
  void apply_override(std::string_view assignment);

  std::uint64_t get_u64(const std::string& key) const;
  Index get_index(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<Index> get_index_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  /// Keys read so far.
  const std::set<std::string>& accessed() const { return accessed_; }
  nlohmann::json to_json() const;

 private:
  const nlohmann::json& lookup(const std::string& key) const;
  void set(const std::string& key, const nlohmann::json& value);

  std::map<std::string, nlohmann::json> values_;
  mutable std::set<std::string> accessed_;
};

/// Inputs named on the command line.
struct Inputs {
  std::optional<std::filesystem::path> dict;
  std::optional<std::filesystem::path> instance;
  std::optional<std::filesystem::path> wavefield;
  std::optional<std::filesystem::path> manifest;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitIo = 3;

/// Runs one subcommand with a prepared config. Returns an exit code;
/// validation and I/O problems surface as glasso::Error.
int run_subcommand(const std::string& name, const Config& config, const Inputs& inputs);

/// Full command line entry point.
int run(int argc, char** argv);

/// Help text of a subcommand.
std::string help_text(std::string_view subcommand);

}  // namespace glasso::cli
