#include <charconv>
#include <fstream>
#include <limits>

#include "glasso/cli.hpp"
#include "glasso/error.hpp"

namespace glasso::cli {
namespace {

using nlohmann::json;

std::vector<KeySpec> build_registry() {
  return {
      {"scene.side", KeyType::integer, 16, "image side; N = side^2 pixels per frame"},
      {"scene.T", KeyType::integer, 4, "frames"},
      {"scene.D", KeyType::integer, 4, "pixels per anomaly tile (perfect square)"},
      {"scene.s1", KeyType::integer, 2, "nonzero smooth (DCT) groups"},
      {"scene.s2", KeyType::integer, 1, "nonzero anomaly tile groups"},
      {"scene.alpha", KeyType::number, 32.0, "group magnitude; also the experiment lambda alpha"},
      {"scene.sigma", KeyType::number, 1.0, "noise standard deviation"},
      {"scene.uniform_support", KeyType::integer, 0,
       "1 draws s1 + s2 groups uniformly over both components"},
      {"seed", KeyType::integer, 0, "base seed (u64)"},
      {"lambda.mode", KeyType::text, "experiment",
       "explicit | theorem1 | experiment | experiment_literal"},
      {"lambda.lambda1", KeyType::number, 0.0, "explicit weight of smooth groups (all groups "
                                               "of a non-demixing dictionary)"},
      {"lambda.lambda2", KeyType::number, 0.0, "explicit weight of anomaly groups"},
      {"solver.max_iterations", KeyType::integer, 5000, "iteration (sweep) cap"},
      {"solver.kkt_tolerance", KeyType::number, 1e-6, "KKT residual tolerance"},
      {"solver.objective_rel_tolerance", KeyType::number, 1e-10,
       "relative objective change tolerance (demixing)"},
      {"solver.anomaly_first", KeyType::integer, 0,
       "demixing sweep order: 1 updates anomaly tiles before the smooth part"},
      {"phase.s_values", KeyType::integer_list, json::array({1, 2, 4, 8, 16, 32}),
       "group sparsity grid, ascending"},
      {"phase.alpha_values", KeyType::number_list,
       json::array({0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}), "strength grid, ascending"},
      {"phase.trials_per_cell", KeyType::integer, 50, "trials per (s, alpha) cell"},
      {"phase.epsilon_p", KeyType::number, 1e-6, "support declaration precision constant"},
      {"certify.c0", KeyType::number, 0.067, "intra-block coherence constant"},
      {"certify.c1", KeyType::number, 0.001, "inter-block coherence constant"},
      {"certify.epsilon_override", KeyType::number, 0.0,
       "epsilon used when larger than its lower bound (0: bound only)"},
      {"io.output_dir", KeyType::text, ".", "directory for output files"},
      {"workers", KeyType::integer, 0, "phase trial threads (0: all cores)"},
  };
}

const KeySpec* find_spec(const std::string& key) {
  for (const KeySpec& k : key_registry())
    if (k.name == key) return &k;
  return nullptr;
}

bool type_matches(KeyType type, const json& v) {
  switch (type) {
    case KeyType::integer: return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
    case KeyType::number: return v.is_number();
    case KeyType::text: return v.is_string();
    case KeyType::integer_list:
      if (!v.is_array()) return false;
      for (const json& e : v)
        if (!type_matches(KeyType::integer, e)) return false;
      return true;
    case KeyType::number_list:
      if (!v.is_array()) return false;
      for (const json& e : v)
        if (!e.is_number()) return false;
      return true;
  }
  return false;
}

std::uint64_t parse_u64(std::string_view text, const std::string& key) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  require(res.ec == std::errc() && res.ptr == text.data() + text.size(),
          ErrorCode::malformed_config, key + ": expected a nonnegative integer, got '" +
                                           std::string(text) + "'");
  return v;
}

double parse_double(std::string_view text, const std::string& key) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  require(res.ec == std::errc() && res.ptr == text.data() + text.size(),
          ErrorCode::malformed_config, key + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  if (!text.empty() && text.front() == '[' && text.back() == ']')
    text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view part = text.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    parts.push_back(part);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return parts;
}

void flatten(const json& node, const std::string& prefix, std::map<std::string, json>& out) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else {
      out[key] = *it;
    }
  }
}

}  // namespace

const std::vector<KeySpec>& key_registry() {
  static const std::vector<KeySpec> registry = build_registry();
  return registry;
}

Config::Config() {
  for (const KeySpec& k : key_registry()) values_[k.name] = k.default_value;
}

void Config::set(const std::string& key, const json& value) {
  const KeySpec* spec = find_spec(key);
  require(spec != nullptr, ErrorCode::unknown_key, key);
  require(type_matches(spec->type, value), ErrorCode::malformed_config,
          key + ": value " + value.dump() + " has the wrong type");
  values_[key] = value;
}

void Config::merge_json(const json& nested) {
  require(nested.is_object(), ErrorCode::malformed_config, "config root must be a JSON object");
  std::map<std::string, json> flat;
  flatten(nested, "", flat);
  for (const auto& [key, value] : flat) set(key, value);
}

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::missing_input, "config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::malformed_config, path.string() + ": " + e.what());
  }
  merge_json(j);
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string_view::npos && eq > 0, ErrorCode::malformed_config,
          "override '" + std::string(assignment) + "' is not key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string_view text = assignment.substr(eq + 1);
  const KeySpec* spec = find_spec(key);
  require(spec != nullptr, ErrorCode::unknown_key, key);
  json value;
  switch (spec->type) {
    case KeyType::integer: value = parse_u64(text, key); break;
    case KeyType::number: value = parse_double(text, key); break;
    case KeyType::text: value = std::string(text); break;
    case KeyType::integer_list:
      value = json::array();
      for (std::string_view part : split_list(text)) value.push_back(parse_u64(part, key));
      break;
    case KeyType::number_list:
      value = json::array();
      for (std::string_view part : split_list(text)) value.push_back(parse_double(part, key));
      break;
  }
  set(key, value);
}

const json& Config::lookup(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::unknown_key, key);
  accessed_.insert(key);
  return it->second;
}

std::uint64_t Config::get_u64(const std::string& key) const {
  return lookup(key).get<std::uint64_t>();
}

Index Config::get_index(const std::string& key) const {
  const std::uint64_t v = get_u64(key);
  require(v <= std::numeric_limits<std::uint32_t>::max(), ErrorCode::malformed_config,
          key + ": value too large");
  return static_cast<Index>(v);
}

double Config::get_double(const std::string& key) const { return lookup(key).get<double>(); }

std::string Config::get_string(const std::string& key) const {
  return lookup(key).get<std::string>();
}

std::vector<Index> Config::get_index_list(const std::string& key) const {
  return lookup(key).get<std::vector<Index>>();
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  return lookup(key).get<std::vector<double>>();
}

json Config::to_json() const {
  json out = json::object();
  for (const auto& [key, value] : values_) out[json::json_pointer("/" + [&] {
        std::string p = key;
        for (char& c : p)
          if (c == '.') c = '/';
        return p;
      }())] = value;
  return out;
}

}  // namespace glasso::cli
