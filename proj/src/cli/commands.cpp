#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "glasso/certify.hpp"
#include "glasso/cli.hpp"
#include "glasso/coherence.hpp"
#include "glasso/dictionary_io.hpp"
#include "glasso/error.hpp"
#include "glasso/experiments.hpp"
#include "glasso/instance_io.hpp"
#include "glasso/json_report.hpp"
#include "glasso/lambda.hpp"
#include "glasso/rng.hpp"
#include "glasso/version.hpp"

namespace glasso::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kSceneKeys = {"scene.side", "scene.T",     "scene.D",
                                             "scene.s1",   "scene.s2",    "scene.alpha",
                                             "scene.sigma", "scene.uniform_support",
                                             "seed"};
const std::vector<std::string> kSolverKeys = {"solver.max_iterations", "solver.kkt_tolerance",
                                              "solver.objective_rel_tolerance",
                                              "solver.anomaly_first"};
const std::vector<std::string> kLambdaKeys = {"lambda.mode", "lambda.lambda1", "lambda.lambda2",
                                              "scene.alpha", "certify.epsilon_override"};

std::vector<std::string> join(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& part : parts)
    for (const std::string& k : part)
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

const std::map<std::string, std::vector<std::string>, std::less<>>& key_table() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
      {"gen", join({kSceneKeys, {"io.output_dir"}})},
      {"coherence", join({{"scene.side", "scene.T", "scene.D", "io.output_dir"}})},
      {"solve", join({kSceneKeys, kSolverKeys, kLambdaKeys, {"phase.epsilon_p", "io.output_dir"}})},
      {"demix",
       join({kSceneKeys, kSolverKeys, kLambdaKeys, {"phase.epsilon_p", "io.output_dir"}})},
      {"certify", join({kSceneKeys, kSolverKeys, kLambdaKeys,
                        {"certify.c0", "certify.c1", "io.output_dir"}})},
      {"phase", join({{"scene.side", "scene.T", "scene.D", "scene.sigma", "seed"},
                      kSolverKeys,
                      {"lambda.mode", "lambda.lambda1", "lambda.lambda2",
                       "certify.epsilon_override", "phase.s_values", "phase.alpha_values",
                       "phase.trials_per_cell", "phase.epsilon_p", "workers", "io.output_dir"}})},
      {"render", join({{"io.output_dir"}})},
  };
  return table;
}

// ---- config readers -------------------------------------------------------

SceneConfig scene_from(const Config& c) {
  SceneConfig s;
  s.side = c.get_index("scene.side");
  s.T = c.get_index("scene.T");
  s.D = c.get_index("scene.D");
  s.s1 = c.get_index("scene.s1");
  s.s2 = c.get_index("scene.s2");
  s.alpha = c.get_double("scene.alpha");
  s.sigma = c.get_double("scene.sigma");
  s.seed = c.get_u64("seed");
  s.uniform_support = c.get_u64("scene.uniform_support") != 0;
  return s;
}

SolverOptions solver_from(const Config& c) {
  SolverOptions o;
  o.max_iterations = c.get_index("solver.max_iterations");
  o.kkt_tolerance = c.get_double("solver.kkt_tolerance");
  o.objective_rel_tolerance = c.get_double("solver.objective_rel_tolerance");
  o.anomaly_first = c.get_u64("solver.anomaly_first") != 0;
  o.validate();
  return o;
}

fs::path output_dir(const Config& c) {
  const fs::path dir = c.get_string("io.output_dir");
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::io_failure, "cannot create output directory " + dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open " + path.string());
  out << text;
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed: " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void require_input(const std::optional<fs::path>& path, const char* what) {
  if (path && !fs::exists(*path)) fail(ErrorCode::missing_input, std::string(what) + " " + path->string());
}

// ---- dictionary shape ------------------------------------------------------

/// Geometry of a demixing dictionary, or nullopt when the dictionary is not
/// [I_T (x) DCT2D | I_T (x) I_N] with the demixing partition.
std::optional<DemixGeometry> demix_geometry_of(const BlockDictionary& x) {
  const StructureNode& root = x.structure();
  if (root.kind != StructureKind::concat || !root.left || !root.right) return std::nullopt;
  const StructureNode& l = *root.left;
  const StructureNode& r = *root.right;
  if (l.kind != StructureKind::kronecker_time || r.kind != StructureKind::kronecker_time)
    return std::nullopt;
  if (!l.inner || !r.inner || l.inner->kind != StructureKind::dct2d ||
      r.inner->kind != StructureKind::dirac || l.frames != r.frames)
    return std::nullopt;
  DemixGeometry g{l.inner->image_rows, l.inner->image_cols, l.frames, 0};
  if (r.inner->rows != g.pixels()) return std::nullopt;
  const GroupPartition& part = x.partition();
  if (part.num_groups() <= g.smooth_groups()) return std::nullopt;
  const Index tile = part.group_size(g.smooth_groups());
  if (g.frames == 0 || tile % g.frames != 0) return std::nullopt;
  g.D = tile / g.frames;
  Index d = 1;
  while (d * d < g.D) ++d;
  if (d * d != g.D || g.image_rows % d != 0 || g.image_cols % d != 0) return std::nullopt;
  if (!(demix_dictionary(g.image_rows, g.image_cols, g.frames, g.D).partition() == part))
    return std::nullopt;
  return g;
}

/// Groups of the left component of a concatenated dictionary (all groups
/// otherwise).
Index first_component_groups(const BlockDictionary& x) {
  const StructureNode& root = x.structure();
  if (root.kind != StructureKind::concat || !root.left) return x.partition().num_groups();
  const Index split = root.left->cols;
  Index count = 0;
  for (const IndexList& g : x.partition().groups())
    if (g.front() < split) ++count;
  return count;
}

LambdaSchedule schedule_for(const Config& c, const BlockDictionary& x, double sigma) {
  const LambdaMode mode = parse_lambda_mode(c.get_string("lambda.mode"));
  const GroupPartition& part = x.partition();
  const Index G = part.num_groups();
  const double eps_override = c.get_double("certify.epsilon_override");
  LambdaSchedule s;
  switch (mode) {
    case LambdaMode::explicit_values: {
      const Index g1 = first_component_groups(x);
      s = LambdaSchedule::two_level(g1, G - g1, c.get_double("lambda.lambda1"),
                                    g1 == G ? 1.0 : c.get_double("lambda.lambda2"));
      break;
    }
    case LambdaMode::theorem1:
      if (const auto geo = demix_geometry_of(x)) {
        const DemixWeights w = demix_weights(mode, geo->pixels(), geo->frames, geo->D, 0.0, sigma,
                                             0.0, 0.0, eps_override);
        s = LambdaSchedule::two_level(geo->smooth_groups(), geo->anomaly_groups(), w.lambda1,
                                      w.lambda2);
        s.mode = mode;
        s.sigma = sigma;
        s.epsilon = std::max(demix_epsilon(geo->pixels(), geo->frames), eps_override);
      } else {
        const IntraBlockCoherence intra = intra_block_coherence(x);
        const double eps =
            std::max(theorem1_epsilon(intra.mu_I, x.cols(), G, part.d_min()), eps_override);
        s = LambdaSchedule::theorem1(part, sigma, eps);
      }
      break;
    case LambdaMode::experiment:
      s = LambdaSchedule::experiment(part, c.get_double("scene.alpha"));
      break;
    case LambdaMode::experiment_literal:
      s = LambdaSchedule::experiment_literal(part, c.get_double("scene.alpha"));
      break;
  }
  s.validate(G);
  return s;
}

SyntheticInstance instance_from(const Config& c, const Inputs& in) {
  if (in.instance) {
    require_input(in.instance, "instance");
    return load_six(*in.instance);
  }
  return build_demix_scene(scene_from(c));
}

int exit_for(const SolverResult& r) { return r.converged ? kExitOk : kExitNotConverged; }

// ---- subcommands -----------------------------------------------------------

int cmd_gen(const Config& c, const Inputs& in) {
  const SceneConfig scene = scene_from(c);
  SyntheticInstance inst;
  if (in.dict) {
    require_input(in.dict, "dictionary");
    const BlockDictionary x = load_bdx(*in.dict);
    const Index s = scene.s1 + scene.s2;
    require(s <= x.partition().num_groups(), ErrorCode::invalid_argument,
            "scene.s1 + scene.s2 exceeds the number of groups");
    const IndexList support = sample_support(x.partition().num_groups(), s,
                                             derive_seed(scene.seed, seed_tag::support));
    const GroupSparseSignal truth = sample_signal(x.partition(), support, scene.alpha,
                                                  derive_seed(scene.seed, seed_tag::signal));
    inst = synthesize(x, truth, scene.sigma, derive_seed(scene.seed, seed_tag::noise));
    inst.seed = scene.seed;
  } else {
    inst = build_demix_scene(scene);
  }
  save_six(output_dir(c) / "instance.six", inst);
  return kExitOk;
}

int cmd_coherence(const Config& c, const Inputs& in) {
  BlockDictionary x;
  if (in.dict) {
    require_input(in.dict, "dictionary");
    x = load_bdx(*in.dict);
  } else if (in.instance) {
    require_input(in.instance, "instance");
    x = load_six(*in.instance).dictionary;
  } else {
    const Index side = c.get_index("scene.side");
    x = demix_dictionary(side, side, c.get_index("scene.T"), c.get_index("scene.D"));
  }
  json j = coherence_json(coherence_report(x));
  j["descriptor"] = x.descriptor();
  write_json(output_dir(c) / "coherence.json", j);
  return kExitOk;
}

json match_fields(const SolverResult& r, const SyntheticInstance& inst, double eps_p) {
  const SupportMatch m = extract_group_support(r.estimate, inst.truth, eps_p);
  return solver_result_json(r, &m);
}

int cmd_solve(const Config& c, const Inputs& in) {
  const SyntheticInstance inst = instance_from(c, in);
  const SolverOptions opts = solver_from(c);
  const LambdaSchedule sched = schedule_for(c, inst.dictionary, inst.sigma);
  const Vector y = inst.observations * sched.observation_scale;
  SolverResult r = solve_group_lasso(inst.dictionary, y, sched.values(), opts);
  r.estimate.coefficients /= sched.observation_scale;

  json j = match_fields(r, inst, c.get_double("phase.epsilon_p"));
  j["lambda"] = lambda_json(sched);
  j["descriptor"] = inst.dictionary.descriptor();
  const fs::path dir = output_dir(c);
  write_json(dir / "solve.json", j);
  save_estimate(dir / "estimate.est", r.estimate.coefficients);
  return exit_for(r);
}

int cmd_demix(const Config& c, const Inputs& in) {
  Vector y;
  DemixGeometry geo;
  double sigma = 0.0;
  std::optional<SyntheticInstance> inst;
  if (in.wavefield) {
    require_input(in.wavefield, "wavefield");
    Wavefield w = load_wfd(*in.wavefield);
    geo = DemixGeometry{w.rows, w.cols, w.frames, c.get_index("scene.D")};
    y = std::move(w.data);
    sigma = c.get_double("scene.sigma");
  } else {
    inst = instance_from(c, in);
    const auto g = demix_geometry_of(inst->dictionary);
    require(g.has_value(), ErrorCode::invalid_argument,
            "instance dictionary is not a demixing dictionary: " + inst->dictionary.descriptor());
    geo = *g;
    y = inst->observations;
    sigma = inst->sigma;
  }
  const SolverOptions opts = solver_from(c);
  const LambdaMode mode = parse_lambda_mode(c.get_string("lambda.mode"));
  const DemixWeights w = demix_weights(
      mode, geo.pixels(), geo.frames, geo.D, c.get_double("scene.alpha"), sigma,
      c.get_double("lambda.lambda1"), c.get_double("lambda.lambda2"),
      c.get_double("certify.epsilon_override"));
  DemixResult solved = solve_demix(y * w.observation_scale, geo, w.lambda1, w.lambda2, opts);
  SolverResult& r = solved.result;
  r.estimate.coefficients /= w.observation_scale;

  json j = inst ? match_fields(r, *inst, c.get_double("phase.epsilon_p")) : solver_result_json(r);
  j["lambda"] = {{"mode", std::string(to_string(mode))},
                 {"lambda1", w.lambda1},
                 {"lambda2", w.lambda2},
                 {"observation_scale", w.observation_scale}};
  j["geometry"] = {{"image_rows", geo.image_rows},
                   {"image_cols", geo.image_cols},
                   {"frames", geo.frames},
                   {"D", geo.D}};
  const fs::path dir = output_dir(c);
  write_json(dir / "demix.json", j);
  save_estimate(dir / "estimate.est", r.estimate.coefficients);
  return exit_for(r);
}

int cmd_certify(const Config& c, const Inputs& in) {
  const SyntheticInstance inst = instance_from(c, in);
  const SolverOptions opts = solver_from(c);
  const LambdaSchedule sched = schedule_for(c, inst.dictionary, inst.sigma);
  const std::vector<double> raw = sched.raw_weights();

  const PDWCertificate cert = construct_pdw(inst, raw, opts);
  const EventReport events = check_events(inst, raw, &cert);

  Theorem1Options t1;
  t1.c0 = c.get_double("certify.c0");
  t1.c1 = c.get_double("certify.c1");
  const double eps_override = c.get_double("certify.epsilon_override");
  if (eps_override > 0.0) t1.epsilon_override = eps_override;
  const std::vector<double> norms = [&] {
    std::vector<double> v;
    for (Index g : inst.truth.support) v.push_back(inst.truth.group_norm(g));
    return v;
  }();
  const ConditionReport t1_report =
      check_theorem1(inst.dictionary, inst.truth.support, norms, inst.sigma, t1);

  json j;
  j["lambda"] = lambda_json(sched);
  j["certificate"] = certificate_json(cert);
  j["events"] = events_json(events);
  j["theorem1"] = conditions_json(t1_report);
  if (const auto geo = demix_geometry_of(inst.dictionary)) {
    std::vector<double> smooth, anomaly;
    for (Index g : inst.truth.support)
      (g < geo->smooth_groups() ? smooth : anomaly).push_back(inst.truth.group_norm(g));
    Corollary1Options c1;
    c1.c1 = t1.c1;
    if (eps_override > 0.0) c1.epsilon_override = eps_override;
    j["corollary1"] = conditions_json(
        check_corollary1(geo->pixels(), geo->frames, geo->D, inst.sigma, smooth, anomaly, c1));
  }
  j["descriptor"] = inst.dictionary.descriptor();
  write_json(output_dir(c) / "certify.json", j);
  return exit_for(cert.restricted.result);
}

int cmd_phase(const Config& c, const Inputs&) {
  PhaseConfig pc;
  pc.scene.side = c.get_index("scene.side");
  pc.scene.T = c.get_index("scene.T");
  pc.scene.D = c.get_index("scene.D");
  pc.scene.sigma = c.get_double("scene.sigma");
  pc.base_seed = c.get_u64("seed");
  pc.lambda_mode = parse_lambda_mode(c.get_string("lambda.mode"));
  pc.lambda1 = c.get_double("lambda.lambda1");
  pc.lambda2 = c.get_double("lambda.lambda2");
  pc.epsilon_override = c.get_double("certify.epsilon_override");
  pc.s_values = c.get_index_list("phase.s_values");
  pc.alpha_values = c.get_double_list("phase.alpha_values");
  pc.trials_per_cell = c.get_index("phase.trials_per_cell");
  pc.epsilon_p = c.get_double("phase.epsilon_p");
  pc.solver = solver_from(c);
  const Index workers = c.get_index("workers");
  const fs::path dir = output_dir(c);

  const PhaseGrid grid = run_phase_sweep(pc, workers);
  const Boundary boundary = extract_boundary(grid);
  render(grid, dir / "phase.csv", dir / "phase.pgm");
  write_json(dir / "manifest.json", phase_manifest(grid, boundary));
  if (grid.nonconverged > 0)
    std::cerr << "warning: " << grid.nonconverged << " trials did not converge\n";
  return kExitOk;
}

int cmd_render(const Config& c, const Inputs& in) {
  require(in.manifest.has_value(), ErrorCode::missing_input, "render needs --manifest");
  require_input(in.manifest, "manifest");
  std::ifstream file(*in.manifest);
  require(static_cast<bool>(file), ErrorCode::io_failure, "cannot open " + in.manifest->string());
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::format_error, in.manifest->string() + ": " + e.what());
  }
  const PhaseGrid grid = grid_from_manifest(j);
  const fs::path dir = output_dir(c);
  render(grid, dir / "phase.csv", dir / "phase.pgm");
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_failure:
    case ErrorCode::format_error:
    case ErrorCode::missing_input:
      return kExitIo;
    case ErrorCode::not_converged:
      return kExitNotConverged;
    default:
      return kExitValidation;
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"gen",     "coherence", "solve", "demix",
                                                 "certify", "phase",     "render"};
  return names;
}

const std::vector<std::string>& subcommand_keys(std::string_view subcommand) {
  const auto it = key_table().find(subcommand);
  require(it != key_table().end(), ErrorCode::invalid_argument,
          "unknown subcommand " + std::string(subcommand));
  return it->second;
}

std::string help_text(std::string_view subcommand) {
  std::ostringstream out;
  out << "Config keys (set with --set key=value or key=value):\n";
  for (const std::string& key : subcommand_keys(subcommand)) {
    for (const KeySpec& spec : key_registry()) {
      if (spec.name != key) continue;
      out << "  " << key << " = " << spec.default_value.dump() << "\n      " << spec.help << "\n";
    }
  }
  return out.str();
}

int run_subcommand(const std::string& name, const Config& config, const Inputs& inputs) {
  if (name == "gen") return cmd_gen(config, inputs);
  if (name == "coherence") return cmd_coherence(config, inputs);
  if (name == "solve") return cmd_solve(config, inputs);
  if (name == "demix") return cmd_demix(config, inputs);
  if (name == "certify") return cmd_certify(config, inputs);
  if (name == "phase") return cmd_phase(config, inputs);
  if (name == "render") return cmd_render(config, inputs);
  fail(ErrorCode::invalid_argument, "unknown subcommand " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"Group Lasso support recovery and demixing"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  struct Parsed {
    std::string config_path;
    std::vector<std::string> sets;
    std::vector<std::string> positional;
    std::string output_dir;
    Inputs inputs;
    std::string dict, instance, wavefield, manifest;
  };
  Parsed parsed;

  for (const std::string& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->add_option("--config", parsed.config_path, "JSON config file");
    sub->add_option("--set", parsed.sets, "override key=value (repeatable)");
    sub->add_option("-o,--output-dir", parsed.output_dir, "same as io.output_dir=DIR");
    sub->add_option("--dict", parsed.dict, "BDX1 dictionary");
    sub->add_option("--instance", parsed.instance, "SIX1 instance");
    sub->add_option("--wavefield", parsed.wavefield, "WFD1 frame sequence");
    sub->add_option("--manifest", parsed.manifest, "phase manifest JSON");
    sub->add_option("overrides", parsed.positional, "key=value overrides");
    sub->footer(help_text(name));
  }
  app.get_subcommand("gen")->description("draw a demixing scene (or a signal on --dict)");
  app.get_subcommand("coherence")->description("block coherence report");
  app.get_subcommand("solve")->description("group Lasso by accelerated proximal gradient");
  app.get_subcommand("demix")->description("alternating minimization on a demixing problem");
  app.get_subcommand("certify")->description("primal-dual witness, events and conditions");
  app.get_subcommand("phase")->description("success-rate sweep over (s, alpha)");
  app.get_subcommand("render")->description("re-render CSV/PGM from a manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  auto path_or_none = [](const std::string& s) -> std::optional<fs::path> {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
  };
  parsed.inputs.dict = path_or_none(parsed.dict);
  parsed.inputs.instance = path_or_none(parsed.instance);
  parsed.inputs.wavefield = path_or_none(parsed.wavefield);
  parsed.inputs.manifest = path_or_none(parsed.manifest);

  try {
    Config config;
    if (!parsed.config_path.empty()) config.merge_file(parsed.config_path);
    for (const std::string& s : parsed.sets) config.apply_override(s);
    for (const std::string& s : parsed.positional) config.apply_override(s);
    if (!parsed.output_dir.empty()) config.apply_override("io.output_dir=" + parsed.output_dir);
    return run_subcommand(name, config, parsed.inputs);
  } catch (const Error& e) {
    std::cerr << "glasso " << name << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "glasso " << name << ": " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace glasso::cli
