#include "ncrec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "ncrec/errors.hpp"
#include "ncrec/jsonio.hpp"

namespace fs = std::filesystem;

namespace ncrec {

namespace {

using jsonio::Array;
using jsonio::Object;
using jsonio::Value;

Value element_json(const GroupElement& g) {
  Array coords;
  for (auto c : g.coords) coords.emplace_back(c);
  return Value(std::move(coords));
}

Value int_list_json(const std::vector<std::int64_t>& v) {
  Array a;
  for (auto x : v) a.emplace_back(x);
  return Value(std::move(a));
}

Value config_json(const ExperimentConfig& cfg) {
  Array h_extra;
  for (const auto& h : cfg.h_extra) h_extra.emplace_back(int_list_json(h));
  return Value(Object{
      {"scenario", cfg.scenario},
      {"group", Object{{"d", cfg.d}, {"m", cfg.m}}},
      {"net", Object{{"schedule", int_list_json(cfg.schedule)}}},
      {"dynamics", Object{{"subset", int_list_json(cfg.subset)},
                          {"theta", cfg.theta},
                          {"exponents", int_list_json(cfg.exponents)}}},
      {"recurrence", Object{{"epsilon", cfg.epsilon},
                            {"side", cfg.side},
                            {"h_radius", cfg.h_radius},
                            {"h_extra", std::move(h_extra)}}},
      {"tolerances", Object{{"rank_tol", cfg.rank_tol},
                            {"validation_tol", cfg.validation_tol},
                            {"validation_samples", cfg.validation_samples}}},
      {"run", Object{{"seed", static_cast<std::int64_t>(cfg.seed)}, {"output", cfg.output}}},
  });
}

Value validation_json(const ValidationReport& report) {
  Array axioms;
  for (const auto& axiom : report.axioms)
    axioms.emplace_back(Object{{"name", axiom.name},
                               {"pass", axiom.pass},
                               {"worst_residual", axiom.worst_residual}});
  return Value(Object{{"all_pass", report.all_pass()},
                      {"samples", report.samples},
                      {"seed", static_cast<std::int64_t>(report.seed)},
                      {"tol", report.tol},
                      {"omega_isometric", report.omega_isometric},
                      {"isometry_residual", report.isometry_residual},
                      {"axioms", std::move(axioms)}});
}

Value gns_json(const GnsSummary& g) {
  Array residuals, norms;
  for (double r : g.lift_residuals) residuals.emplace_back(r);
  for (double n : g.u_norms) norms.emplace_back(n);
  return Value(Object{{"hdim", static_cast<std::int64_t>(g.hdim)},
                      {"rank_tol", g.rank_tol},
                      {"omega_norm", g.omega_norm},
                      {"lift_residuals", std::move(residuals)},
                      {"u_norms", std::move(norms)},
                      {"projection_rank", static_cast<std::int64_t>(g.projection_rank)},
                      {"ergodic", g.ergodic},
                      {"ergodic_deviation", g.ergodic_deviation}});
}

Value recurrence_json(const RecurrenceReport& report) {
  Array records;
  for (const auto& rec : report.records) {
    Object o{{"h", element_json(rec.h)},
             {"window_average", Value::complex(rec.window_average)},
             {"witness", element_json(rec.witness)},
             {"attained", rec.attained}};
    if (rec.has_algebra_value) o.emplace_back("algebra_value", Value::complex(rec.algebra_value));
    records.emplace_back(std::move(o));
  }
  Object out{{"epsilon", report.epsilon},
             {"side", report.side == Side::right ? "right" : "left"},
             {"alpha0", Object{{"index", report.alpha0_index},
                               {"n", report.alpha0_n},
                               {"size", report.alpha0_size},
                               {"residual", report.alpha0_residual}}},
             {"lower_bound", report.lower_bound},
             {"all_pass", report.all_pass}};
  if (report.corollary_checked) {
    out.emplace_back("corollary_bound", report.corollary_bound);
    out.emplace_back("corollary_all_pass", report.corollary_all_pass);
  }
  out.emplace_back("records", std::move(records));
  return Value(std::move(out));
}

Value multirec_json(const MultiRecurrenceReport& report) {
  Array records;
  for (const auto& rec : report.records) {
    Array factors, algebra_factors;
    for (const auto& v : rec.factor_values) factors.emplace_back(Value::complex(v));
    for (const auto& v : rec.factor_algebra_values)
      algebra_factors.emplace_back(Value::complex(v));
    records.emplace_back(Object{{"h", element_json(rec.h)},
                                {"window_average", Value::complex(rec.window_average)},
                                {"witness", element_json(rec.witness)},
                                {"product_modulus", rec.product_modulus},
                                {"factor_values", std::move(factors)},
                                {"factor_algebra_values", std::move(algebra_factors)}});
  }
  return Value(Object{{"q", report.q},
                      {"exponents", int_list_json(report.exponents)},
                      {"epsilon", report.epsilon},
                      {"alpha0", Object{{"index", report.alpha0_index},
                                        {"n", report.alpha0_n},
                                        {"size", report.alpha0_size},
                                        {"residual", report.alpha0_residual}}},
                      {"lower_bound", report.lower_bound},
                      {"limit_value", report.limit_value},
                      {"all_pass", report.all_pass},
                      {"cor43_applicable", report.cor43_applicable},
                      {"cor43_all_pass", report.cor43_all_pass},
                      {"records", std::move(records)}});
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content,
                std::vector<std::string>& outputs) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + (dir / name).string());
  out << content;
  outputs.push_back(name);
}

std::string convergence_csv(const ConvergenceSeries& series) {
  std::string csv = "N,lambda_size,residual\n";
  for (const auto& p : series) {
    csv += std::to_string(p.n);
    csv += ',';
    csv += std::to_string(p.lambda_size);
    csv += ',';
    csv += jsonio::format_double(p.residual);
    csv += '\n';
  }
  return csv;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& cfg, const ResultBundle& bundle) {
  Array outputs;
  for (const auto& name : bundle.outputs) outputs.emplace_back(name);
  Object manifest{{"tool", "ncrec"},
                  {"version", "0.1.0"},
                  {"scenario", cfg.scenario},
                  {"status", bundle.status}};
  if (!bundle.error.empty()) manifest.emplace_back("error", bundle.error);
  manifest.emplace_back("config", config_json(cfg));
  manifest.emplace_back("outputs", std::move(outputs));
  manifest.emplace_back("wall_time_ms", bundle.wall_ms);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << Value(std::move(manifest)).dump(2);
}

ExperimentConfig merged_defaults(const ExperimentConfig& config) {
  const ScenarioInfo& info = find_scenario(config.scenario);
  ExperimentConfig cfg = info.defaults();
  // explicit settings win over scenario defaults
  if (!config.schedule.empty()) cfg.schedule = config.schedule;
  if (!config.subset.empty()) cfg.subset = config.subset;
  if (!config.exponents.empty()) cfg.exponents = config.exponents;
  if (!config.side.empty()) cfg.side = config.side;
  cfg.d = config.d;
  if (config.m != ExperimentConfig{}.m) cfg.m = config.m;
  if (config.theta != ExperimentConfig{}.theta) cfg.theta = config.theta;
  if (config.epsilon != ExperimentConfig{}.epsilon) cfg.epsilon = config.epsilon;
  cfg.h_radius = config.h_radius;
  cfg.h_extra = config.h_extra;
  cfg.rank_tol = config.rank_tol;
  cfg.validation_tol = config.validation_tol;
  cfg.validation_samples = config.validation_samples;
  cfg.seed = config.seed;
  cfg.output = config.output;
  return cfg;
}

std::vector<GroupElement> build_h_set(const ScenarioBuild& build, const ExperimentConfig& cfg) {
  const SemigroupModel& model = build.system.model;
  std::vector<GroupElement> hs = word_ball(model, cfg.h_radius);
  for (const auto& coords : cfg.h_extra) hs.push_back(model.element(coords));
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  return hs;
}

Side side_from(const ScenarioBuild& build, const ExperimentConfig& cfg) {
  if (cfg.side.empty()) return build.side;
  if (cfg.side == "left") return Side::left;
  if (cfg.side == "right") return Side::right;
  throw ConfigError("side must be 'left' or 'right'");
}

}  // namespace

ExperimentConfig scenario_defaults(const std::string& name) { return find_scenario(name).defaults(); }

std::vector<ScenarioRow> list_scenarios() {
  std::vector<ScenarioRow> rows;
  for (const auto& s : scenario_registry()) rows.push_back({s.name, s.description});
  return rows;
}

ResultBundle run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = merged_defaults(config);
  const ScenarioInfo& info = find_scenario(cfg.scenario);

  ResultBundle bundle;
  bundle.output_dir = cfg.output;
  const fs::path dir(cfg.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory: " + cfg.output);

  ScenarioBuild build = info.build(cfg);
  bundle.validation = *build.system.validation;
  write_file(dir, "validation.json", validation_json(*bundle.validation).dump(2), bundle.outputs);

  if (!bundle.validation->all_pass()) {
    bundle.status = 1;
    bundle.error = "validation failed";
    bundle.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(dir, cfg, bundle);
    return bundle;
  }

  try {
    const GnsRep rep =
        gns_lift(gns_build(build.system.descriptor, build.system.omega, cfg.rank_tol), build.system);
    const FixedProjection proj = fixed_projection(rep);
    const ErgodicityReport erg = is_ergodic(rep);

    GnsSummary summary;
    summary.hdim = rep.hdim;
    summary.rank_tol = rep.rank_tol;
    summary.omega_norm = rep.omega_vec.norm();
    summary.lift_residuals = rep.lift_residuals;
    summary.u_norms = rep.u_norms;
    summary.projection_rank = proj.rank;
    summary.ergodic = erg.ergodic;
    summary.ergodic_deviation = erg.deviation;
    bundle.gns = summary;
    write_file(dir, "gns.json", gns_json(summary).dump(2), bundle.outputs);

    HVector profile = iota(rep, build.profile_element);
    if (build.normalize_profile && profile.norm() > 0) profile /= profile.norm();
    bundle.convergence = convergence_profile(rep, build.system.model, profile, build.net);
    write_file(dir, "convergence.csv", convergence_csv(bundle.convergence), bundle.outputs);

    const std::vector<GroupElement> hs = build_h_set(build, cfg);
    const Side side = side_from(build, cfg);

    if (build.run_recurrence) {
      bundle.recurrence = khintchine_recurrence(build.system, rep, build.a, build.b, cfg.epsilon,
                                                build.net, hs, side);
      write_file(dir, "recurrence.json", recurrence_json(*bundle.recurrence).dump(2),
                 bundle.outputs);
      if (!bundle.recurrence->all_pass) {
        bundle.status = 1;
        bundle.error = "recurrence bound failed";
      }
    }
    if (build.run_multirec && !cfg.exponents.empty()) {
      bundle.multirec = multiple_recurrence_search(build.system, build.a, cfg.exponents,
                                                   cfg.epsilon, build.net, hs);
      write_file(dir, "multirec.json", multirec_json(*bundle.multirec).dump(2), bundle.outputs);
      if (!bundle.multirec->all_pass) {
        bundle.status = 1;
        if (bundle.error.empty()) bundle.error = "multiple recurrence bound failed";
      }
    }
  } catch (const NetExhausted& e) {
    bundle.status = 1;
    bundle.error = e.what();
  } catch (const InconsistentDynamics& e) {
    bundle.status = 1;
    bundle.error = e.what();
  }

  bundle.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(dir, cfg, bundle);
  return bundle;
}

ResultBundle validate_only(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = merged_defaults(config);
  const ScenarioInfo& info = find_scenario(cfg.scenario);

  ResultBundle bundle;
  bundle.output_dir = cfg.output;
  const fs::path dir(cfg.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory: " + cfg.output);

  ScenarioBuild build = info.build(cfg);
  bundle.validation = *build.system.validation;
  write_file(dir, "validation.json", validation_json(*bundle.validation).dump(2), bundle.outputs);
  if (!bundle.validation->all_pass()) {
    bundle.status = 1;
    bundle.error = "validation failed";
  }
  bundle.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(dir, cfg, bundle);
  return bundle;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"ncrec: recurrence experiments for finite *-dynamical systems"};
  app.require_subcommand(1);

  std::string config_path, out_dir, scenario;
  std::int64_t seed = -1;
  bool have_seed = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file");
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", seed, "seed (overrides config)")->each([&](const std::string&) {
      have_seed = true;
    });
    cmd->add_option("--scenario", scenario, "scenario name (registry defaults)");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run a full experiment");
  add_common(cmd_run);
  CLI::App* cmd_validate = app.add_subcommand("validate-only", "run only the axiom checks");
  add_common(cmd_validate);
  app.add_subcommand("list-scenarios", "print the scenario registry");

  std::vector<const char*> argv;
  argv.push_back("ncrec");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::printf("%s", app.help().c_str());
    return 0;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& row : list_scenarios())
        std::printf("%-22s %s\n", row.name.c_str(), row.description.c_str());
      return 0;
    }

    ExperimentConfig cfg;
    if (!config_path.empty()) {
      const IniFile file = IniFile::parse_file(config_path);
      if (!scenario.empty()) cfg.scenario = scenario;
      cfg.apply(file);
    }
    if (!scenario.empty()) cfg.scenario = scenario;
    if (cfg.scenario.empty()) throw ConfigError("no scenario given (use --scenario or a config file)");
    if (!out_dir.empty()) cfg.output = out_dir;
    if (have_seed) cfg.seed = static_cast<std::uint64_t>(seed);

    const ResultBundle bundle =
        app.got_subcommand("validate-only") ? validate_only(cfg) : run(cfg);
    if (bundle.status != 0)
      std::fprintf(stderr, "ncrec: %s\n",
                   bundle.error.empty() ? "invariant failure" : bundle.error.c_str());
    return bundle.status;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "ncrec: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "ncrec: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ncrec: %s\n", e.what());
    return 1;
  }
}

}  // namespace ncrec
