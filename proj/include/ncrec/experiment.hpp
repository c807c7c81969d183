#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncrec/scenario.hpp"

namespace ncrec {

struct GnsSummary {
  Eigen::Index hdim = 0;
  double rank_tol = 0.0;
  double omega_norm = 0.0;
  std::vector<double> lift_residuals;
  std::vector<double> u_norms;
  Eigen::Index projection_rank = 0;
  bool ergodic = false;
  double ergodic_deviation = 0.0;
};

struct ResultBundle {
  int status = 0;  // 0 ok, 1 invariant failure
  std::string output_dir;
  std::string error;
  std::optional<ValidationReport> validation;
  std::optional<GnsSummary> gns;
  ConvergenceSeries convergence;
  std::optional<RecurrenceReport> recurrence;
  std::optional<MultiRecurrenceReport> multirec;
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
};

// Full pipeline: validate, GNS build/lift, fixed projection, convergence
// profile, then the recurrence reports the scenario requests.  Writes
// validation.json, gns.json, convergence.csv, recurrence.json, multirec.json
// (as applicable) and manifest.json into the output directory.
ResultBundle run(const ExperimentConfig& config);

// Only the axiom checks; writes validation.json and manifest.json.
ResultBundle validate_only(const ExperimentConfig& config);

struct ScenarioRow {
  std::string name;
  std::string description;
};
std::vector<ScenarioRow> list_scenarios();

ExperimentConfig scenario_defaults(const std::string& name);

// Command-line front end (verbs: run, validate-only, list-scenarios).
// Returns the process exit code: 0 success, 1 invariant failure,
// 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args);

}  // namespace ncrec
