#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ncrec/config.hpp"
#include "ncrec/multirec.hpp"

namespace ncrec {

// A scenario is a named, fully reproducible experiment preset: the dynamical
// system, its averaging net, the elements fed to the recurrence searches and
// the report variants to produce.
struct ScenarioBuild {
  StarDynamicalSystem system;
  FolnerNet net;
  AlgebraElement a;
  AlgebraElement b;
  AlgebraElement profile_element;  // vector for the convergence profile
  bool normalize_profile = false;
  Side side = Side::right;
  bool run_recurrence = true;
  bool run_multirec = false;
  bool expect_valid = true;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::function<ExperimentConfig()> defaults;
  std::function<ScenarioBuild(const ExperimentConfig&)> build;
};

const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo& find_scenario(const std::string& name);  // throws ConfigError

}  // namespace ncrec
