#include "ncrec/scenario.hpp"

#include <cmath>

#include "ncrec/errors.hpp"

namespace ncrec {

namespace {

ValidationOptions validation_options(const ExperimentConfig& cfg) {
  ValidationOptions opts;
  opts.tol = cfg.validation_tol;
  opts.samples = cfg.validation_samples;
  opts.seed = cfg.seed;
  return opts;
}

std::vector<std::int64_t> cyclic_default_schedule(std::int64_t m) {
  std::vector<std::int64_t> s;
  for (std::int64_t n : {m / 4, m / 2, m})
    if (n > 0 && (s.empty() || n > s.back())) s.push_back(n);
  return s;
}

AlgebraElement qubit_probe() {
  // E00 + E01 on a single 2x2 block
  Mat block = Mat::Zero(2, 2);
  block(0, 0) = 1.0;
  block(0, 1) = 1.0;
  return AlgebraElement(AlgebraDescriptor{{2}}, {block});
}

StarDynamicalSystem qubit_conjugation_system(double theta, const ExperimentConfig& cfg) {
  const AlgebraDescriptor desc{{2}};
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = std::polar(1.0, theta);
  return make_system(desc, State::uniform(desc), SemigroupModel::cone(1),
                     {conjugation_from_unitary(desc, {v})}, validation_options(cfg));
}

StarDynamicalSystem cyclic_rotation_system(std::int64_t m, const ExperimentConfig& cfg) {
  const int mi = static_cast<int>(m);
  std::vector<int> shift(mi);
  for (int x = 0; x < mi; ++x) shift[x] = (x + 1) % mi;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(mi);
  return make_system(desc, State::uniform(desc), SemigroupModel::cyclic(m, 1),
                     {koopman_from_map(shift)}, validation_options(cfg));
}

// Functions on the (Z/m)^2 torus with the four translation Koopman maps; the
// acting semigroup is the full lattice Z^2.
StarDynamicalSystem lattice_torus_system(std::int64_t m, const ExperimentConfig& cfg) {
  const int mi = static_cast<int>(m);
  const int points = mi * mi;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(points);
  auto translation = [&](int dx, int dy) {
    std::vector<int> map(points);
    for (int x = 0; x < mi; ++x)
      for (int y = 0; y < mi; ++y)
        map[x * mi + y] = (((x + dx) % mi + mi) % mi) * mi + (((y + dy) % mi + mi) % mi);
    return koopman_from_map(map);
  };
  return make_system(desc, State::uniform(desc), SemigroupModel::lattice(2),
                     {translation(1, 0), translation(-1, 0), translation(0, 1), translation(0, -1)},
                     validation_options(cfg));
}

// Functions on the finite Heisenberg group H(Z/m); each semigroup element
// acts by right translation, so the Koopman maps of the three generators
// satisfy the Heisenberg relations exactly.
StarDynamicalSystem heisenberg_torus_system(std::int64_t m, const ExperimentConfig& cfg) {
  const int mi = static_cast<int>(m);
  const int points = mi * mi * mi;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(points);
  auto idx = [mi](int a, int b, int c) { return (a * mi + b) * mi + c; };
  auto right_translation = [&](int ga, int gb, int gc) {
    std::vector<int> map(points);
    for (int a = 0; a < mi; ++a)
      for (int b = 0; b < mi; ++b)
        for (int c = 0; c < mi; ++c)
          map[idx(a, b, c)] = idx((a + ga) % mi, (b + gb) % mi, (c + gc + a * gb) % mi);
    return koopman_from_map(map);
  };
  return make_system(desc, State::uniform(desc), SemigroupModel::heisenberg(),
                     {right_translation(1, 0, 0), right_translation(0, 1, 0),
                      right_translation(0, 0, 1)},
                     validation_options(cfg));
}

FolnerNet net_from(const ExperimentConfig& cfg, const SemigroupModel& model) {
  if (cfg.schedule.empty()) throw ConfigError("scenario requires a net schedule");
  return box_folner_net(model, cfg.schedule);
}

ExperimentConfig base_defaults(const std::string& name) {
  ExperimentConfig cfg;
  cfg.scenario = name;
  return cfg;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = [] {
    std::vector<ScenarioInfo> r;

    r.push_back(ScenarioInfo{
        "identity", "trivial dynamics on M2; fixed space is everything, not ergodic",
        [] {
          ExperimentConfig cfg = base_defaults("identity");
          cfg.schedule = {10, 100, 1000, 10000};
          cfg.epsilon = 0.05;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          const AlgebraDescriptor desc{{2}};
          DynMap id;
          id.mat = Mat::Identity(4, 4);
          id.unital = true;
          StarDynamicalSystem sys =
              make_system(desc, State::uniform(desc), SemigroupModel::cone(1), {id},
                          validation_options(cfg));
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement probe = qubit_probe();
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "scalar-rotation",
        "conjugation by diag(1, e^{i theta}) on M2 profiled along the rotating coordinate",
        [] {
          ExperimentConfig cfg = base_defaults("scalar-rotation");
          cfg.schedule = {100, 1000, 10000};
          cfg.theta = 1.0;
          cfg.epsilon = 0.05;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = qubit_conjugation_system(cfg.theta, cfg);
          FolnerNet net = net_from(cfg, sys.model);
          Mat e01 = Mat::Zero(2, 2);
          e01(0, 1) = 1.0;
          const AlgebraElement probe = qubit_probe();
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               AlgebraElement(AlgebraDescriptor{{2}}, {e01}), true,
                               Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "qubit-conjugation",
        "conjugation by diag(1, e^{i theta}) on M2 with the E00+E01 recurrence probe",
        [] {
          ExperimentConfig cfg = base_defaults("qubit-conjugation");
          cfg.schedule = {100, 1000, 10000};
          cfg.theta = 1.0;
          cfg.epsilon = 0.01;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = qubit_conjugation_system(cfg.theta, cfg);
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement probe = qubit_probe();
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "cyclic-rotation", "Koopman shift on m points with an indicator probe",
        [] {
          ExperimentConfig cfg = base_defaults("cyclic-rotation");
          cfg.m = 12;
          cfg.subset = {0, 1, 2, 3};
          cfg.schedule = cyclic_default_schedule(12);
          cfg.epsilon = 0.05;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = cyclic_rotation_system(cfg.m, cfg);
          ExperimentConfig c = cfg;
          if (c.schedule.empty()) c.schedule = cyclic_default_schedule(cfg.m);
          FolnerNet net = net_from(c, sys.model);
          const AlgebraElement probe = indicator_element(static_cast<int>(cfg.m), cfg.subset);
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "cyclic-multirec", "Koopman shift on 64 points searched with exponents (1, 2)",
        [] {
          ExperimentConfig cfg = base_defaults("cyclic-multirec");
          cfg.m = 64;
          cfg.subset = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
          cfg.schedule = {16, 32, 64};
          cfg.exponents = {1, 2};
          cfg.epsilon = 0.01;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = cyclic_rotation_system(cfg.m, cfg);
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement probe = indicator_element(static_cast<int>(cfg.m), cfg.subset);
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, true, true};
        }});

    r.push_back(ScenarioInfo{
        "cyclic-tensor-square", "tensor square of the 6-point shift; invariant pairs, not ergodic",
        [] {
          ExperimentConfig cfg = base_defaults("cyclic-tensor-square");
          cfg.m = 6;
          cfg.subset = {0, 1};
          cfg.schedule = {3, 6};
          cfg.epsilon = 0.05;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem factor = cyclic_rotation_system(cfg.m, cfg);
          StarDynamicalSystem sys = tensor_systems({factor, factor});
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement s = indicator_element(static_cast<int>(cfg.m), cfg.subset);
          const AlgebraElement probe = tensor_elements(s, s);
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "lattice-Z2-shift", "Z^2 translation action on the (Z/m)^2 torus",
        [] {
          ExperimentConfig cfg = base_defaults("lattice-Z2-shift");
          cfg.m = 8;
          cfg.schedule = {8, 16, 104};
          cfg.epsilon = 0.05;
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = lattice_torus_system(cfg.m, cfg);
          FolnerNet net = net_from(cfg, sys.model);
          std::vector<std::int64_t> subset = cfg.subset;
          if (subset.empty())
            for (std::int64_t p = 0; p < cfg.m * cfg.m / 2; ++p) subset.push_back(p);
          const AlgebraElement probe =
              indicator_element(static_cast<int>(cfg.m * cfg.m), subset);
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "heisenberg-koopman",
        "right-translation action on the finite Heisenberg group; left-window reports",
        [] {
          ExperimentConfig cfg = base_defaults("heisenberg-koopman");
          cfg.m = 5;
          cfg.schedule = {4, 8, 16, 20};
          cfg.epsilon = 0.05;
          cfg.side = "left";
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          StarDynamicalSystem sys = heisenberg_torus_system(cfg.m, cfg);
          FolnerNet net = net_from(cfg, sys.model);
          std::vector<std::int64_t> subset = cfg.subset;
          if (subset.empty()) {
            // slab a < 3 of the m^3 points
            for (std::int64_t a = 0; a < std::min<std::int64_t>(3, cfg.m); ++a)
              for (std::int64_t rest = 0; rest < cfg.m * cfg.m; ++rest)
                subset.push_back(a * cfg.m * cfg.m + rest);
          }
          const AlgebraElement probe =
              indicator_element(static_cast<int>(cfg.m * cfg.m * cfg.m), subset);
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::left, true, false, true};
        }});

    r.push_back(ScenarioInfo{
        "bad-unital", "deliberately broken: the generator map scales the unit",
        [] {
          ExperimentConfig cfg = base_defaults("bad-unital");
          cfg.schedule = {4, 8};
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(2);
          DynMap doubling;
          doubling.mat = 2.0 * Mat::Identity(2, 2);
          StarDynamicalSystem sys =
              make_system(desc, State::uniform(desc), SemigroupModel::cone(1), {doubling},
                          validation_options(cfg));
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement probe = indicator_element(2, {0});
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, false, false, false};
        }});

    r.push_back(ScenarioInfo{
        "bad-contraction", "deliberately broken: unital map that expands a direction",
        [] {
          ExperimentConfig cfg = base_defaults("bad-contraction");
          cfg.schedule = {4, 8};
          return cfg;
        },
        [](const ExperimentConfig& cfg) {
          const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(2);
          DynMap expanding;  // fixes (1,1), doubles (1,-1)
          expanding.mat = Mat(2, 2);
          expanding.mat << 1.5, -0.5, -0.5, 1.5;
          StarDynamicalSystem sys =
              make_system(desc, State::uniform(desc), SemigroupModel::cone(1), {expanding},
                          validation_options(cfg));
          FolnerNet net = net_from(cfg, sys.model);
          const AlgebraElement probe = indicator_element(2, {0});
          return ScenarioBuild{std::move(sys), std::move(net), probe, probe,
                               probe, false, Side::right, false, false, false};
        }});

    return r;
  }();
  return registry;
}

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry())
    if (s.name == name) return s;
  throw ConfigError("unknown scenario: " + name);
}

}  // namespace ncrec
