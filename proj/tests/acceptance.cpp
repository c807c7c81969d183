// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ncrec/experiment.hpp"
#include "support/oracles.hpp"

using namespace ncrec;

namespace {

StarDynamicalSystem cyclic_shift_system(int m) {
  std::vector<int> shift(m);
  for (int x = 0; x < m; ++x) shift[x] = (x + 1) % m;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(m);
  return make_system(desc, State::uniform(desc), SemigroupModel::cyclic(m, 1),
                     {koopman_from_map(shift)});
}

GnsRep lifted(const StarDynamicalSystem& sys) {
  return gns_lift(gns_build(sys.descriptor, sys.omega), sys);
}

std::vector<std::string> good_scenarios() {
  std::vector<std::string> names;
  for (const auto& row : list_scenarios())
    if (row.name.rfind("bad-", 0) != 0) names.push_back(row.name);
  return names;
}

bool check(bool condition, const std::string& what, std::string& detail) {
  if (!condition && detail.empty()) detail = what;
  return condition;
}

// ---------------------------------------------------------------------------

bool criterion_gns_correctness(std::string& detail) {
  DetRng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    // random block structure with total matrix dimension <= 6
    std::vector<int> dims;
    int left = 1 + static_cast<int>(rng.uniform_below(6));
    while (left > 0) {
      const int n = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(left)));
      dims.push_back(n);
      left -= n;
    }
    const AlgebraDescriptor desc{dims};
    const State omega = oracles::random_state(desc, rng, 0.05);  // full rank
    const GnsRep rep = gns_build(desc, omega);
    for (int i = 0; i < 100; ++i) {
      const AlgebraElement a = oracles::random_element(desc, rng);
      const AlgebraElement b = oracles::random_element(desc, rng);
      const Complex lhs = gns_inner(iota(rep, a), iota(rep, b));
      const Complex rhs = state_eval(omega, alg_mul(alg_star(a), b));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  std::ostringstream os;
  os << "max |<iota(A),iota(B)> - omega(A*B)| = " << worst;
  detail = os.str();
  return worst <= 1e-9;
}

bool criterion_gns_quotient(std::string& detail) {
  bool ok = true;
  const AlgebraDescriptor m2{{2}};
  Mat pure = Mat::Zero(2, 2);
  pure(0, 0) = 1.0;
  ok &= check(gns_build(m2, State::make(m2, {pure})).hdim == 2, "pure state hdim != 2", detail);
  ok &= check(gns_build(m2, State::uniform(m2)).hdim == 4, "uniform M2 hdim != 4", detail);
  Mat skew = Mat::Zero(2, 2);
  skew(0, 0) = 0.7;
  skew(1, 1) = 0.3;
  ok &= check(gns_build(m2, State::make(m2, {skew})).hdim == 4, "faithful M2 hdim != 4", detail);
  for (int m = 2; m <= 8; ++m) {
    const AlgebraDescriptor cm = AlgebraDescriptor::commutative_points(m);
    ok &= check(gns_build(cm, State::uniform(cm)).hdim == m,
                "uniform C" + std::to_string(m) + " hdim != m", detail);
  }
  if (ok) detail = "hdim exact for pure/faithful M2 and uniform C2..C8";
  return ok;
}

bool criterion_mean_ergodic(std::string& detail) {
  bool ok = true;
  // scalar rotation scenario: residual bounded by the geometric-sum estimate
  ExperimentConfig cfg = scenario_defaults("scalar-rotation");
  const ScenarioBuild build = find_scenario("scalar-rotation").build(cfg);
  const GnsRep rep = lifted(build.system);
  HVector x = iota(rep, build.profile_element);
  x /= x.norm();
  const ConvergenceSeries series = convergence_profile(rep, build.system.model, x, build.net);
  const double denom = std::abs(1.0 - std::polar(1.0, cfg.theta));
  for (const auto& point : series) {
    const double bound = 2.0 / (static_cast<double>(point.n) * denom);
    ok &= check(point.residual <= bound,
                "rotation residual " + std::to_string(point.residual) + " above bound at N=" +
                    std::to_string(point.n),
                detail);
  }

  // full periods of the 97-point shift average exactly
  StarDynamicalSystem c97 = cyclic_shift_system(97);
  const GnsRep rep97 = lifted(c97);
  const std::int64_t sched[] = {97, 194, 291};
  const FolnerNet net = box_folner_net(c97.model, sched);
  const HVector y = iota(rep97, indicator_element(97, {0, 1, 2, 3}));
  for (const auto& point : convergence_profile(rep97, c97.model, y, net))
    ok &= check(point.residual <= 1e-10,
                "C97 residual " + std::to_string(point.residual) + " at N=" +
                    std::to_string(point.n),
                detail);
  if (ok) detail = "geometric bound holds at N=1e2..1e4; C97 full periods exact";
  return ok;
}

bool criterion_projection_oracle(std::string& detail) {
  bool ok = true;
  double worst_generic = 0.0, worst_cyclic = 0.0;
  for (const auto& name : good_scenarios()) {
    const ExperimentConfig cfg = scenario_defaults(name);
    const ScenarioBuild build = find_scenario(name).build(cfg);
    const GnsRep rep = lifted(build.system);
    const auto& entry = build.net.entries().back();
    const Mat averaged =
        box_average_apply(u_slot_steps(rep, build.system.model), entry.slot_sides,
                          Mat::Identity(rep.hdim, rep.hdim));
    const double gap = max_abs(averaged - fixed_projection(rep).matrix);
    const bool cyclic = build.system.model.family() == Family::cyclic;
    if (cyclic) {
      // schedules end at a full period: the averaging operator is exact
      worst_cyclic = std::max(worst_cyclic, gap);
      ok &= check(gap <= 1e-10, name + ": full-period gap " + std::to_string(gap), detail);
    } else {
      ok &= check(entry.size() >= 10000,
                  name + ": only " + std::to_string(entry.size()) + " summands", detail);
      worst_generic = std::max(worst_generic, gap);
      ok &= check(gap <= 5e-3, name + ": gap " + std::to_string(gap), detail);
    }
  }
  if (ok) {
    std::ostringstream os;
    os << "max gap " << worst_generic << " (>=1e4 summands), " << worst_cyclic
       << " (cyclic full period)";
    detail = os.str();
  }
  return ok;
}

bool criterion_khintchine_c360(std::string& detail) {
  const int m = 360;
  std::vector<std::int64_t> subset(90);
  for (int i = 0; i < 90; ++i) subset[i] = i;
  StarDynamicalSystem sys = cyclic_shift_system(m);
  const GnsRep rep = lifted(sys);
  const AlgebraElement a = indicator_element(m, subset);
  const std::int64_t sched[] = {90, 180, 270, 360};
  const FolnerNet net = box_folner_net(sys.model, sched);
  std::vector<GroupElement> h_set;
  for (int h = 0; h < m; ++h) h_set.push_back(sys.model.element({h}));

  const RecurrenceReport report =
      khintchine_recurrence(sys, rep, a, a, 0.01, net, h_set, Side::right);
  bool ok = check(report.records.size() == 360, "expected 360 records", detail);
  std::vector<double> overlap(m);
  for (int g = 0; g < m; ++g) overlap[g] = oracles::cyclic_overlap(m, subset, subset, g);
  const auto& window = net.entries()[static_cast<std::size_t>(report.alpha0_index)].elements;
  for (const auto& rec : report.records) {
    const double at_witness = overlap[static_cast<std::size_t>(rec.witness.coords[0] % m)];
    ok &= check(at_witness > 0.0525,
                "witness value " + std::to_string(at_witness) + " not above 0.0525", detail);
    double brute = -1.0;
    for (const auto& lambda : window) {
      const std::int64_t g = compose(sys.model, lambda, rec.h).coords[0];
      brute = std::max(brute, overlap[static_cast<std::size_t>(g % m)]);
    }
    ok &= check(std::abs(brute - rec.attained) <= 1e-9,
                "brute-force max " + std::to_string(brute) + " != reported " +
                    std::to_string(rec.attained),
                detail);
    if (!ok) break;
  }
  ok &= check(report.all_pass, "report.all_pass is false", detail);
  if (ok) detail = "360/360 witnesses above 0.0525; brute-force maxima match";
  return ok;
}

bool criterion_quantum_closed_form(std::string& detail) {
  const double theta = 1.0;
  ExperimentConfig cfg = scenario_defaults("qubit-conjugation");
  const ScenarioBuild build = find_scenario("qubit-conjugation").build(cfg);
  const GnsRep rep = lifted(build.system);
  const HVector x = iota(rep, build.a);

  bool ok = true;
  double worst = 0.0;
  HVector current = x;
  for (int n = 0; n <= 1000; ++n) {
    const Complex expected = (1.0 + std::polar(1.0, n * theta)) / 2.0;
    worst = std::max(worst, std::abs(gns_inner(x, current) - expected));
    current = rep.u_generators[0] * current;
  }
  ok &= check(worst <= 1e-10, "closed-form deviation " + std::to_string(worst), detail);

  const RecurrenceReport report = khintchine_recurrence(
      build.system, rep, build.a, build.b, 0.01, build.net,
      word_ball(build.system.model, 3), Side::right);
  for (const auto& rec : report.records)
    ok &= check(rec.attained > 0.25 - 0.01, "witness below 1/4 - eps", detail);
  ok &= check(report.all_pass, "report.all_pass is false", detail);
  if (ok) {
    std::ostringstream os;
    os << "max |omega(A* tau_n(A)) - (1+e^{in})/2| = " << worst << " over n <= 1000";
    detail = os.str();
  }
  return ok;
}

bool criterion_ergodicity_detection(std::string& detail) {
  bool ok = true;
  for (int m = 2; m <= 12; ++m) {
    const ErgodicityReport erg = is_ergodic(lifted(cyclic_shift_system(m)));
    ok &= check(erg.ergodic && erg.deviation <= 1e-9,
                "C" + std::to_string(m) + " not detected ergodic", detail);
  }

  const ExperimentConfig id_cfg = scenario_defaults("identity");
  const ScenarioBuild id_build = find_scenario("identity").build(id_cfg);
  const GnsRep id_rep = lifted(id_build.system);
  const ErgodicityReport id_erg = is_ergodic(id_rep);
  ok &= check(!id_erg.ergodic && id_erg.rank == id_rep.hdim, "identity misdetected", detail);

  // tensor square: rank of P equals the eigenvalue-1 count of U (x) U
  const int m = 6;
  StarDynamicalSystem factor = cyclic_shift_system(m);
  StarDynamicalSystem square = tensor_systems({factor, factor});
  const ErgodicityReport sq = is_ergodic(lifted(square));
  const GnsRep factor_rep = lifted(factor);
  Eigen::ComplexEigenSolver<Mat> es(kron(factor_rep.u_generators[0], factor_rep.u_generators[0]));
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i] - Complex(1.0, 0.0)) < 1e-6) ++count;
  ok &= check(!sq.ergodic, "tensor square misdetected as ergodic", detail);
  ok &= check(sq.rank == count && sq.rank == m,
              "rank " + std::to_string(sq.rank) + " != eigenvalue count " + std::to_string(count),
              detail);
  if (ok) detail = "cyclic shifts ergodic; identity rank hdim; tensor square rank m";
  return ok;
}

bool criterion_multiple_recurrence(std::string& detail) {
  const int m = 64;
  std::vector<std::int64_t> subset(16);
  for (int i = 0; i < 16; ++i) subset[i] = i;
  StarDynamicalSystem sys = cyclic_shift_system(m);
  const AlgebraElement a = indicator_element(m, subset);
  const std::int64_t sched[] = {16, 32, 64};
  const FolnerNet net = box_folner_net(sys.model, sched);
  const auto h_set = word_ball(sys.model, 3);

  const MultiRecurrenceReport report =
      multiple_recurrence_search(sys, a, {1, 2}, 0.01, net, h_set);
  const double bound = std::pow(0.25, 4) - 0.01;
  bool ok = check(report.all_pass, "report.all_pass is false", detail);
  const auto& window = net.entries()[static_cast<std::size_t>(report.alpha0_index)].elements;
  for (const auto& rec : report.records) {
    ok &= check(std::abs(rec.factor_values[0]) > 0.0 && std::abs(rec.factor_values[1]) > 0.0,
                "vanishing factor at the witness", detail);
    ok &= check(rec.product_modulus > bound, "product below the bound", detail);
    double brute = -1.0;
    for (const auto& lambda : window) {
      const std::int64_t g = compose(sys.model, lambda, rec.h).coords[0];
      brute = std::max(brute, oracles::cyclic_overlap(m, subset, subset, g) *
                                  oracles::cyclic_overlap(m, subset, subset, 2 * g));
    }
    ok &= check(std::abs(brute - rec.product_modulus) <= 1e-9,
                "brute-force product " + std::to_string(brute) + " != reported " +
                    std::to_string(rec.product_modulus),
                detail);
  }
  if (ok) detail = "factors nonzero, products above (1/4)^4 - 0.01, scans match";
  return ok;
}

bool criterion_heisenberg_left(std::string& detail) {
  ExperimentConfig cfg = scenario_defaults("heisenberg-koopman");
  const ScenarioInfo& info = find_scenario("heisenberg-koopman");
  const ScenarioBuild build = info.build(cfg);
  const GnsRep rep = lifted(build.system);
  const RecurrenceReport report =
      khintchine_recurrence(build.system, rep, build.a, build.b, 0.05, build.net,
                            word_ball(build.system.model, 3), Side::left);
  bool ok = check(report.all_pass, "left-window report failed", detail);

  // defect of the quadratic-height box halves (within factor 0.6) from N=8 to N=16
  const auto& entries = build.net.entries();
  const FolnerEntry* e8 = nullptr;
  const FolnerEntry* e16 = nullptr;
  for (const auto& entry : entries) {
    if (entry.n == 8) e8 = &entry;
    if (entry.n == 16) e16 = &entry;
  }
  ok &= check(e8 != nullptr && e16 != nullptr, "schedule misses N=8 or N=16", detail);
  if (e8 && e16) {
    for (const auto& gen : build.system.model.generators()) {
      const double d8 = folner_defect(build.system.model, e8->elements, gen);
      const double d16 = folner_defect(build.system.model, e16->elements, gen);
      ok &= check(d16 <= 0.6 * d8,
                  "defect ratio " + std::to_string(d16 / d8) + " above 0.6", detail);
    }
  }
  if (ok) detail = "all_pass with eps=0.05; defects halve within factor 0.6";
  return ok;
}

bool criterion_axiom_validation(std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  for (const auto& name : good_scenarios()) {
    const ExperimentConfig cfg = scenario_defaults(name);
    const ScenarioBuild build = find_scenario(name).build(cfg);
    ok &= check(build.system.validation->all_pass(), name + ": validation failed", detail);
    for (const auto& axiom : build.system.validation->axioms) {
      worst = std::max(worst, axiom.worst_residual);
      ok &= check(axiom.worst_residual <= 1e-9,
                  name + ": axiom " + axiom.name + " residual " +
                      std::to_string(axiom.worst_residual),
                  detail);
    }
  }
  ok &= check(run_cli({"validate-only", "--scenario", "bad-unital", "--out",
                       "/tmp/ncrec_acceptance_bad_unital"}) != 0,
              "bad-unital exited zero", detail);
  ok &= check(run_cli({"validate-only", "--scenario", "bad-contraction", "--out",
                       "/tmp/ncrec_acceptance_bad_contraction"}) != 0,
              "bad-contraction exited zero", detail);
  if (ok) {
    std::ostringstream os;
    os << "worst axiom residual " << worst << "; both broken scenarios exit nonzero";
    detail = os.str();
  }
  return ok;
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 = no stated limit
  std::function<bool(std::string&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "GNS correctness", 5.0, criterion_gns_correctness},
      {2, "GNS quotient dimensions", 0.0, criterion_gns_quotient},
      {3, "mean ergodic theorem", 10.0, criterion_mean_ergodic},
      {4, "projection oracle equivalence", 30.0, criterion_projection_oracle},
      {5, "Khintchine recurrence on C360", 10.0, criterion_khintchine_c360},
      {6, "quantum recurrence closed form", 5.0, criterion_quantum_closed_form},
      {7, "ergodicity detection", 0.0, criterion_ergodicity_detection},
      {8, "multiple recurrence on C64", 20.0, criterion_multiple_recurrence},
      {9, "unimodular left-window path", 60.0, criterion_heisenberg_left},
      {10, "axiom validation", 0.0, criterion_axiom_validation},
  };

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool pass = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      pass = criterion.body(detail);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criterion.time_limit_s > 0.0 && secs >= criterion.time_limit_s) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over the ") +
                std::to_string(criterion.time_limit_s) + "s budget";
    }
    std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name.c_str(), secs, detail.c_str());
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
