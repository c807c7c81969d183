#include "ncrec/dynamics.hpp"

#include <map>
#include <stdexcept>

namespace ncrec {

DynMap map_from_action(const AlgebraDescriptor& desc,
                       const std::function<AlgebraElement(const AlgebraElement&)>& action) {
  const int d = desc.coord_dim();
  DynMap map;
  map.mat = Mat(d, d);
  for (int k = 0; k < d; ++k)
    map.mat.col(k) = action(AlgebraElement::basis_element(desc, k)).coords();
  map.unital = max_abs(map.mat * AlgebraElement::unit(desc).coords() -
                       AlgebraElement::unit(desc).coords()) <= 1e-10;
  return map;
}

DynMap koopman_from_map(const std::vector<int>& point_map) {
  const int m = static_cast<int>(point_map.size());
  if (m == 0) throw std::invalid_argument("koopman_from_map: empty map");
  for (int v : point_map)
    if (v < 0 || v >= m) throw std::invalid_argument("koopman_from_map: map value out of range");
  DynMap map;
  map.mat = Mat::Zero(m, m);
  for (int x = 0; x < m; ++x) map.mat(x, point_map[x]) = 1.0;
  map.unital = true;
  return map;
}

DynMap conjugation_from_unitary(const AlgebraDescriptor& desc, const std::vector<Mat>& v_blocks) {
  if (v_blocks.size() != desc.block_dims.size())
    throw std::invalid_argument("conjugation_from_unitary: block count mismatch");
  for (std::size_t i = 0; i < v_blocks.size(); ++i) {
    const int n = desc.block_dims[i];
    if (v_blocks[i].rows() != n || v_blocks[i].cols() != n)
      throw std::invalid_argument("conjugation_from_unitary: block shape mismatch");
    if (max_abs(v_blocks[i].adjoint() * v_blocks[i] - Mat::Identity(n, n)) > 1e-10)
      throw std::invalid_argument("conjugation_from_unitary: block is not unitary");
  }
  return map_from_action(desc, [&](const AlgebraElement& a) {
    std::vector<Mat> blocks;
    blocks.reserve(v_blocks.size());
    for (std::size_t i = 0; i < v_blocks.size(); ++i)
      blocks.push_back(v_blocks[i].adjoint() * a.block(static_cast<int>(i)) * v_blocks[i]);
    return AlgebraElement(desc, std::move(blocks));
  });
}

AlgebraElement apply_map(const AlgebraDescriptor& desc, const Mat& map, const AlgebraElement& a) {
  return AlgebraElement::from_coords(desc, map * a.coords());
}

StarDynamicalSystem make_system(AlgebraDescriptor desc, State omega, SemigroupModel model,
                                std::vector<DynMap> generator_maps,
                                const ValidationOptions& opts) {
  if (omega.descriptor() != desc) throw std::invalid_argument("make_system: state shape mismatch");
  if (generator_maps.size() != model.generators().size())
    throw std::invalid_argument("make_system: need one generator map per semigroup generator");
  const int d = desc.coord_dim();
  for (const auto& m : generator_maps)
    if (m.mat.rows() != d || m.mat.cols() != d)
      throw std::invalid_argument("make_system: map dimension mismatch");
  StarDynamicalSystem sys{std::move(desc), std::move(omega), std::move(model),
                          std::move(generator_maps), std::nullopt};
  ValidationReport report =
      validate_system(sys, opts.tol, opts.samples, opts.seed, opts.ball_radius);
  for (auto& m : sys.generator_maps) {
    m.schwarz_checked = true;
    m.omega_isometric = report.omega_isometric;
  }
  sys.validation = std::move(report);
  return sys;
}

DynMap tau_at(const StarDynamicalSystem& system, const GroupElement& g) {
  if (!system.model.contains(g))
    throw std::invalid_argument("tau_at: element is not in the acting semigroup");
  const int d = system.descriptor.coord_dim();
  const auto slots = word_slots(system.model);
  const auto exps = word_exponents(system.model, g);
  DynMap out;
  out.mat = Mat::Identity(d, d);
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (exps[s] > 0) out.mat = out.mat * mat_pow(system.generator_maps[slots[s]].mat, exps[s]);
  out.unital = max_abs(out.mat * AlgebraElement::unit(system.descriptor).coords() -
                       AlgebraElement::unit(system.descriptor).coords()) <= 1e-10;
  return out;
}

ValidationReport validate_system(const StarDynamicalSystem& system, double tol, int samples,
                                 std::uint64_t seed, int ball_radius) {
  if (samples < 1) throw std::invalid_argument("validate_system: samples must be >= 1");
  const auto& desc = system.descriptor;
  const int d = desc.coord_dim();
  const Vec unit_coords = AlgebraElement::unit(desc).coords();

  const auto ball = word_ball(system.model, ball_radius);
  DetRng rng(seed);

  std::map<GroupElement, Mat> tau_cache;
  auto tau_of = [&](const GroupElement& g) -> const Mat& {
    auto it = tau_cache.find(g);
    if (it == tau_cache.end()) it = tau_cache.emplace(g, tau_at(system, g).mat).first;
    return it->second;
  };

  auto random_element = [&]() {
    std::vector<Mat> blocks;
    for (int n : desc.block_dims) {
      Mat m(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = rng.complex_gaussian();
      blocks.push_back(std::move(m));
    }
    return AlgebraElement(desc, std::move(blocks));
  };

  double worst_semigroup = 0.0, worst_unital = 0.0, worst_contraction = 0.0, worst_commute = 0.0;
  double worst_isometry = 0.0;

  // basis elements first, random elements after; both A-families see every
  // sampled group element
  std::vector<AlgebraElement> probes;
  for (int k = 0; k < d; ++k) probes.push_back(AlgebraElement::basis_element(desc, k));
  for (int k = 0; k < samples; ++k) probes.push_back(random_element());

  std::vector<GroupElement> sampled;
  for (int k = 0; k < samples; ++k)
    sampled.push_back(ball[static_cast<std::size_t>(rng.uniform_below(ball.size()))]);

  for (int k = 0; k < samples; ++k) {
    const GroupElement& g = ball[static_cast<std::size_t>(rng.uniform_below(ball.size()))];
    const GroupElement& h = ball[static_cast<std::size_t>(rng.uniform_below(ball.size()))];
    const Mat prod = tau_of(g) * tau_of(h);
    worst_semigroup = std::max(worst_semigroup, max_abs(prod - tau_of(compose(system.model, g, h))));
  }

  for (const auto& g : sampled)
    worst_unital = std::max(worst_unital, max_abs(tau_of(g) * unit_coords - unit_coords));
  for (const auto& m : system.generator_maps)
    worst_unital = std::max(worst_unital, max_abs(m.mat * unit_coords - unit_coords));

  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const Mat& t = tau_of(sampled[i]);
    // cycle through the probe pool
    const AlgebraElement& a = probes[i % probes.size()];
    const AlgebraElement& b = probes[(i * 7 + 3) % probes.size()];
    const AlgebraElement ta = apply_map(desc, t, a);
    const AlgebraElement tb = apply_map(desc, t, b);
    const double lhs = state_eval(system.omega, alg_mul(alg_star(ta), ta)).real();
    const double rhs = state_eval(system.omega, alg_mul(alg_star(a), a)).real();
    worst_contraction = std::max(worst_contraction, lhs - rhs);
    const Complex iso_lhs = state_eval(system.omega, alg_mul(alg_star(ta), tb));
    const Complex iso_rhs = state_eval(system.omega, alg_mul(alg_star(a), b));
    worst_isometry = std::max(worst_isometry, std::abs(iso_lhs - iso_rhs));
  }

  ValidationReport report;
  report.samples = samples;
  report.seed = seed;
  report.tol = tol;
  report.axioms.push_back({"semigroup_law", worst_semigroup <= tol, worst_semigroup});
  report.axioms.push_back({"unital", worst_unital <= tol, worst_unital});
  report.axioms.push_back({"contractivity", worst_contraction <= tol, std::max(0.0, worst_contraction)});
  if (system.model.abelian()) {
    const auto& maps = system.generator_maps;
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (std::size_t j = i + 1; j < maps.size(); ++j)
        worst_commute = std::max(worst_commute, max_abs(maps[i].mat * maps[j].mat - maps[j].mat * maps[i].mat));
    report.axioms.push_back({"generator_commutation", worst_commute <= tol, worst_commute});
  }
  report.omega_isometric = worst_isometry <= tol;
  report.isometry_residual = worst_isometry;
  return report;
}

}  // namespace ncrec
