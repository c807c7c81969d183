#include "ncrec/multirec.hpp"

#include <algorithm>
#include <stdexcept>

#include "ncrec/errors.hpp"

namespace ncrec {

AlgebraDescriptor tensor_descriptor(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  AlgebraDescriptor out;
  for (int na : a.block_dims)
    for (int nb : b.block_dims) out.block_dims.push_back(na * nb);
  return out;
}

AlgebraElement tensor_elements(const AlgebraElement& a, const AlgebraElement& b) {
  std::vector<Mat> blocks;
  for (const auto& ba : a.blocks())
    for (const auto& bb : b.blocks()) blocks.push_back(kron(ba, bb));
  return AlgebraElement(tensor_descriptor(a.descriptor(), b.descriptor()), std::move(blocks));
}

State tensor_states(const State& a, const State& b) {
  std::vector<Mat> blocks;
  for (const auto& ba : a.blocks())
    for (const auto& bb : b.blocks()) blocks.push_back(kron(ba, bb));
  return State::make(tensor_descriptor(a.descriptor(), b.descriptor()), std::move(blocks));
}

std::vector<std::vector<int>> tensor_coordinate_pairing(const AlgebraDescriptor& a,
                                                        const AlgebraDescriptor& b) {
  const AlgebraDescriptor prod = tensor_descriptor(a, b);
  const int q2 = static_cast<int>(b.block_dims.size());
  std::vector<std::vector<int>> pairing(a.coord_dim(), std::vector<int>(b.coord_dim(), 0));
  for (std::size_t ba = 0; ba < a.block_dims.size(); ++ba) {
    const int n = a.block_dims[ba];
    const int off_a = a.block_offset(static_cast<int>(ba));
    for (std::size_t bb = 0; bb < b.block_dims.size(); ++bb) {
      const int m = b.block_dims[bb];
      const int off_b = b.block_offset(static_cast<int>(bb));
      const int off_p = prod.block_offset(static_cast<int>(ba) * q2 + static_cast<int>(bb));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
              pairing[off_a + i * n + j][off_b + k * m + l] =
                  off_p + (i * m + k) * (n * m) + (j * m + l);
    }
  }
  return pairing;
}

namespace {

Mat tensor_superoperator(const AlgebraDescriptor& da, const Mat& ta, const AlgebraDescriptor& db,
                         const Mat& tb, const std::vector<std::vector<int>>& pairing) {
  const int d1 = da.coord_dim();
  const int d2 = db.coord_dim();
  Mat out = Mat::Zero(d1 * d2, d1 * d2);
  for (int c1p = 0; c1p < d1; ++c1p)
    for (int c1 = 0; c1 < d1; ++c1) {
      const Complex v1 = ta(c1p, c1);
      if (v1 == Complex(0.0, 0.0)) continue;
      for (int c2p = 0; c2p < d2; ++c2p)
        for (int c2 = 0; c2 < d2; ++c2) {
          const Complex v2 = tb(c2p, c2);
          if (v2 == Complex(0.0, 0.0)) continue;
          out(pairing[c1p][c2p], pairing[c1][c2]) = v1 * v2;
        }
    }
  return out;
}

void require_isometric(const StarDynamicalSystem& s, const char* op) {
  ValidationReport report = s.validation ? *s.validation : validate_system(s);
  if (!report.omega_isometric)
    throw PreconditionViolated(std::string(op) + ": factor system is not omega-isometric");
}

StarDynamicalSystem tensor_pair(const StarDynamicalSystem& s1, const StarDynamicalSystem& s2) {
  if (!s1.model.same_model(s2.model))
    throw std::invalid_argument("tensor_systems: factors act over different models");
  const auto pairing = tensor_coordinate_pairing(s1.descriptor, s2.descriptor);
  std::vector<DynMap> maps;
  for (std::size_t i = 0; i < s1.generator_maps.size(); ++i) {
    DynMap m;
    m.mat = tensor_superoperator(s1.descriptor, s1.generator_maps[i].mat, s2.descriptor,
                                 s2.generator_maps[i].mat, pairing);
    maps.push_back(std::move(m));
  }
  return make_system(tensor_descriptor(s1.descriptor, s2.descriptor),
                     tensor_states(s1.omega, s2.omega), s1.model, std::move(maps));
}

}  // namespace

StarDynamicalSystem tensor_systems(const std::vector<StarDynamicalSystem>& systems) {
  if (systems.empty()) throw std::invalid_argument("tensor_systems: no factors");
  for (const auto& s : systems) require_isometric(s, "tensor_systems");
  StarDynamicalSystem acc = systems.front();
  for (std::size_t i = 1; i < systems.size(); ++i) acc = tensor_pair(acc, systems[i]);
  return acc;
}

StarDynamicalSystem endo_pullback(const StarDynamicalSystem& system, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("endo_pullback: exponent must be >= 1");
  if (!system.model.abelian())
    throw std::invalid_argument("endo_pullback: power maps are endomorphisms only on abelian models");
  std::vector<DynMap> maps;
  for (const auto& gen : system.model.generators())
    maps.push_back(tau_at(system, power(system.model, gen, n)));
  return make_system(system.descriptor, system.omega, system.model, std::move(maps));
}

namespace {

// Joint eigenbasis of a family of commuting unitaries: eigh of a generic
// hermitian combination, retrying with fresh coefficients until every input
// is diagonal in the candidate basis.
std::pair<Mat, Mat> joint_unitary_eigenbasis(const std::vector<Mat>& unitaries) {
  const Eigen::Index h = unitaries.front().rows();
  const Eigen::Index k = static_cast<Eigen::Index>(unitaries.size());
  for (const auto& u : unitaries)
    if (max_abs(u.adjoint() * u - Mat::Identity(h, h)) > 1e-8)
      throw InconsistentDynamics("joint_unitary_eigenbasis: operator is not unitary");

  DetRng rng(0x6a77);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat m = Mat::Zero(h, h);
    for (const auto& u : unitaries) {
      m += rng.gaussian() * Mat((u + u.adjoint()) / 2.0);
      m += rng.gaussian() * Mat((u - u.adjoint()) / Complex(0.0, 2.0));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Mat& w = es.eigenvectors();
    Mat evals(h, k);
    bool ok = true;
    for (Eigen::Index i = 0; i < k && ok; ++i) {
      const Mat d = w.adjoint() * unitaries[i] * w;
      if (max_abs(d - Mat(d.diagonal().asDiagonal())) > 1e-8) ok = false;
      evals.col(i) = d.diagonal();
    }
    if (ok) return {w, evals};
  }
  throw InconsistentDynamics("joint_unitary_eigenbasis: failed to split the commuting family");
}

// (1/s) sum_{e<s} mu^e, stable near mu = 1.
Complex geometric_average(Complex mu, std::int64_t s) {
  if (s <= 1) return 1.0;
  if (std::abs(mu - 1.0) < 1e-8) {
    KahanComplexSum acc;
    Complex cur = 1.0;
    acc.add(cur);
    for (std::int64_t e = 1; e < s; ++e) {
      cur *= mu;
      acc.add(cur);
    }
    return acc.value() / static_cast<double>(s);
  }
  return (std::pow(mu, static_cast<double>(s)) - 1.0) / ((mu - 1.0) * static_cast<double>(s));
}

}  // namespace

MultiRecurrenceReport multiple_recurrence_search(const StarDynamicalSystem& system,
                                                 const AlgebraElement& a,
                                                 const std::vector<std::int64_t>& exponents,
                                                 double eps, const FolnerNet& net,
                                                 std::span<const GroupElement> h_set) {
  if (!(eps > 0.0)) throw std::invalid_argument("multiple_recurrence_search: eps must be positive");
  if (exponents.empty()) throw std::invalid_argument("multiple_recurrence_search: q must be >= 1");
  for (auto n : exponents)
    if (n < 1) throw std::invalid_argument("multiple_recurrence_search: exponents must be >= 1");
  if (!system.model.abelian())
    throw std::invalid_argument("multiple_recurrence_search: model must be abelian");
  if (h_set.empty()) throw std::invalid_argument("multiple_recurrence_search: empty h_set");
  for (const auto& h : h_set)
    if (!system.model.contains(h))
      throw std::invalid_argument("multiple_recurrence_search: h outside the acting semigroup");
  require_isometric(system, "multiple_recurrence_search");

  const int q = static_cast<int>(exponents.size());
  const SemigroupModel& model = system.model;
  GnsRep rep = gns_lift(gns_build(system.descriptor, system.omega), system);
  const Eigen::Index hdim = rep.hdim;

  double tuple_count = 1.0;
  for (int j = 0; j < q; ++j) tuple_count *= static_cast<double>(hdim);
  if (tuple_count > 2e6)
    throw std::invalid_argument("multiple_recurrence_search: product space too large");
  const std::int64_t tuples = static_cast<std::int64_t>(tuple_count);

  const auto [basis, evals] = joint_unitary_eigenbasis(rep.u_generators);
  const HVector y = iota(rep, a);
  const Vec d_coeff = basis.adjoint() * y;  // coefficients of iota(A) in the joint basis

  const auto slots = word_slots(model);
  const Eigen::Index ngen = static_cast<Eigen::Index>(rep.u_generators.size());

  auto tuple_digits = [&](std::int64_t t) {
    std::vector<Eigen::Index> ks(q);
    for (int j = q - 1; j >= 0; --j) {
      ks[j] = t % hdim;
      t /= hdim;
    }
    return ks;
  };

  // per-tuple data: product coefficient, fixedness, per-generator eigenvalue
  std::vector<Complex> coeff(tuples);
  std::vector<bool> fixed(tuples);
  Eigen::MatrixXcd tuple_eval(tuples, ngen);
  for (std::int64_t t = 0; t < tuples; ++t) {
    const auto ks = tuple_digits(t);
    Complex c = 1.0;
    for (int j = 0; j < q; ++j) c *= d_coeff[ks[j]];
    coeff[t] = c;
    bool fix = true;
    for (Eigen::Index i = 0; i < ngen; ++i) {
      Complex mu = 1.0;
      for (int j = 0; j < q; ++j)
        mu *= std::pow(evals(ks[j], i), static_cast<double>(exponents[j]));
      tuple_eval(t, i) = mu;
      if (std::abs(mu - 1.0) > 1e-7) fix = false;
    }
    fixed[t] = fix;
  }

  MultiRecurrenceReport report;
  report.q = q;
  report.exponents = exponents;
  report.epsilon = eps;

  const Complex omega_a = state_eval(system.omega, a);
  report.lower_bound = std::pow(std::abs(omega_a), 2.0 * q) - eps;

  KahanSum limit_acc;
  for (std::int64_t t = 0; t < tuples; ++t)
    if (fixed[t]) limit_acc.add(std::norm(coeff[t]));
  report.limit_value = limit_acc.value();  // <x_prod, P x_prod> >= |omega(A)|^{2q}

  // alpha0 in the (implicit) product space, spectrally per tuple
  const double x_prod_norm = std::pow(y.norm(), q);
  const double threshold = eps / (x_prod_norm + 1.0);
  const FolnerEntry* window = nullptr;
  for (std::size_t i = 0; i < net.entries().size(); ++i) {
    const auto& entry = net.entries()[i];
    KahanSum res2;
    for (std::int64_t t = 0; t < tuples; ++t) {
      Complex g = 1.0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        g *= geometric_average(tuple_eval(t, slots[s]), entry.slot_sides[s]);
      const Complex target = fixed[t] ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      res2.add(std::norm(coeff[t]) * std::norm(g - target));
    }
    const double residual = std::sqrt(std::max(0.0, res2.value()));
    if (residual < threshold) {
      report.alpha0_index = static_cast<int>(i);
      report.alpha0_n = entry.n;
      report.alpha0_size = entry.size();
      report.alpha0_residual = residual;
      window = &entry;
      break;
    }
  }
  if (window == nullptr)
    throw NetExhausted("multiple_recurrence_search: no schedule entry reaches residual < " +
                       std::to_string(threshold) + "; extend the net schedule");

  std::vector<GroupElement> hs(h_set.begin(), h_set.end());
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  // factor streams: value_j(lambda, h) = <U_{lambda^{n_j}}^* x, U_{h^{n_j}} y>
  const auto base_steps = u_slot_steps(rep, model);
  std::vector<std::vector<std::int64_t>> exps;
  exps.reserve(window->elements.size());
  for (const auto& g : window->elements) exps.push_back(word_exponents(model, g));

  const std::size_t nl = window->elements.size();
  std::vector<std::vector<std::vector<Complex>>> factor_vals(
      q, std::vector<std::vector<Complex>>(hs.size(), std::vector<Complex>(nl)));
  std::vector<std::vector<std::int64_t>> h_exps;
  h_exps.reserve(hs.size());
  for (const auto& h : hs) h_exps.push_back(word_exponents(model, h));
  for (int j = 0; j < q; ++j) {
    std::vector<Mat> steps;
    for (const auto& s : base_steps) steps.push_back(mat_pow(s, exponents[j]));
    std::vector<HVector> yh(hs.size());
    stream_word_apply(steps, h_exps, y, [&](std::size_t hi, const Mat& v) { yh[hi] = v; });
    stream_word_apply_adjoint(steps, exps, y, [&](std::size_t idx, const Mat& w) {
      for (std::size_t hi = 0; hi < hs.size(); ++hi)
        factor_vals[j][hi][idx] = (w.adjoint() * yh[hi])(0, 0);
    });
  }

  report.all_pass = true;
  report.cor43_applicable = std::abs(omega_a.imag()) <= 1e-12 && omega_a.real() > 0.0 &&
                            eps < std::pow(std::abs(omega_a), 2.0 * q);
  report.cor43_all_pass = report.cor43_applicable;
  for (std::size_t hi = 0; hi < hs.size(); ++hi) {
    MultiRecord rec;
    rec.h = hs[hi];
    KahanComplexSum avg;
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t idx = 0; idx < nl; ++idx) {
      Complex prod = 1.0;
      for (int j = 0; j < q; ++j) prod *= factor_vals[j][hi][idx];
      avg.add(prod);
      const double mod = std::abs(prod);
      const GroupElement g = compose(model, window->elements[idx], hs[hi]);
      if (best < 0.0 || mod > best ||
          (mod == best && g < compose(model, window->elements[best_idx], hs[hi]))) {
        best = mod;
        best_idx = idx;
      }
    }
    rec.window_average = avg.value() / static_cast<double>(nl);
    rec.witness = compose(model, window->elements[best_idx], hs[hi]);
    rec.product_modulus = best;
    for (int j = 0; j < q; ++j) {
      rec.factor_values.push_back(factor_vals[j][hi][best_idx]);
      const GroupElement gj = power(model, rec.witness, exponents[j]);
      const DynMap tau = tau_at(system, gj);
      rec.factor_algebra_values.push_back(state_eval(
          system.omega, alg_mul(alg_star(a), apply_map(system.descriptor, tau.mat, a))));
    }
    report.all_pass = report.all_pass && rec.product_modulus > report.lower_bound &&
                      std::abs(rec.window_average) > report.limit_value - eps;
    if (report.cor43_applicable)
      for (const auto& v : rec.factor_values)
        report.cor43_all_pass = report.cor43_all_pass && std::abs(v) > 0.0;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace ncrec
