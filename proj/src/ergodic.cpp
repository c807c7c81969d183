#include "ncrec/ergodic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ncrec/errors.hpp"

namespace ncrec {

void stream_word_apply(const std::vector<Mat>& step_mats,
                       const std::vector<std::vector<std::int64_t>>& exps, const Mat& rhs,
                       const std::function<void(std::size_t, const Mat&)>& visit) {
  const std::size_t r = step_mats.size();
  if (r == 0) {
    for (std::size_t i = 0; i < exps.size(); ++i) visit(i, rhs);
    return;
  }
  std::vector<std::size_t> order(exps.size());
  std::iota(order.begin(), order.end(), 0);
  // last-applied slot varies slowest, so consecutive elements share suffixes
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t j = r; j-- > 0;) {
      if (exps[a][j] != exps[b][j]) return exps[a][j] < exps[b][j];
    }
    return a < b;
  });

  std::vector<Mat> partial(r + 1);
  partial[r] = rhs;
  std::vector<std::int64_t> cur(r, -1);
  for (std::size_t idx : order) {
    const auto& e = exps[idx];
    std::size_t jc = r;  // highest slot whose exponent changed
    for (std::size_t j = r; j-- > 0;) {
      if (e[j] != cur[j]) {
        jc = j;
        break;
      }
    }
    if (jc != r) {
      if (cur[jc] >= 0 && e[jc] > cur[jc])
        partial[jc] = apply_power(step_mats[jc], e[jc] - cur[jc], partial[jc]);
      else
        partial[jc] = apply_power(step_mats[jc], e[jc], partial[jc + 1]);
      for (std::size_t j = jc; j-- > 0;) partial[j] = apply_power(step_mats[j], e[j], partial[j + 1]);
      cur = e;
    }
    visit(idx, partial[0]);
  }
}

void stream_word_apply_adjoint(const std::vector<Mat>& step_mats,
                               const std::vector<std::vector<std::int64_t>>& exps, const Mat& rhs,
                               const std::function<void(std::size_t, const Mat&)>& visit) {
  const std::size_t r = step_mats.size();
  std::vector<Mat> rev_steps(r);
  for (std::size_t j = 0; j < r; ++j) rev_steps[j] = step_mats[r - 1 - j].adjoint();
  std::vector<std::vector<std::int64_t>> rev_exps(exps.size(), std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) rev_exps[i][j] = exps[i][r - 1 - j];
  stream_word_apply(rev_steps, rev_exps, rhs, visit);
}

Mat box_average_apply(const std::vector<Mat>& step_mats, std::span<const std::int64_t> sides,
                      Mat rhs) {
  if (step_mats.size() != sides.size())
    throw std::invalid_argument("box_average_apply: sides/steps mismatch");
  for (std::size_t j = step_mats.size(); j-- > 0;) {
    const std::int64_t s = sides[j];
    if (s <= 1) continue;
    KahanMatrixSum acc(rhs.rows(), rhs.cols());
    Mat cur = rhs;
    acc.add(cur);
    for (std::int64_t k = 1; k < s; ++k) {
      cur = step_mats[j] * cur;
      acc.add(cur);
    }
    rhs = acc.value() / static_cast<double>(s);
  }
  return rhs;
}

std::vector<Mat> u_slot_steps(const GnsRep& rep, const SemigroupModel& model) {
  if (rep.u_generators.empty())
    throw std::invalid_argument("u_slot_steps: representation has no lift");
  std::vector<Mat> steps;
  for (int gen : word_slots(model)) steps.push_back(rep.u_generators[gen]);
  return steps;
}

namespace {

std::vector<std::vector<std::int64_t>> element_exponents(const SemigroupModel& model,
                                                         std::span<const GroupElement> elements) {
  std::vector<std::vector<std::int64_t>> exps;
  exps.reserve(elements.size());
  for (const auto& g : elements) {
    if (!model.contains(g))
      throw std::invalid_argument("averaging set contains an element outside the semigroup");
    exps.push_back(word_exponents(model, g));
  }
  return exps;
}

}  // namespace

HVector ergodic_avg(const GnsRep& rep, const SemigroupModel& model, const HVector& x,
                    std::span<const GroupElement> elements) {
  if (elements.empty()) throw std::invalid_argument("ergodic_avg: empty set");
  const auto steps = u_slot_steps(rep, model);
  const auto exps = element_exponents(model, elements);
  KahanMatrixSum acc(x.size(), 1);
  stream_word_apply(steps, exps, x, [&](std::size_t, const Mat& v) { acc.add(v); });
  return acc.value() / static_cast<double>(elements.size());
}

FixedProjection fixed_projection(const GnsRep& rep) {
  if (rep.u_generators.empty())
    throw std::invalid_argument("fixed_projection: representation has no lift");
  const Eigen::Index h = rep.hdim;
  const Eigen::Index k = static_cast<Eigen::Index>(rep.u_generators.size());
  Mat stacked(k * h, h);
  for (Eigen::Index i = 0; i < k; ++i)
    stacked.middleRows(i * h, h) = rep.u_generators[i] - Mat::Identity(h, h);

  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();  // descending
  Eigen::Index rank_null = 0;
  for (Eigen::Index i = sv.size(); i-- > 0;) {
    if (sv[i] <= 1e-9)
      ++rank_null;
    else
      break;
  }
  FixedProjection p;
  p.rank = rank_null;
  p.basis = svd.matrixV().rightCols(rank_null);
  p.matrix = p.basis * p.basis.adjoint();
  return p;
}

ConvergenceSeries convergence_profile(const GnsRep& rep, const SemigroupModel& model,
                                      const HVector& x, const FolnerNet& net) {
  if (net.entries().empty()) throw std::invalid_argument("convergence_profile: empty net");
  const auto steps = u_slot_steps(rep, model);
  const FixedProjection p = fixed_projection(rep);
  const HVector px = p.matrix * x;
  ConvergenceSeries series;
  for (const auto& entry : net.entries()) {
    const Mat avg = box_average_apply(steps, entry.slot_sides, x);
    series.push_back({entry.n, entry.size(), (avg - px).norm()});
  }
  return series;
}

namespace {

struct WitnessTracker {
  double best = -1.0;
  Complex best_value{0.0, 0.0};
  GroupElement witness;
  bool any = false;

  void offer(double mod, Complex value, const GroupElement& g) {
    if (!any || mod > best || (mod == best && g < witness)) {
      best = mod;
      best_value = value;
      witness = g;
      any = true;
    }
  }
};

}  // namespace

RecurrenceReport khintchine_window(const GnsRep& rep, const SemigroupModel& model,
                                   const HVector& x, const HVector& y, double eps,
                                   const FolnerNet& net, std::span<const GroupElement> h_set,
                                   Side side) {
  if (!(eps > 0.0)) throw std::invalid_argument("khintchine_window: eps must be positive");
  if (side == Side::right && !model.abelian())
    throw std::invalid_argument("khintchine_window: right translates need an abelian model");
  if (h_set.empty()) throw std::invalid_argument("khintchine_window: empty h_set");
  for (const auto& h : h_set)
    if (!model.contains(h))
      throw std::invalid_argument("khintchine_window: h outside the acting semigroup");

  const auto steps = u_slot_steps(rep, model);
  const FixedProjection proj = fixed_projection(rep);
  const HVector py = proj.matrix * y;

  RecurrenceReport report;
  report.epsilon = eps;
  report.side = side;
  report.lower_bound = std::abs(gns_inner(x, py));

  // alpha0: first schedule entry meeting the sufficient criterion, which is
  // uniform over h.
  const double threshold = eps / (x.norm() + 1.0);
  const FolnerEntry* window = nullptr;
  for (std::size_t i = 0; i < net.entries().size(); ++i) {
    const auto& entry = net.entries()[i];
    const Mat avg = box_average_apply(steps, entry.slot_sides, y);
    const double residual = (avg - py).norm();
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
    throw NetExhausted("khintchine_window: no schedule entry reaches residual < " +
                       std::to_string(threshold) + "; extend the net schedule");

  std::vector<GroupElement> hs(h_set.begin(), h_set.end());
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  // Window sums never enumerate the translated sets: U_{gh} = U_g U_h moves
  // the h factor onto the fixed vectors, so a single sweep over Lambda serves
  // every h.
  //   right: <x, U_{lambda h} y> = <U_lambda^* x, U_h y>
  //   left:  <x, U_{h lambda} y> = <U_h^* x, U_lambda y>
  std::vector<HVector> h_vecs(hs.size());
  {
    std::vector<std::vector<std::int64_t>> h_exps;
    h_exps.reserve(hs.size());
    for (const auto& h : hs) h_exps.push_back(word_exponents(model, h));
    auto grab = [&](std::size_t i, const Mat& v) { h_vecs[i] = v; };
    if (side == Side::right)
      stream_word_apply(steps, h_exps, y, grab);
    else
      stream_word_apply_adjoint(steps, h_exps, x, grab);
  }

  const auto exps = element_exponents(model, window->elements);
  std::vector<KahanComplexSum> sums(hs.size());
  std::vector<WitnessTracker> trackers(hs.size());

  auto scan = [&](std::size_t idx, const Mat& streamed) {
    const GroupElement& lambda = window->elements[idx];
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      Complex value;
      if (side == Side::right)
        value = (streamed.adjoint() * h_vecs[hi])(0, 0);  // streamed = U_lambda^* x
      else
        value = (h_vecs[hi].adjoint() * streamed)(0, 0);  // streamed = U_lambda y
      sums[hi].add(value);
      const GroupElement witness = side == Side::right ? compose(model, lambda, hs[hi])
                                                       : compose(model, hs[hi], lambda);
      trackers[hi].offer(std::abs(value), value, witness);
    }
  };
  if (side == Side::right)
    stream_word_apply_adjoint(steps, exps, x, scan);
  else
    stream_word_apply(steps, exps, y, scan);

  report.all_pass = true;
  const double mu = static_cast<double>(window->elements.size());
  for (std::size_t hi = 0; hi < hs.size(); ++hi) {
    RecurrenceRecord rec;
    rec.h = hs[hi];
    rec.window_average = sums[hi].value() / mu;
    rec.witness = trackers[hi].witness;
    rec.attained = trackers[hi].best;
    report.all_pass = report.all_pass && std::abs(rec.window_average) > report.lower_bound - eps;
    report.records.push_back(std::move(rec));
  }
  return report;
}

namespace {

bool same_element(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.descriptor() != b.descriptor()) return false;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    if (a.block(static_cast<int>(i)) != b.block(static_cast<int>(i))) return false;
  return true;
}

void attach_algebra_values(const StarDynamicalSystem& system, const AlgebraElement& left,
                           const AlgebraElement& right, RecurrenceReport& report) {
  std::map<GroupElement, Complex> memo;  // windows often share witnesses
  for (auto& rec : report.records) {
    auto it = memo.find(rec.witness);
    if (it == memo.end()) {
      const DynMap tau = tau_at(system, rec.witness);
      const Complex value = state_eval(
          system.omega, alg_mul(left, apply_map(system.descriptor, tau.mat, right)));
      it = memo.emplace(rec.witness, value).first;
    }
    rec.algebra_value = it->second;
    rec.has_algebra_value = true;
  }
}

}  // namespace

RecurrenceReport khintchine_recurrence(const StarDynamicalSystem& system, const GnsRep& rep,
                                       const AlgebraElement& a, const AlgebraElement& b,
                                       double eps, const FolnerNet& net,
                                       std::span<const GroupElement> h_set, Side side) {
  const HVector x = iota(rep, a);
  const HVector y = iota(rep, b);
  RecurrenceReport report = khintchine_window(rep, system.model, x, y, eps, net, h_set, side);
  attach_algebra_values(system, alg_star(a), b, report);
  if (same_element(a, b)) {
    report.corollary_checked = true;
    const double wa = std::abs(state_eval(system.omega, a));
    report.corollary_bound = wa * wa;
    report.corollary_all_pass = true;
    for (const auto& rec : report.records)
      report.corollary_all_pass =
          report.corollary_all_pass && rec.attained > report.corollary_bound - eps;
  }
  return report;
}

ErgodicityReport is_ergodic(const GnsRep& rep, double tol) {
  const FixedProjection p = fixed_projection(rep);
  ErgodicityReport report;
  report.rank = p.rank;
  report.deviation = max_abs(p.matrix - rep.omega_vec * rep.omega_vec.adjoint());
  report.ergodic = (p.rank == 1) && report.deviation <= tol;
  return report;
}

RecurrenceReport ergodic_bound_report(const StarDynamicalSystem& system, const GnsRep& rep,
                                      const AlgebraElement& a, const AlgebraElement& b, double eps,
                                      const FolnerNet& net, std::span<const GroupElement> h_set,
                                      Side side) {
  const ErgodicityReport erg = is_ergodic(rep);
  if (!erg.ergodic)
    throw PreconditionViolated("ergodic_bound_report: system is not ergodic (rank " +
                               std::to_string(erg.rank) + ")");
  const HVector x = iota(rep, alg_star(a));
  const HVector y = iota(rep, b);
  RecurrenceReport report = khintchine_window(rep, system.model, x, y, eps, net, h_set, side);
  // for ergodic systems <iota(A*), P iota(B)> = omega(A) omega(B)
  report.lower_bound = std::abs(state_eval(system.omega, a) * state_eval(system.omega, b));
  report.all_pass = true;
  for (const auto& rec : report.records)
    report.all_pass =
        report.all_pass && std::abs(rec.window_average) > report.lower_bound - eps;
  attach_algebra_values(system, a, b, report);
  return report;
}

}  // namespace ncrec
