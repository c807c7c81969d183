#include "ncrec/gns.hpp"

#include <stdexcept>

#include "ncrec/errors.hpp"

namespace ncrec {

GnsRep gns_build(const AlgebraDescriptor& desc, const State& omega, double rank_tol) {
  if (omega.descriptor() != desc) throw std::invalid_argument("gns_build: state shape mismatch");
  if (!(rank_tol > 0.0 && rank_tol < 1.0))
    throw std::invalid_argument("gns_build: rank_tol must be in (0, 1)");

  const int d = desc.coord_dim();
  GnsRep rep;
  rep.descriptor = desc;
  rep.rank_tol = rank_tol;
  rep.gram = Mat::Zero(d, d);

  // omega(E_{rc}* E_{r'c'}) = delta_{r,r'} rho[c', c] within each block, so
  // the Gram matrix is block-diagonal with blocks I_n (x) rho^T.
  for (std::size_t b = 0; b < desc.block_dims.size(); ++b) {
    const int n = desc.block_dims[b];
    const int off = desc.block_offset(static_cast<int>(b));
    const Mat rho_t = omega.blocks()[b].transpose();
    for (int r = 0; r < n; ++r)
      rep.gram.block(off + r * n, off + r * n, n, n) = rho_t;
  }

  Eigen::SelfAdjointEigenSolver<Mat> es((rep.gram + rep.gram.adjoint()) / 2.0);
  const Eigen::VectorXd evals = es.eigenvalues();  // ascending
  const double lambda_max = evals.maxCoeff();
  const double cut = rank_tol * lambda_max;

  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] > cut) ++kept;
  rep.hdim = kept;

  rep.iota_matrix = Mat(kept, d);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals[i] <= cut) continue;
    rep.iota_matrix.row(row++) = std::sqrt(evals[i]) * es.eigenvectors().col(i).adjoint();
  }
  rep.omega_vec = rep.iota_matrix * AlgebraElement::unit(desc).coords();
  return rep;
}

GnsRep gns_lift(const GnsRep& rep, const StarDynamicalSystem& system) {
  if (system.descriptor != rep.descriptor)
    throw std::invalid_argument("gns_lift: representation was built for another algebra");
  GnsRep out = rep;
  out.u_generators.clear();
  out.lift_residuals.clear();
  out.u_norms.clear();

  // min over U of ||U iota - iota T||_F, i.e. least squares against the
  // image of every coordinate basis element at once.
  const Mat iota_adj = rep.iota_matrix.adjoint();
  Eigen::ColPivHouseholderQR<Mat> qr(iota_adj);
  for (const auto& gen : system.generator_maps) {
    const Mat rhs = rep.iota_matrix * gen.mat;
    const Mat u = qr.solve(rhs.adjoint()).adjoint();
    const double residual = max_abs(u * rep.iota_matrix - rhs);
    if (residual > 1e-8)
      throw InconsistentDynamics(
          "gns_lift: generator map does not descend to the GNS quotient (residual " +
          std::to_string(residual) + ")");
    const double norm = operator_norm(u);
    if (norm > 1.0 + 1e-9)
      throw InconsistentDynamics("gns_lift: lifted operator has norm " + std::to_string(norm) +
                                 " > 1; dynamics is not contractive for this state");
    out.u_generators.push_back(u);
    out.lift_residuals.push_back(residual);
    out.u_norms.push_back(norm);
  }
  return out;
}

HVector iota(const GnsRep& rep, const AlgebraElement& a) {
  if (a.descriptor() != rep.descriptor) throw std::invalid_argument("iota: shape mismatch");
  return rep.iota_matrix * a.coords();
}

Complex gns_inner(const HVector& x, const HVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("gns_inner: dimension mismatch");
  return (x.adjoint() * y)(0, 0);
}

Mat u_at(const GnsRep& rep, const SemigroupModel& model, const GroupElement& g) {
  if (rep.u_generators.empty()) throw std::invalid_argument("u_at: representation has no lift");
  if (!model.contains(g)) throw std::invalid_argument("u_at: element is not in the acting semigroup");
  const auto slots = word_slots(model);
  const auto exps = word_exponents(model, g);
  Mat u = Mat::Identity(rep.hdim, rep.hdim);
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (exps[s] > 0) u = u * mat_pow(rep.u_generators[slots[s]], exps[s]);
  return u;
}

}  // namespace ncrec
