#pragma once

#include <vector>

#include "ncrec/dynamics.hpp"

namespace ncrec {

using HVector = Vec;

// Numerical GNS data for (algebra, state): the Gram matrix of the coordinate
// basis, the induced map iota with <iota(A), iota(B)> = omega(A* B), the
// cyclic vector Omega = iota(1), and (after gns_lift) one contraction per
// semigroup generator implementing the dynamics on the hdim-dimensional
// coordinate space.  Null directions of the Gram matrix (states need not be
// faithful) are quotiented away by the rank cut.
struct GnsRep {
  AlgebraDescriptor descriptor;
  Mat gram;                         // D x D
  Eigen::Index hdim = 0;            // numerical rank of gram
  Mat iota_matrix;                  // hdim x D
  HVector omega_vec;                // iota(1)
  double rank_tol = 0.0;
  std::vector<Mat> u_generators;    // filled by gns_lift
  std::vector<double> lift_residuals;
  std::vector<double> u_norms;
};

// Rank decision: keep Gram eigenpairs with lambda > rank_tol * lambda_max.
GnsRep gns_build(const AlgebraDescriptor& desc, const State& omega, double rank_tol = 1e-10);

// Pushes each generator superoperator through iota by least squares over the
// full coordinate basis.  Throws InconsistentDynamics if the residual exceeds
// 1e-8 (the map does not descend to the quotient) or if a lifted operator
// exceeds norm 1 + 1e-9 (the dynamics is not a contraction for this state).
GnsRep gns_lift(const GnsRep& rep, const StarDynamicalSystem& system);

HVector iota(const GnsRep& rep, const AlgebraElement& a);

// Conjugate-linear in x, linear in y.
Complex gns_inner(const HVector& x, const HVector& y);

// U at a general semigroup element, via the word order of the model.
Mat u_at(const GnsRep& rep, const SemigroupModel& model, const GroupElement& g);

}  // namespace ncrec
