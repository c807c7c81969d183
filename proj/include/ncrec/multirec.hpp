#pragma once

#include "ncrec/ergodic.hpp"

namespace ncrec {

// phi(g) = g^n, the built-in endomorphism family (abelian models).
struct Endomorphism {
  std::int64_t exponent = 1;
};

AlgebraDescriptor tensor_descriptor(const AlgebraDescriptor& a, const AlgebraDescriptor& b);
AlgebraElement tensor_elements(const AlgebraElement& a, const AlgebraElement& b);
State tensor_states(const State& a, const State& b);

// Coordinate index of the pair (c1, c2) inside the tensor descriptor.
// Blocks are paired left-factor major; within a product block the row-major
// flattening of the Kronecker product is used, so the table is a permutation
// of the plain index pair.
std::vector<std::vector<int>> tensor_coordinate_pairing(const AlgebraDescriptor& a,
                                                        const AlgebraDescriptor& b);

// Product system: kron descriptors, states and generator superoperators over
// a shared model.  Every factor must be omega-isometric (the product state is
// only compatible with the product dynamics in that case); the result carries
// a fresh validation report.
StarDynamicalSystem tensor_systems(const std::vector<StarDynamicalSystem>& systems);

// System with generators tau(gen^n); requires an abelian model so that
// g -> g^n is an endomorphism.
StarDynamicalSystem endo_pullback(const StarDynamicalSystem& system, std::int64_t n);

struct MultiRecord {
  GroupElement h;
  Complex window_average{0.0, 0.0};  // of the product of factor values
  GroupElement witness;
  double product_modulus = 0.0;
  std::vector<Complex> factor_values;          // <x, U_{g^{n_j}} y> at the witness
  std::vector<Complex> factor_algebra_values;  // omega(A* tau_{g^{n_j}}(A)) at the witness
};

struct MultiRecurrenceReport {
  int q = 0;
  std::vector<std::int64_t> exponents;
  double epsilon = 0.0;
  int alpha0_index = -1;
  std::int64_t alpha0_n = 0;
  std::int64_t alpha0_size = 0;
  double alpha0_residual = 0.0;
  double lower_bound = 0.0;  // |omega(A)|^{2q} - epsilon
  double limit_value = 0.0;  // |<x_prod, P_prod x_prod>|
  bool all_pass = false;
  bool cor43_applicable = false;
  bool cor43_all_pass = false;
  std::vector<MultiRecord> records;
};

// Searches windows for g with prod_j |omega(A* tau_{g^{n_j}}(A))| above
// |omega(A)|^{2q} - eps.  The product system is never materialized: factor
// values are evaluated in the factor GNS space and the product fixed space
// is resolved through the joint eigenbasis of the (unitary, commuting)
// lifted generators, which the isometry precondition guarantees.
MultiRecurrenceReport multiple_recurrence_search(const StarDynamicalSystem& system,
                                                 const AlgebraElement& a,
                                                 const std::vector<std::int64_t>& exponents,
                                                 double eps, const FolnerNet& net,
                                                 std::span<const GroupElement> h_set);

}  // namespace ncrec
