#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncrec/algebra.hpp"
#include "ncrec/semigroup.hpp"

namespace ncrec {

// Linear map on the algebra, stored as a D x D matrix on coordinate vectors.
struct DynMap {
  Mat mat;
  bool unital = false;
  bool schwarz_checked = false;
  bool omega_isometric = false;
};

// Builds the superoperator column by column from an action on elements.
DynMap map_from_action(const AlgebraDescriptor& desc,
                       const std::function<AlgebraElement(const AlgebraElement&)>& action);

// (tau f)(x) = f(T(x)) on the m-point commutative algebra, m = T.size().
DynMap koopman_from_map(const std::vector<int>& point_map);

// tau(A) = V* A V blockwise; V must be unitary per block within 1e-10.
DynMap conjugation_from_unitary(const AlgebraDescriptor& desc, const std::vector<Mat>& v_blocks);

AlgebraElement apply_map(const AlgebraDescriptor& desc, const Mat& map, const AlgebraElement& a);

struct AxiomCheck {
  std::string name;
  bool pass = false;
  double worst_residual = 0.0;
};

struct ValidationReport {
  std::vector<AxiomCheck> axioms;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool omega_isometric = false;
  double isometry_residual = 0.0;

  bool all_pass() const {
    for (const auto& a : axioms)
      if (!a.pass) return false;
    return true;
  }
};

// (algebra, state, acting semigroup, generator superoperators).  The action
// at a general element is reconstructed by tau_at from the generator images
// through the fixed word order of the model.
struct StarDynamicalSystem {
  AlgebraDescriptor descriptor;
  State omega;
  SemigroupModel model;
  std::vector<DynMap> generator_maps;
  std::optional<ValidationReport> validation;
};

struct ValidationOptions {
  double tol = 1e-10;
  int samples = 32;
  std::uint64_t seed = 1;
  int ball_radius = 3;
};

StarDynamicalSystem make_system(AlgebraDescriptor desc, State omega, SemigroupModel model,
                                std::vector<DynMap> generator_maps,
                                const ValidationOptions& opts = {});

DynMap tau_at(const StarDynamicalSystem& system, const GroupElement& g);

ValidationReport validate_system(const StarDynamicalSystem& system, double tol = 1e-10,
                                 int samples = 32, std::uint64_t seed = 1, int ball_radius = 3);

}  // namespace ncrec
