#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ncrec/numerics.hpp"

namespace ncrec {

// Finite-dimensional *-algebra presented as a direct sum of full matrix
// blocks.  The commutative case is the all-ones block list.  Elements are
// identified with coordinate vectors of length D = sum n_i^2 by flattening
// each block row-major and concatenating blocks in order; every superoperator
// in this library acts on that coordinate layout.
struct AlgebraDescriptor {
  std::vector<int> block_dims;

  int coord_dim() const {
    int d = 0;
    for (int n : block_dims) d += n * n;
    return d;
  }
  int matrix_dim() const {
    int d = 0;
    for (int n : block_dims) d += n;
    return d;
  }
  int block_offset(int b) const {
    int off = 0;
    for (int i = 0; i < b; ++i) off += block_dims[i] * block_dims[i];
    return off;
  }
  bool commutative() const {
    for (int n : block_dims)
      if (n != 1) return false;
    return true;
  }
  static AlgebraDescriptor commutative_points(int m) {
    return AlgebraDescriptor{std::vector<int>(m, 1)};
  }

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

class AlgebraElement {
 public:
  AlgebraElement(AlgebraDescriptor desc, std::vector<Mat> blocks);

  static AlgebraElement zero(const AlgebraDescriptor& desc);
  static AlgebraElement unit(const AlgebraDescriptor& desc);
  // k-th coordinate basis element (a matrix unit).
  static AlgebraElement basis_element(const AlgebraDescriptor& desc, int k);
  static AlgebraElement from_coords(const AlgebraDescriptor& desc, const Vec& coords);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const std::vector<Mat>& blocks() const { return blocks_; }
  const Mat& block(int i) const { return blocks_[i]; }

  Vec coords() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scale);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }

 private:
  AlgebraDescriptor desc_;
  std::vector<Mat> blocks_;
};

AlgebraElement alg_star(const AlgebraElement& a);
AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b);

// Diagonal 0/1 element of the m-point commutative algebra.
AlgebraElement indicator_element(int m, const std::vector<std::int64_t>& subset);

// State realized by a density matrix per block: omega(A) = sum_i tr(rho_i A_i).
// Construction validates hermiticity, positivity (min eigenvalue >= -1e-12)
// and unit total trace (within 1e-12); states need not be faithful.
class State {
 public:
  static State make(AlgebraDescriptor desc, std::vector<Mat> blocks);
  static State uniform(const AlgebraDescriptor& desc);
  static State from_probabilities(const std::vector<double>& p);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const std::vector<Mat>& blocks() const { return blocks_; }

 private:
  State(AlgebraDescriptor desc, std::vector<Mat> blocks)
      : desc_(std::move(desc)), blocks_(std::move(blocks)) {}

  AlgebraDescriptor desc_;
  std::vector<Mat> blocks_;
};

Complex state_eval(const State& omega, const AlgebraElement& a);

}  // namespace ncrec
