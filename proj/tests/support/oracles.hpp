#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "ncrec/algebra.hpp"
#include "ncrec/semigroup.hpp"

namespace oracles {

using ncrec::Complex;
using ncrec::Mat;
using ncrec::Vec;

// Rank by Gaussian elimination with partial pivoting (independent of the
// eigendecomposition route used by gns_build).
inline int elimination_rank(Mat m, double tol) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    for (Eigen::Index r = row + 1; r < rows; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) <= tol) continue;
    m.row(pivot).swap(m.row(row));
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      const Complex f = m(r, col) / m(row, col);
      m.row(r) -= f * m.row(row);
    }
    ++row;
    ++rank;
  }
  return rank;
}

// 3x3 upper-triangular integer matrix realization of a heisenberg element.
using HeisMat = std::array<std::array<std::int64_t, 3>, 3>;

inline HeisMat heis_matrix(const ncrec::GroupElement& g) {
  return {{{1, g.coords[0], g.coords[2]}, {0, 1, g.coords[1]}, {0, 0, 1}}};
}

inline HeisMat heis_mul(const HeisMat& a, const HeisMat& b) {
  HeisMat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

inline ncrec::GroupElement heis_element_of(const HeisMat& m) {
  return ncrec::GroupElement{ncrec::Family::heisenberg, {m[0][1], m[1][2], m[0][2]}};
}

// nu(S intersect T^{-g} S') for the m-point shift x -> x+1, by set counting.
inline double cyclic_overlap(std::int64_t m, const std::vector<std::int64_t>& s,
                             const std::vector<std::int64_t>& s_prime, std::int64_t g) {
  std::set<std::int64_t> right;
  // T^{-g} S' = S' - g
  for (auto x : s_prime) right.insert((((x - g) % m) + m) % m);
  std::int64_t count = 0;
  for (auto x : s)
    if (right.count((x % m + m) % m)) ++count;
  return static_cast<double>(count) / static_cast<double>(m);
}

inline ncrec::AlgebraElement random_element(const ncrec::AlgebraDescriptor& desc,
                                            ncrec::DetRng& rng) {
  std::vector<Mat> blocks;
  for (int n : desc.block_dims) {
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rng.complex_gaussian();
    blocks.push_back(std::move(m));
  }
  return ncrec::AlgebraElement(desc, std::move(blocks));
}

inline ncrec::State random_state(const ncrec::AlgebraDescriptor& desc, ncrec::DetRng& rng,
                                 double ridge = 0.0) {
  std::vector<Mat> blocks;
  double trace = 0.0;
  for (int n : desc.block_dims) {
    Mat g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian();
    Mat rho = g * g.adjoint() + ridge * Mat::Identity(n, n);
    trace += rho.real().trace();
    blocks.push_back(std::move(rho));
  }
  for (auto& b : blocks) b /= trace;
  return ncrec::State::make(desc, std::move(blocks));
}

}  // namespace oracles
