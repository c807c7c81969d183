#include "ncrec/algebra.hpp"

#include <stdexcept>

namespace ncrec {

namespace {

void check_blocks(const AlgebraDescriptor& desc, const std::vector<Mat>& blocks, const char* op) {
  if (blocks.size() != desc.block_dims.size())
    throw std::invalid_argument(std::string(op) + ": block count mismatch");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].rows() != desc.block_dims[i] || blocks[i].cols() != desc.block_dims[i])
      throw std::invalid_argument(std::string(op) + ": block shape mismatch");
}

}  // namespace

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, std::vector<Mat> blocks)
    : desc_(std::move(desc)), blocks_(std::move(blocks)) {
  check_blocks(desc_, blocks_, "AlgebraElement");
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& desc) {
  std::vector<Mat> blocks;
  for (int n : desc.block_dims) blocks.push_back(Mat::Zero(n, n));
  return AlgebraElement(desc, std::move(blocks));
}

AlgebraElement AlgebraElement::unit(const AlgebraDescriptor& desc) {
  std::vector<Mat> blocks;
  for (int n : desc.block_dims) blocks.push_back(Mat::Identity(n, n));
  return AlgebraElement(desc, std::move(blocks));
}

AlgebraElement AlgebraElement::basis_element(const AlgebraDescriptor& desc, int k) {
  if (k < 0 || k >= desc.coord_dim())
    throw std::invalid_argument("basis_element: index out of range");
  AlgebraElement e = zero(desc);
  for (std::size_t b = 0; b < desc.block_dims.size(); ++b) {
    const int n = desc.block_dims[b];
    const int off = desc.block_offset(static_cast<int>(b));
    if (k < off + n * n) {
      const int local = k - off;
      e.blocks_[b](local / n, local % n) = 1.0;
      break;
    }
  }
  return e;
}

AlgebraElement AlgebraElement::from_coords(const AlgebraDescriptor& desc, const Vec& coords) {
  if (coords.size() != desc.coord_dim())
    throw std::invalid_argument("from_coords: wrong coordinate dimension");
  std::vector<Mat> blocks;
  int off = 0;
  for (int n : desc.block_dims) {
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = coords[off + r * n + c];
    blocks.push_back(std::move(m));
    off += n * n;
  }
  return AlgebraElement(desc, std::move(blocks));
}

Vec AlgebraElement::coords() const {
  Vec v(desc_.coord_dim());
  int off = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int n = desc_.block_dims[b];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) v[off + r * n + c] = blocks_[b](r, c);
    off += n * n;
  }
  return v;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (desc_ != other.desc_) throw std::invalid_argument("operator+: descriptor mismatch");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  if (desc_ != other.desc_) throw std::invalid_argument("operator-: descriptor mismatch");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scale) {
  for (auto& b : blocks_) b *= scale;
  return *this;
}

AlgebraElement alg_star(const AlgebraElement& a) {
  std::vector<Mat> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& b : a.blocks()) blocks.push_back(b.adjoint());
  return AlgebraElement(a.descriptor(), std::move(blocks));
}

AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.descriptor() != b.descriptor())
    throw std::invalid_argument("alg_mul: descriptor mismatch");
  std::vector<Mat> blocks;
  blocks.reserve(a.blocks().size());
  for (std::size_t i = 0; i < a.blocks().size(); ++i) blocks.push_back(a.block(static_cast<int>(i)) * b.block(static_cast<int>(i)));
  return AlgebraElement(a.descriptor(), std::move(blocks));
}

AlgebraElement indicator_element(int m, const std::vector<std::int64_t>& subset) {
  if (m < 1) throw std::invalid_argument("indicator_element: m must be positive");
  AlgebraElement e = AlgebraElement::zero(AlgebraDescriptor::commutative_points(m));
  std::vector<Mat> blocks = e.blocks();
  for (auto s : subset) {
    if (s < 0 || s >= m) throw std::invalid_argument("indicator_element: index out of range");
    blocks[static_cast<std::size_t>(s)](0, 0) = 1.0;
  }
  return AlgebraElement(e.descriptor(), std::move(blocks));
}

State State::make(AlgebraDescriptor desc, std::vector<Mat> blocks) {
  check_blocks(desc, blocks, "State");
  double trace = 0.0;
  for (const auto& rho : blocks) {
    if (max_abs(rho - rho.adjoint()) > 1e-9)
      throw std::invalid_argument("State: density block is not hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-12)
      throw std::invalid_argument("State: density block has a negative eigenvalue");
    trace += rho.real().trace();
  }
  if (std::abs(trace - 1.0) > 1e-12)
    throw std::invalid_argument("State: total trace must be 1");
  return State(std::move(desc), std::move(blocks));
}

State State::uniform(const AlgebraDescriptor& desc) {
  const double dim = desc.matrix_dim();
  std::vector<Mat> blocks;
  for (int n : desc.block_dims) blocks.push_back(Mat::Identity(n, n) / dim);
  return State(desc, std::move(blocks));
}

State State::from_probabilities(const std::vector<double>& p) {
  double total = 0.0;
  for (double v : p) total += v;
  std::vector<Mat> blocks;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("from_probabilities: negative entry");
    Mat m(1, 1);
    m(0, 0) = v / total;
    blocks.push_back(std::move(m));
  }
  return State(AlgebraDescriptor::commutative_points(static_cast<int>(p.size())),
               std::move(blocks));
}

Complex state_eval(const State& omega, const AlgebraElement& a) {
  if (omega.descriptor() != a.descriptor())
    throw std::invalid_argument("state_eval: shape mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < omega.blocks().size(); ++i)
    sum += (omega.blocks()[i] * a.block(static_cast<int>(i))).trace();
  return sum;
}

}  // namespace ncrec
