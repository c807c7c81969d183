#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ncrec {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Deterministic random source. All distributions are implemented by hand on
// top of mt19937_64 so that streams are identical across platforms and
// standard libraries; a given seed always yields the same experiment.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) * M_SQRT1_2;
  }

 private:
  std::mt19937_64 eng_;
};

// Compensated (Kahan) accumulators. Long averaging loops sum 1e4..1e6 terms;
// plain accumulation would drift past the 1e-12 reporting accuracy.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

class KahanMatrixSum {
 public:
  explicit KahanMatrixSum(Eigen::Index rows, Eigen::Index cols)
      : sum_(Mat::Zero(rows, cols)), comp_(Mat::Zero(rows, cols)) {}

  void add(const Mat& x) {
    const Mat y = x - comp_;
    const Mat t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  const Mat& value() const { return sum_; }

 private:
  Mat sum_, comp_;
};

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat mat_pow(const Mat& m, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("mat_pow: negative exponent");
  Mat result = Mat::Identity(m.rows(), m.cols());
  Mat base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

// m^e * rhs; switches between repeated application and squaring depending on
// the exponent (vectors favour matvecs, large jumps favour matrix powers).
inline Mat apply_power(const Mat& m, std::int64_t e, Mat rhs) {
  if (e < 0) throw std::invalid_argument("apply_power: negative exponent");
  if (e > 64 && rhs.cols() < m.rows()) return mat_pow(m, e) * rhs;
  for (std::int64_t k = 0; k < e; ++k) rhs = m * rhs;
  return rhs;
}

inline double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace ncrec
