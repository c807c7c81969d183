#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ncrec/gns.hpp"

namespace ncrec {

// --- averaging engine -------------------------------------------------------

// Visits U_g * rhs for every listed exponent tuple, where
// U_g = step[0]^{e0} * ... * step[r-1]^{e_{r-1}}.  Elements are processed in
// an order that shares partial products, so dense boxes cost about one
// matrix-vector product per element; visit receives the original index.
void stream_word_apply(const std::vector<Mat>& step_mats,
                       const std::vector<std::vector<std::int64_t>>& exps, const Mat& rhs,
                       const std::function<void(std::size_t, const Mat&)>& visit);

// Same visitation for the adjoints (U_g)^* * rhs.
void stream_word_apply_adjoint(const std::vector<Mat>& step_mats,
                               const std::vector<std::vector<std::int64_t>>& exps, const Mat& rhs,
                               const std::function<void(std::size_t, const Mat&)>& visit);

// Exact average of U_g * rhs over the exponent box prod_s [0, sides[s]),
// evaluated one axis at a time (compensated sums along each axis).
Mat box_average_apply(const std::vector<Mat>& step_mats, std::span<const std::int64_t> sides,
                      Mat rhs);

// Generator matrices of the lift arranged per word slot.
std::vector<Mat> u_slot_steps(const GnsRep& rep, const SemigroupModel& model);

// (1/|Lambda|) sum_{g in Lambda} U_g x over an arbitrary finite set.
HVector ergodic_avg(const GnsRep& rep, const SemigroupModel& model, const HVector& x,
                    std::span<const GroupElement> elements);

// --- fixed space and convergence --------------------------------------------

struct FixedProjection {
  Mat matrix;   // hdim x hdim orthogonal projection
  Mat basis;    // hdim x rank orthonormal basis of the joint fixed space
  Eigen::Index rank = 0;
};

// Orthonormal basis of the intersection of ker(U_gen - I) over all
// generators, by singular-value thresholding (sigma <= 1e-9) of the stacked
// differences.
FixedProjection fixed_projection(const GnsRep& rep);

struct ConvergencePoint {
  std::int64_t n = 0;
  std::int64_t lambda_size = 0;
  double residual = 0.0;
};
using ConvergenceSeries = std::vector<ConvergencePoint>;

ConvergenceSeries convergence_profile(const GnsRep& rep, const SemigroupModel& model,
                                      const HVector& x, const FolnerNet& net);

// --- recurrence --------------------------------------------------------------

struct RecurrenceRecord {
  GroupElement h;
  Complex window_average{0.0, 0.0};
  GroupElement witness;
  double attained = 0.0;            // |<x, U_g y>| at the witness
  Complex algebra_value{0.0, 0.0};  // omega-level value at the witness, when available
  bool has_algebra_value = false;
};

struct RecurrenceReport {
  double epsilon = 0.0;
  Side side = Side::right;
  int alpha0_index = -1;
  std::int64_t alpha0_n = 0;
  std::int64_t alpha0_size = 0;
  double alpha0_residual = 0.0;
  double lower_bound = 0.0;  // |<x, P y>|
  bool all_pass = false;
  std::vector<RecurrenceRecord> records;
  bool corollary_checked = false;
  double corollary_bound = 0.0;  // |omega(A)|^2 when x and y come from the same element
  bool corollary_all_pass = false;
};

// Finds the first schedule entry with ||I_N(y) - Py|| < eps / (||x|| + 1),
// then reports, for every h in h_set, the translated-window average of
// <x, U_g y> together with the in-window maximizer of |<x, U_g y>|
// (deterministic lexicographic tie-break).  side == right uses windows
// Lambda*h and requires an abelian model; side == left uses h*Lambda and is
// valid for every model here (all are unimodular).
RecurrenceReport khintchine_window(const GnsRep& rep, const SemigroupModel& model,
                                   const HVector& x, const HVector& y, double eps,
                                   const FolnerNet& net, std::span<const GroupElement> h_set,
                                   Side side);

// Algebra-level variant: x = iota(A), y = iota(B); witness records carry
// omega(A* tau_g(B)) read back through the algebra.  When A == B the report
// also checks the |omega(A)|^2 corollary bound.
RecurrenceReport khintchine_recurrence(const StarDynamicalSystem& system, const GnsRep& rep,
                                       const AlgebraElement& a, const AlgebraElement& b,
                                       double eps, const FolnerNet& net,
                                       std::span<const GroupElement> h_set, Side side);

struct ErgodicityReport {
  bool ergodic = false;
  Eigen::Index rank = 0;
  double deviation = 0.0;  // max-abs distance between P and Omega (x) Omega
};

ErgodicityReport is_ergodic(const GnsRep& rep, double tol = 1e-9);

// Ergodic-system bound: windows of omega(A tau_g(B)) beat
// omega(A) omega(B) - eps.  Requires is_ergodic(rep).
RecurrenceReport ergodic_bound_report(const StarDynamicalSystem& system, const GnsRep& rep,
                                      const AlgebraElement& a, const AlgebraElement& b, double eps,
                                      const FolnerNet& net, std::span<const GroupElement> h_set,
                                      Side side = Side::right);

}  // namespace ncrec
