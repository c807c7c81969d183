#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncrec/algebra.hpp"
#include "support/oracles.hpp"

using namespace ncrec;

namespace {

const Complex I(0.0, 1.0);

AlgebraElement single_block(Mat m) {
  const AlgebraDescriptor desc{{static_cast<int>(m.rows())}};
  return AlgebraElement(desc, {std::move(m)});
}

bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol = 1e-12) {
  return max_abs(a.coords() - b.coords()) <= tol;
}

}  // namespace

TEST_CASE("descriptor dimensions") {
  const AlgebraDescriptor desc{{2, 1, 3}};
  CHECK(desc.coord_dim() == 4 + 1 + 9);
  CHECK(desc.matrix_dim() == 6);
  CHECK_FALSE(desc.commutative());
  CHECK(AlgebraDescriptor::commutative_points(5).commutative());
  CHECK(desc.block_offset(2) == 5);
}

TEST_CASE("alg_star") {
  const AlgebraDescriptor m2{{2}};
  CHECK(approx_equal(alg_star(AlgebraElement::unit(m2)), AlgebraElement::unit(m2)));

  Mat upper = Mat::Zero(2, 2);
  upper(0, 1) = 1.0;
  Mat lower = Mat::Zero(2, 2);
  lower(1, 0) = 1.0;
  CHECK(approx_equal(alg_star(single_block(upper)), single_block(lower)));

  Mat upper_i = Mat::Zero(2, 2);
  upper_i(0, 1) = I;
  Mat lower_minus_i = Mat::Zero(2, 2);
  lower_minus_i(1, 0) = -I;
  CHECK(approx_equal(alg_star(single_block(upper_i)), single_block(lower_minus_i)));

  DetRng rng(7);
  const AlgebraDescriptor mixed{{2, 1, 3}};
  for (int i = 0; i < 20; ++i) {
    const AlgebraElement a = oracles::random_element(mixed, rng);
    CHECK(approx_equal(alg_star(alg_star(a)), a));
  }
}

TEST_CASE("alg_mul") {
  const AlgebraDescriptor mixed{{2, 1, 3}};
  DetRng rng(13);
  const AlgebraElement a = oracles::random_element(mixed, rng);
  CHECK(approx_equal(alg_mul(a, AlgebraElement::unit(mixed)), a));
  CHECK(approx_equal(alg_mul(AlgebraElement::unit(mixed), a), a));

  // matrix units: E01 * E10 = E00
  const AlgebraDescriptor m2{{2}};
  const AlgebraElement e01 = AlgebraElement::basis_element(m2, 1);
  const AlgebraElement e10 = AlgebraElement::basis_element(m2, 2);
  CHECK(approx_equal(alg_mul(e01, e10), AlgebraElement::basis_element(m2, 0)));

  // commutative case multiplies pointwise
  const AlgebraElement f = indicator_element(4, {0, 1});
  const AlgebraElement g = indicator_element(4, {1, 3});
  CHECK(approx_equal(alg_mul(f, g), indicator_element(4, {1})));

  CHECK_THROWS_AS(alg_mul(a, AlgebraElement::unit(m2)), std::invalid_argument);
}

TEST_CASE("state_eval") {
  const AlgebraDescriptor mixed{{2, 3}};
  const State uniform = State::uniform(mixed);
  CHECK(state_eval(uniform, AlgebraElement::unit(mixed)).real() == doctest::Approx(1.0));
  CHECK(state_eval(uniform, AlgebraElement::unit(mixed)).imag() == doctest::Approx(0.0));

  const State um = State::uniform(AlgebraDescriptor::commutative_points(6));
  CHECK(state_eval(um, indicator_element(6, {0, 2, 4})).real() == doctest::Approx(0.5));

  Mat flip = Mat::Zero(2, 2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const State half = State::uniform(AlgebraDescriptor{{2}});
  CHECK(std::abs(state_eval(half, single_block(flip))) == doctest::Approx(0.0));

  CHECK_THROWS_AS(state_eval(half, AlgebraElement::unit(mixed)), std::invalid_argument);

  // linearity and the conjugation rule
  DetRng rng(19);
  const State omega = oracles::random_state(mixed, rng, 0.1);
  for (int i = 0; i < 20; ++i) {
    const AlgebraElement a = oracles::random_element(mixed, rng);
    const AlgebraElement b = oracles::random_element(mixed, rng);
    const Complex scale = rng.complex_gaussian();
    const Complex lhs = state_eval(omega, scale * a + b);
    CHECK(std::abs(lhs - (scale * state_eval(omega, a) + state_eval(omega, b))) <= 1e-12);
    CHECK(std::abs(state_eval(omega, alg_star(a)) - std::conj(state_eval(omega, a))) <= 1e-12);
  }
}

TEST_CASE("indicator_element") {
  CHECK(max_abs(indicator_element(4, {}).coords()) == 0.0);
  CHECK(approx_equal(indicator_element(4, {0, 1, 2, 3}),
                     AlgebraElement::unit(AlgebraDescriptor::commutative_points(4))));
  const Vec c = indicator_element(4, {0, 3}).coords();
  CHECK(c[0] == Complex(1.0));
  CHECK(c[1] == Complex(0.0));
  CHECK(c[2] == Complex(0.0));
  CHECK(c[3] == Complex(1.0));
  CHECK_THROWS_AS(indicator_element(4, {4}), std::invalid_argument);
  CHECK_THROWS_AS(indicator_element(4, {-1}), std::invalid_argument);

  const AlgebraElement chi = indicator_element(5, {1, 2});
  CHECK(approx_equal(alg_mul(chi, chi), chi));
  CHECK(approx_equal(alg_star(chi), chi));
}

TEST_CASE("state validation") {
  const AlgebraDescriptor m2{{2}};
  Mat not_hermitian = Mat::Zero(2, 2);
  not_hermitian(0, 0) = 0.5;
  not_hermitian(1, 1) = 0.5;
  not_hermitian(0, 1) = 0.3;
  CHECK_THROWS_AS(State::make(m2, {not_hermitian}), std::invalid_argument);

  Mat negative = Mat::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(State::make(m2, {negative}), std::invalid_argument);

  Mat wrong_trace = 0.4 * Mat::Identity(2, 2);
  CHECK_THROWS_AS(State::make(m2, {wrong_trace}), std::invalid_argument);

  CHECK_NOTHROW(State::make(m2, {0.5 * Mat::Identity(2, 2)}));
  // pure states (singular density matrices) are allowed
  Mat pure = Mat::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK_NOTHROW(State::make(m2, {pure}));
}

TEST_CASE("state positivity inequalities on random elements") {
  const AlgebraDescriptor mixed{{2, 1, 3}};
  DetRng rng(41);
  const State omega = oracles::random_state(mixed, rng, 0.05);
  for (int i = 0; i < 100; ++i) {
    const AlgebraElement a = oracles::random_element(mixed, rng);
    const AlgebraElement b = oracles::random_element(mixed, rng);
    const double aa = state_eval(omega, alg_mul(alg_star(a), a)).real();
    const double bb = state_eval(omega, alg_mul(alg_star(b), b)).real();
    const Complex ab = state_eval(omega, alg_mul(alg_star(a), b));
    CHECK(aa >= -1e-12);
    CHECK(std::norm(ab) <= aa * bb + 1e-10);                       // Cauchy-Schwarz
    CHECK(std::norm(state_eval(omega, a)) <= aa + 1e-10);          // |omega(A)|^2 <= omega(A*A)
  }
}

TEST_CASE("coordinates round-trip and follow the row-major layout") {
  const AlgebraDescriptor mixed{{2, 3}};
  DetRng rng(43);
  const AlgebraElement a = oracles::random_element(mixed, rng);
  CHECK(approx_equal(AlgebraElement::from_coords(mixed, a.coords()), a));

  const AlgebraElement e01 = AlgebraElement::basis_element(AlgebraDescriptor{{2}}, 1);
  CHECK(e01.block(0)(0, 1) == Complex(1.0));
  CHECK(e01.block(0)(1, 0) == Complex(0.0));
}
