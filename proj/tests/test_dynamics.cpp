#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncrec/dynamics.hpp"
#include "support/oracles.hpp"

using namespace ncrec;

namespace {

const Complex I(0.0, 1.0);

// tau(A) = omega(A) * 1, a contractive but not isometric map
DynMap averaging_map(const AlgebraDescriptor& desc, const State& omega) {
  return map_from_action(desc, [&](const AlgebraElement& a) {
    AlgebraElement unit = AlgebraElement::unit(desc);
    return state_eval(omega, a) * unit;
  });
}

StarDynamicalSystem cyclic_shift_system(int m) {
  std::vector<int> shift(m);
  for (int x = 0; x < m; ++x) shift[x] = (x + 1) % m;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(m);
  return make_system(desc, State::uniform(desc), SemigroupModel::cyclic(m, 1),
                     {koopman_from_map(shift)});
}

double axiom_residual(const ValidationReport& report, const std::string& name) {
  for (const auto& axiom : report.axioms)
    if (axiom.name == name) return axiom.worst_residual;
  FAIL("missing axiom " << name);
  return 0.0;
}

bool axiom_pass(const ValidationReport& report, const std::string& name) {
  for (const auto& axiom : report.axioms)
    if (axiom.name == name) return axiom.pass;
  FAIL("missing axiom " << name);
  return false;
}

}  // namespace

TEST_CASE("koopman_from_map") {
  CHECK(max_abs(koopman_from_map({0, 1, 2, 3}).mat - Mat::Identity(4, 4)) == 0.0);

  // m = 3 rotation: chi_{0} pulls back to chi_{2}
  const DynMap shift = koopman_from_map({1, 2, 0});
  const Vec image = shift.mat * indicator_element(3, {0}).coords();
  CHECK(max_abs(image - indicator_element(3, {2}).coords()) == 0.0);
  CHECK(shift.unital);

  // constant map: tau(f) = f(c) * 1, still unital
  const DynMap constant = koopman_from_map({1, 1, 1});
  const Vec of_unit = constant.mat * AlgebraElement::unit(AlgebraDescriptor::commutative_points(3)).coords();
  CHECK(max_abs(of_unit - AlgebraElement::unit(AlgebraDescriptor::commutative_points(3)).coords()) == 0.0);
  const Vec of_chi1 = constant.mat * indicator_element(3, {1}).coords();
  CHECK(max_abs(of_chi1 - AlgebraElement::unit(AlgebraDescriptor::commutative_points(3)).coords()) == 0.0);

  CHECK_THROWS_AS(koopman_from_map({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(koopman_from_map({}), std::invalid_argument);
}

TEST_CASE("conjugation_from_unitary") {
  const AlgebraDescriptor m2{{2}};
  CHECK(max_abs(conjugation_from_unitary(m2, {Mat::Identity(2, 2)}).mat - Mat::Identity(4, 4)) <=
        1e-15);

  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = I;
  const DynMap conj_v = conjugation_from_unitary(m2, {v});
  const AlgebraElement e01 = AlgebraElement::basis_element(m2, 1);
  CHECK(max_abs(apply_map(m2, conj_v.mat, e01).coords() - (I * e01).coords()) <= 1e-15);

  Mat swap = Mat::Zero(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  const DynMap conj_swap = conjugation_from_unitary(m2, {swap});
  const AlgebraElement e00 = AlgebraElement::basis_element(m2, 0);
  const AlgebraElement e11 = AlgebraElement::basis_element(m2, 3);
  CHECK(max_abs(apply_map(m2, conj_swap.mat, e00).coords() - e11.coords()) <= 1e-15);
  CHECK(max_abs(apply_map(m2, conj_swap.mat, e11).coords() - e00.coords()) <= 1e-15);

  Mat not_unitary = 2.0 * Mat::Identity(2, 2);
  CHECK_THROWS_AS(conjugation_from_unitary(m2, {not_unitary}), std::invalid_argument);
}

TEST_CASE("tau_at composes generator powers") {
  // two commuting conjugations over Cone(2)
  const AlgebraDescriptor m2{{2}};
  Mat v1 = Mat::Identity(2, 2);
  v1(1, 1) = std::polar(1.0, 0.7);
  Mat v2 = Mat::Identity(2, 2);
  v2(1, 1) = std::polar(1.0, 0.3);
  StarDynamicalSystem sys =
      make_system(m2, State::uniform(m2), SemigroupModel::cone(2),
                  {conjugation_from_unitary(m2, {v1}), conjugation_from_unitary(m2, {v2})});

  CHECK(max_abs(tau_at(sys, sys.model.identity()).mat - Mat::Identity(4, 4)) == 0.0);

  const Mat m1 = sys.generator_maps[0].mat;
  const Mat m2m = sys.generator_maps[1].mat;
  CHECK(max_abs(tau_at(sys, sys.model.element({3, 0})).mat - m1 * m1 * m1) <= 1e-13);
  const Mat both = tau_at(sys, sys.model.element({1, 1})).mat;
  CHECK(max_abs(both - m1 * m2m) <= 1e-12);
  CHECK(max_abs(both - m2m * m1) <= 1e-12);

  CHECK_THROWS_AS(tau_at(sys, sys.model.element({-1, 0})), std::invalid_argument);
}

TEST_CASE("validation of a measure-preserving koopman system") {
  StarDynamicalSystem sys = cyclic_shift_system(6);
  REQUIRE(sys.validation.has_value());
  const ValidationReport& report = *sys.validation;
  CHECK(report.all_pass());
  CHECK(report.omega_isometric);
  CHECK(axiom_residual(report, "semigroup_law") <= 1e-12);
  CHECK(axiom_residual(report, "unital") <= 1e-12);
  CHECK(axiom_residual(report, "contractivity") <= 1e-12);
  CHECK(axiom_pass(report, "generator_commutation"));

  // deterministic given the seed
  const ValidationReport again = validate_system(sys, 1e-10, 32, 1);
  for (std::size_t i = 0; i < report.axioms.size(); ++i)
    CHECK(report.axioms[i].worst_residual == again.axioms[i].worst_residual);
  CHECK(report.isometry_residual == again.isometry_residual);
}

TEST_CASE("averaging map passes the axioms but is not isometric") {
  const AlgebraDescriptor c4 = AlgebraDescriptor::commutative_points(4);
  const State omega = State::uniform(c4);
  StarDynamicalSystem sys =
      make_system(c4, omega, SemigroupModel::cone(1), {averaging_map(c4, omega)});
  CHECK(sys.validation->all_pass());
  CHECK_FALSE(sys.validation->omega_isometric);
  CHECK(sys.validation->isometry_residual > 1e-3);
}

TEST_CASE("broken systems are reported, not thrown") {
  const AlgebraDescriptor c2 = AlgebraDescriptor::commutative_points(2);

  DynMap doubled;
  doubled.mat = 2.0 * Mat::Identity(2, 2);
  StarDynamicalSystem bad_unital =
      make_system(c2, State::uniform(c2), SemigroupModel::cone(1), {doubled});
  CHECK_FALSE(bad_unital.validation->all_pass());
  CHECK_FALSE(axiom_pass(*bad_unital.validation, "unital"));

  DynMap expanding;
  expanding.mat = Mat(2, 2);
  expanding.mat << 1.5, -0.5, -0.5, 1.5;
  StarDynamicalSystem bad_contraction =
      make_system(c2, State::uniform(c2), SemigroupModel::cone(1), {expanding});
  CHECK_FALSE(bad_contraction.validation->all_pass());
  CHECK(axiom_pass(*bad_contraction.validation, "unital"));
  CHECK_FALSE(axiom_pass(*bad_contraction.validation, "contractivity"));
}

TEST_CASE("koopman isometry detects measure preservation at small m") {
  const int m = 6;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(m);
  // bijections preserve the uniform measure
  std::vector<int> rotation(m);
  for (int x = 0; x < m; ++x) rotation[x] = (x + 2) % m;
  StarDynamicalSystem good = make_system(desc, State::uniform(desc), SemigroupModel::cone(1),
                                         {koopman_from_map(rotation)});
  CHECK(good.validation->omega_isometric);

  // 2-to-1 map is not measure preserving; isometry must fail
  std::vector<int> collapse = {0, 0, 1, 1, 2, 2};
  StarDynamicalSystem bad = make_system(desc, State::uniform(desc), SemigroupModel::cone(1),
                                        {koopman_from_map(collapse)});
  CHECK_FALSE(bad.validation->omega_isometric);
}

TEST_CASE("unitary conjugation commuting with the state is isometric") {
  const AlgebraDescriptor m2{{2}};
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  Mat v = Mat::Identity(2, 2);
  v(1, 1) = std::polar(1.0, 1.3);
  StarDynamicalSystem sys = make_system(m2, State::make(m2, {rho}), SemigroupModel::cone(1),
                                        {conjugation_from_unitary(m2, {v})});
  CHECK(sys.validation->all_pass());
  CHECK(sys.validation->omega_isometric);
}

TEST_CASE("semigroup law over the radius-3 ball, heisenberg included") {
  // right-translation Koopman action on the finite Heisenberg group, m = 3
  const int m = 3;
  const int points = m * m * m;
  const AlgebraDescriptor desc = AlgebraDescriptor::commutative_points(points);
  auto idx = [m](int a, int b, int c) { return (a * m + b) * m + c; };
  auto right = [&](int ga, int gb, int gc) {
    std::vector<int> map(points);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          map[idx(a, b, c)] = idx((a + ga) % m, (b + gb) % m, (c + gc + a * gb) % m);
    return koopman_from_map(map);
  };
  StarDynamicalSystem sys =
      make_system(desc, State::uniform(desc), SemigroupModel::heisenberg(),
                  {right(1, 0, 0), right(0, 1, 0), right(0, 0, 1)});
  CHECK(sys.validation->all_pass());

  const auto ball = word_ball(sys.model, 3);
  double worst = 0.0;
  for (const auto& g : ball)
    for (const auto& h : ball) {
      const Mat lhs = tau_at(sys, g).mat * tau_at(sys, h).mat;
      const Mat rhs = tau_at(sys, compose(sys.model, g, h)).mat;
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("make_system rejects malformed input") {
  const AlgebraDescriptor m2{{2}};
  DynMap id4;
  id4.mat = Mat::Identity(4, 4);
  CHECK_THROWS_AS(make_system(m2, State::uniform(AlgebraDescriptor{{3}}), SemigroupModel::cone(1),
                              {id4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_system(m2, State::uniform(m2), SemigroupModel::cone(2), {id4}),
                  std::invalid_argument);
  DynMap id9;
  id9.mat = Mat::Identity(9, 9);
  CHECK_THROWS_AS(make_system(m2, State::uniform(m2), SemigroupModel::cone(1), {id9}),
                  std::invalid_argument);
}
