#include "doctest.h"

#include <cmath>

#include "kmoment/binet.hpp"
#include "kmoment/error.hpp"
#include "kmoment/recurrence.hpp"
#include "kmoment/synthesis.hpp"
#include "oracles.hpp"

using namespace kmoment;

namespace {

TruncatedSequence ones(std::size_t d, int degree) {
  return TruncatedSequence(d, degree, std::vector<double>(basis_size(d, degree), 1.0));
}

TruncatedSequence two_atom_moments(int degree) {
  return evaluate_moments({2, {{{0.0, 0.0}, 1.0, {}}, {{1.0, 1.0}, 1.0, {}}}}, degree);
}

TruncatedSequence three_five_sequence(int degree) {
  const auto basis = enumerate_basis(3, degree);
  std::vector<double> v;
  for (const auto& i : basis) v.push_back(std::pow(3.0, i[0]) * std::pow(5.0, i[1]) * (std::pow(2.0, i[2]) - 1.0));
  return TruncatedSequence(3, degree, v);
}

void check_poly(const UnivariatePoly& p, const std::vector<double>& coeffs, double tol) {
  REQUIRE(p.degree() + 1 == static_cast<int>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) CHECK(std::abs(p.coeff(static_cast<int>(k)) - coeffs[k]) <= tol);
}

// Coordinate slice beta_(i + k e_var), k = 0..n.
std::vector<double> slice(const TruncatedSequence& beta, const MultiIndex& base, std::size_t var) {
  std::vector<double> s;
  for (int k = 0; base.degree() + k <= beta.max_degree(); ++k) s.push_back(beta[base + MultiIndex::unit(beta.dim(), var, k)]);
  return s;
}

}  // namespace

TEST_CASE("detect_minimal_recurrence examples") {
  check_poly(detect_minimal_recurrence(ones(2, 2), 0).poly, {-1.0, 1.0}, 1e-12);
  check_poly(detect_minimal_recurrence(two_atom_moments(4), 0).poly, {0.0, -1.0, 1.0}, 1e-10);
  const auto beta = three_five_sequence(8);
  check_poly(detect_minimal_recurrence(beta, 2).poly, {2.0, -3.0, 1.0}, 1e-8);

  // Oracle: exact least-order recurrence of the (0,0,v) slice.
  const auto oracle = testing::slice_minimal_recurrence(slice(beta, MultiIndex{0, 0, 0}, 2));
  REQUIRE(oracle);
  REQUIRE(oracle->size() == 2);
  CHECK((*oracle)[0] == doctest::Approx(3.0));
  CHECK((*oracle)[1] == doctest::Approx(-2.0));
}

TEST_CASE("detect_minimal_recurrence reports a missing recurrence") {
  // s_k = k! grows too fast for any recurrence of the available length.
  std::vector<double> v{1, 1, 2, 6, 24, 120};
  const TruncatedSequence beta(1, 5, v);
  try {
    detect_minimal_recurrence(beta, 0);
    FAIL("expected NoRecurrence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRecurrence);
    REQUIRE(e.variable());
    CHECK(*e.variable() == 0);
  }
  CHECK_THROWS_AS(detect_minimal_recurrence(beta, 1), Error);
}

TEST_CASE("detect_characteristic_system examples") {
  const auto s1 = detect_characteristic_system(ones(2, 2));
  CHECK(s1.tau() == 0);
  check_poly(s1.polys[1], {-1.0, 1.0}, 1e-12);

  const auto s2 = detect_characteristic_system(two_atom_moments(4));
  CHECK(s2.tau() == 2);
  check_poly(s2.polys[1], {0.0, -1.0, 1.0}, 1e-10);

  const auto s3 = detect_characteristic_system(three_five_sequence(8));
  CHECK(s3.tau() == 1);
  check_poly(s3.polys[0], {-3.0, 1.0}, 1e-8);
  check_poly(s3.polys[1], {-5.0, 1.0}, 1e-8);
  check_poly(s3.polys[2], {2.0, -3.0, 1.0}, 1e-8);
  CHECK(s3.residual < 1e-8);
  CHECK(s3.residual >= 0.0);
}

TEST_CASE("extend_sequence examples") {
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  const auto e1 = extend_sequence(ones(2, 2), unit, 6);
  CHECK(e1.max_degree() == 6);
  for (double v : e1.values()) CHECK(v == 1.0);

  const CharacteristicSystem fib{{UnivariatePoly{-1.0, -1.0, 1.0}}, 0.0};
  const auto e2 = extend_sequence(TruncatedSequence(1, 1, {0.0, 1.0}), fib, 10);
  CHECK(e2[MultiIndex{10}] == 55.0);

  const CharacteristicSystem sq{{UnivariatePoly{0.0, -1.0, 1.0}, UnivariatePoly{0.0, -1.0, 1.0}}, 0.0};
  const auto e3 = extend_sequence(two_atom_moments(2), sq, 8);
  CHECK(e3[MultiIndex{4, 4}] == doctest::Approx(1.0));
  CHECK(e3 == two_atom_moments(8));

  // Truncation when the target is below the data.
  CHECK(extend_sequence(two_atom_moments(4), sq, 2) == two_atom_moments(2));
}

TEST_CASE("extend_sequence detects disagreeing recurrences and missing data") {
  // beta = 1 everywhere except beta_(1,1) = 2: x_1 and x_2 recurrences clash at (2,1)/(1,2).
  auto beta = ones(2, 2);
  beta[MultiIndex{1, 1}] = 2.0;
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  try {
    extend_sequence(beta, unit, 3);
    FAIL("expected InconsistentRecurrence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentRecurrence);
  }
  // An order-3 recurrence needs s_0..s_2.
  const CharacteristicSystem cubic{{UnivariatePoly(testing::expand_roots({0.0, 1.0, 2.0}))}, 0.0};
  try {
    extend_sequence(TruncatedSequence(1, 1, {1.0, 1.0}), cubic, 4);
    FAIL("expected InsufficientInitialData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientInitialData);
  }
  const CharacteristicSystem one_poly{{UnivariatePoly{-1.0, 1.0}}, 0.0};
  CHECK_THROWS_AS(extend_sequence(ones(2, 2), one_poly, 4), Error);
}

TEST_CASE("verify_annihilation examples") {
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  CHECK(verify_annihilation(build_moment_matrix(ones(2, 2), 1), unit));

  const CharacteristicSystem sq{{UnivariatePoly{0.0, -1.0, 1.0}, UnivariatePoly{0.0, -1.0, 1.0}}, 0.0};
  CHECK(verify_annihilation(build_moment_matrix(two_atom_moments(4), 2), sq));

  const CharacteristicSystem off{{UnivariatePoly{-2.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  CHECK_FALSE(verify_annihilation(build_moment_matrix(ones(2, 2), 1), off));

  CHECK_THROWS_AS(verify_annihilation(build_moment_matrix(ones(2, 2), 1), sq), Error);
}

TEST_CASE("recurrence properties on synthesized measures") {
  FixtureRng rng(101);
  for (int trial = 0; trial < 90; ++trial) {
    RandomMeasureSpec spec;
    spec.dim = 1 + static_cast<std::size_t>(trial % 3);
    const AtomicMeasure mu = random_grid_measure(rng, spec);
    const auto counts = distinct_coordinates(mu);
    const std::size_t worst = *std::max_element(counts.begin(), counts.end());
    const int degree = static_cast<int>(2 * worst);
    const auto beta = evaluate_moments(mu, degree);
    CAPTURE(trial);

    const CharacteristicSystem sys = detect_characteristic_system(beta);
    CHECK(sys.residual < 1e-8);
    for (std::size_t l = 0; l < spec.dim; ++l) {
      const UnivariatePoly& p = sys.polys[l];
      CHECK(p.is_monic());
      // Minimality: the next lower degree does not fit.
      if (p.degree() > 1) {
        const auto lower = fit_recurrence(beta, l, p.degree() - 1);
        REQUIRE(lower);
        CHECK(lower->residual >= 1e-8);
      }
      // Divisibility: prod (x - lambda) over the true coordinates is a multiple of p.
      std::vector<double> xs;
      for (const auto& a : mu.atoms) {
        if (std::find(xs.begin(), xs.end(), a.point[l]) == xs.end()) xs.push_back(a.point[l]);
      }
      const UnivariatePoly known(testing::expand_roots(xs));
      const auto rem = divide(known, p, 0.0).remainder;
      for (double c : rem.coeffs()) CHECK(std::abs(c) <= 1e-7);
      CHECK(p.degree() == static_cast<int>(xs.size()));
    }

    // Idempotence: extend, re-detect, compare.
    const auto extended = extend_sequence(beta, sys, degree + 4);
    const CharacteristicSystem again = detect_characteristic_system(extended);
    for (std::size_t l = 0; l < spec.dim; ++l) {
      REQUIRE(again.polys[l].degree() == sys.polys[l].degree());
      for (int k = 0; k <= sys.polys[l].degree(); ++k) {
        CHECK(std::abs(again.polys[l].coeff(k) - sys.polys[l].coeff(k)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("joint fit agrees with the per-slice lcm route") {
  FixtureRng rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    RandomMeasureSpec spec;
    spec.dim = 2;
    const AtomicMeasure mu = random_grid_measure(rng, spec);
    const auto beta = evaluate_moments(mu, 10);
    const CharacteristicSystem sys = detect_characteristic_system(beta);
    for (std::size_t l = 0; l < 2; ++l) {
      UnivariatePoly q{1.0};
      for (const auto& base : enumerate_basis(2, 2)) {
        const auto rec = testing::slice_minimal_recurrence(slice(beta, base, l), 1e-7);
        REQUIRE(rec);
        if (rec->empty()) continue;
        q = univariate_lcm(q, UnivariatePoly::from_recurrence(*rec), 1e-6);
      }
      REQUIRE(q.degree() == sys.polys[l].degree());
      for (int k = 0; k <= q.degree(); ++k) CHECK(std::abs(q.coeff(k) - sys.polys[l].coeff(k)) <= 1e-5);
    }
  }
}

TEST_CASE("rows repeated by single-valued variables do not validate a fit") {
  // x_1 and x_3 take one value, so slices based at e_1 and e_3 are multiples of
  // the slice through the origin. Three x_2 values need degree-6 data.
  const AtomicMeasure mu{3,
                         {{{-0.2, -1.4, 1.7}, 3.8, {}}, {{-0.2, -0.5, 1.7}, 3.7, {}}, {{-0.2, 0.0, 1.7}, 4.9, {}}}};
  for (int degree = 3; degree <= 5; ++degree) {
    CAPTURE(degree);
    try {
      detect_minimal_recurrence(evaluate_moments(mu, degree), 1);
      FAIL("expected NoRecurrence");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoRecurrence);
    }
  }
  CHECK(detect_minimal_recurrence(evaluate_moments(mu, 6), 1).poly.degree() == 3);
  CHECK_FALSE(fit_recurrence(evaluate_moments(mu, 5), 1, 3));
}
