#include "doctest.h"

#include <cmath>

#include "kmoment/binet.hpp"
#include "kmoment/error.hpp"
#include "kmoment/synthesis.hpp"
#include "oracles.hpp"

using namespace kmoment;

namespace {

const AtomicMeasure kTwoAtoms{2, {{{0.0, 0.0}, 1.0, {}}, {{1.0, 1.0}, 1.0, {}}}};

TruncatedSequence ones(std::size_t d, int degree) {
  return TruncatedSequence(d, degree, std::vector<double>(basis_size(d, degree), 1.0));
}

CharacteristicSystem square_system() {
  return {{UnivariatePoly{0.0, -1.0, 1.0}, UnivariatePoly{0.0, -1.0, 1.0}}, 0.0};
}

TruncatedSequence three_five_sequence(int degree) {
  std::vector<double> v;
  for (const auto& i : enumerate_basis(3, degree)) {
    v.push_back(std::pow(3.0, i[0]) * std::pow(5.0, i[1]) * (std::pow(2.0, i[2]) - 1.0));
  }
  return TruncatedSequence(3, degree, v);
}

CharacteristicSystem three_five_system() {
  return {{UnivariatePoly{-3.0, 1.0}, UnivariatePoly{-5.0, 1.0}, UnivariatePoly{2.0, -3.0, 1.0}}, 0.0};
}

}  // namespace

TEST_CASE("univariate_binet examples") {
  const auto t1 = univariate_binet(UnivariatePoly{-1.0, 1.0}, std::vector<double>{7.0});
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].root.real() == doctest::Approx(1.0));
  CHECK(t1[0].coefficient.real() == doctest::Approx(7.0));

  const auto t2 = univariate_binet(UnivariatePoly{-1.0, -1.0, 1.0}, std::vector<double>{0.0, 1.0});
  REQUIRE(t2.size() == 2);
  const double r5 = std::sqrt(5.0);
  CHECK(t2[0].root.real() == doctest::Approx((1.0 - r5) / 2.0));
  CHECK(t2[1].root.real() == doctest::Approx((1.0 + r5) / 2.0));
  CHECK(t2[0].coefficient.real() == doctest::Approx(-1.0 / r5));
  CHECK(t2[1].coefficient.real() == doctest::Approx(1.0 / r5));
  Complex s2 = 0.0;
  for (const auto& t : t2) s2 += t.coefficient * t.root * t.root;
  CHECK(s2.real() == doctest::Approx(1.0));

  const auto t3 = univariate_binet(UnivariatePoly{2.0, -3.0, 1.0}, std::vector<double>{0.0, 1.0});
  CHECK(t3[0].root.real() == doctest::Approx(1.0));
  CHECK(t3[0].coefficient.real() == doctest::Approx(-1.0));
  CHECK(t3[1].root.real() == doctest::Approx(2.0));
  CHECK(t3[1].coefficient.real() == doctest::Approx(1.0));
}

TEST_CASE("univariate_binet rejects repeated roots and bad initial data") {
  try {
    univariate_binet(UnivariatePoly{1.0, -2.0, 1.0}, std::vector<double>{1.0, 1.0});
    FAIL("expected RepeatedRoots");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RepeatedRoots);
  }
  CHECK_THROWS_AS(univariate_binet(UnivariatePoly{-1.0, 1.0}, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("multivariate_binet examples") {
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  const auto e1 = multivariate_binet(unit, ones(2, 2));
  REQUIRE(e1.coefficients.size() == 1);
  CHECK(std::abs(e1.coefficients[0] - Complex(1.0)) < 1e-12);
  CHECK(e1.source_residual < 1e-12);

  const auto e2 = multivariate_binet(square_system(), evaluate_moments(kTwoAtoms, 4));
  REQUIRE(e2.shape() == std::vector<std::size_t>{2, 2});
  const std::vector<std::size_t> g00{0, 0}, g01{0, 1}, g10{1, 0}, g11{1, 1};
  CHECK(std::abs(e2.coefficient(g00) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(e2.coefficient(g11) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(e2.coefficient(g01)) < 1e-12);
  CHECK(std::abs(e2.coefficient(g10)) < 1e-12);

  const auto e3 = multivariate_binet(three_five_system(), three_five_sequence(8));
  REQUIRE(e3.shape() == std::vector<std::size_t>{1, 1, 2});
  const std::vector<std::size_t> at1{0, 0, 0}, at2{0, 0, 1};
  CHECK(e3.roots[2][0].real() == doctest::Approx(1.0));
  CHECK(std::abs(e3.coefficient(at1) - Complex(-1.0)) < 1e-9);
  CHECK(std::abs(e3.coefficient(at2) - Complex(1.0)) < 1e-9);
  CHECK(e3.source_residual < 1e-9);
}

TEST_CASE("grid index bookkeeping") {
  const auto e = multivariate_binet(square_system(), evaluate_moments(kTwoAtoms, 4));
  for (std::size_t f = 0; f < 4; ++f) CHECK(e.flat_index(e.grid_index(f)) == f);
  const std::vector<std::size_t> bad{2, 0};
  CHECK_THROWS_AS(e.flat_index(bad), Error);
  try {
    (void)e.flat_index(bad);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::GridIndexOutOfRange);
  }
}

TEST_CASE("expansion_to_measure examples") {
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  const auto m1 = expansion_to_measure(multivariate_binet(unit, ones(2, 2)));
  REQUIRE(m1.atoms.size() == 1);
  CHECK(m1.atoms[0].point == std::vector<double>{1.0, 1.0});
  CHECK(m1.atoms[0].weight == doctest::Approx(1.0));

  const auto m2 = expansion_to_measure(multivariate_binet(square_system(), evaluate_moments(kTwoAtoms, 4)));
  const auto match = testing::match_atoms(kTwoAtoms, m2);
  CHECK(match.ok);
  CHECK(match.max_point_error < 1e-12);
  CHECK(match.max_weight_error < 1e-12);

  try {
    expansion_to_measure(multivariate_binet(three_five_system(), three_five_sequence(8)));
    FAIL("expected NegativeWeight");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeWeight);
    CHECK(e.grid_index() == std::vector<std::size_t>{0, 0, 0});
  }
}

TEST_CASE("expansion_to_measure rejects complex atoms") {
  // s_k = 2 cos(k pi / 2): roots +-i with coefficient 1 each.
  const TruncatedSequence beta(1, 4, {2.0, 0.0, -2.0, 0.0, 2.0});
  const CharacteristicSystem sys{{UnivariatePoly{1.0, 0.0, 1.0}}, 0.0};
  const auto e = multivariate_binet(sys, beta);
  CHECK(e.source_residual < 1e-12);
  try {
    expansion_to_measure(e);
    FAIL("expected ComplexAtom");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ComplexAtom);
    CHECK(err.grid_index().size() == 1);
  }
}

TEST_CASE("expansion_to_measure prunes negligible coefficients") {
  // Grid {0,1,2} in one variable but only two atoms: c at x = 2 is zero.
  const AtomicMeasure mu{1, {{{0.0}, 1.0, {}}, {{1.0}, 2.0, {}}}};
  const CharacteristicSystem sys{{UnivariatePoly(testing::expand_roots({0.0, 1.0, 2.0}))}, 0.0};
  const auto m = expansion_to_measure(multivariate_binet(sys, evaluate_moments(mu, 6)));
  REQUIRE(m.atoms.size() == 2);
  CHECK(testing::match_atoms(mu, m).ok);
}

TEST_CASE("evaluate_moments examples") {
  const auto b1 = evaluate_moments({2, {{{1.0, 1.0}, 1.0, {}}}}, 4);
  for (double v : b1.values()) CHECK(v == 1.0);
  const auto b2 = evaluate_moments({1, {{{0.0}, 2.0, {}}}}, 4);
  CHECK(b2.values() == std::vector<double>{2.0, 0.0, 0.0, 0.0, 0.0});
  const auto b3 = evaluate_moments(kTwoAtoms, 2);
  CHECK(b3.values() == std::vector<double>{2.0, 1.0, 1.0, 1.0, 1.0, 1.0});
}

TEST_CASE("evaluate_moments agrees with the direct power oracle") {
  FixtureRng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    RandomMeasureSpec spec;
    spec.dim = 1 + static_cast<std::size_t>(trial % 3);
    const auto mu = random_grid_measure(rng, spec);
    const auto beta = evaluate_moments(mu, 6);
    const auto basis = enumerate_basis(spec.dim, 6);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const std::vector<int> idx(basis[r].exponents().begin(), basis[r].exponents().end());
      const double ref = testing::direct_moment(mu, idx);
      CHECK(std::abs(beta.at_rank(r) - ref) <= 1e-12 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("lagrange_interpolant examples") {
  const CharacteristicSystem unit{{UnivariatePoly{-1.0, 1.0}, UnivariatePoly{-1.0, 1.0}}, 0.0};
  const auto e1 = multivariate_binet(unit, ones(2, 2));
  const std::vector<std::size_t> g0{0, 0};
  CHECK(lagrange_interpolant(e1, g0) == MultivariatePoly::constant(2, 1.0));

  const auto e2 = multivariate_binet(square_system(), evaluate_moments(kTwoAtoms, 4));
  const auto x1 = MultivariatePoly::variable(2, 0);
  const auto x2 = MultivariatePoly::variable(2, 1);
  const auto one = MultivariatePoly::constant(2, 1.0);
  const std::vector<std::size_t> g11{1, 1};
  CHECK(lagrange_interpolant(e2, g11) == x1 * x2);
  CHECK(lagrange_interpolant(e2, g0) == (one - x1) * (one - x2));
  const std::vector<std::size_t> bad{0, 2};
  CHECK_THROWS_AS(lagrange_interpolant(e2, bad), Error);
}

TEST_CASE("binet reconstruction and extraction identities") {
  FixtureRng rng(37);
  for (int trial = 0; trial < 45; ++trial) {
    RandomMeasureSpec spec;
    spec.dim = 1 + static_cast<std::size_t>(trial % 3);
    const auto mu = random_grid_measure(rng, spec);
    const int tau = support_tau(mu);
    CAPTURE(trial);

    // Recurrences directly from the true coordinates.
    CharacteristicSystem sys;
    for (std::size_t l = 0; l < spec.dim; ++l) {
      std::vector<double> xs;
      for (const auto& a : mu.atoms) {
        if (std::find(xs.begin(), xs.end(), a.point[l]) == xs.end()) xs.push_back(a.point[l]);
      }
      sys.polys.emplace_back(testing::expand_roots(xs));
    }
    const auto beta = evaluate_moments(mu, 2 * (tau + 1));
    const auto e = multivariate_binet(sys, beta);
    const auto found = expansion_to_measure(e);
    const auto back = evaluate_moments(found, beta.max_degree());
    for (std::size_t r = 0; r < beta.size(); ++r) {
      CHECK(std::abs(back.at_rank(r) - beta.at_rank(r)) <= 1e-6 * (1.0 + std::abs(beta.at_rank(r))));
    }
    REQUIRE(testing::match_atoms(mu, found).ok);

    // Interpolants have degree sum_l (m_l - 1) = tau; M(tau) and M_(x_j)(tau) need degree 2 tau + 1.
    const auto ext = evaluate_moments(mu, 2 * tau + 1);
    const auto m = build_moment_matrix(ext, tau);
    for (const Atom& a : found.atoms) {
      const auto lag = lagrange_interpolant(e, a.grid_index);
      const double w = bilinear_form(lag, m, lag);
      CHECK(std::abs(w - a.weight) <= 1e-7 * (1.0 + a.weight));
      for (std::size_t j = 0; j < spec.dim; ++j) {
        const auto mx = build_localizing_matrix(ext, MultivariatePoly::variable(spec.dim, j), tau);
        const double x = bilinear_form(lag, mx, lag) / w;
        CHECK(std::abs(x - a.point[j]) <= 1e-7 * (1.0 + std::abs(a.point[j])));
      }
    }
  }
}
