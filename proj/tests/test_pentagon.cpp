#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "pjam/error.hpp"
#include "pjam/pentagon.hpp"

using namespace pjam;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

cd unit(double theta) { return std::polar(1.0, theta); }

// Phase pair on the flex condition: Re mu' = 1 + x (Re mu - 1), when that lies in [-1, 1].
std::optional<std::pair<cd, cd>> onCondition(const PentagonAngles& a, double theta, bool flip) {
  const double x = shapeConstant(a);
  const double re = 1.0 + x * (std::cos(theta) - 1.0);
  if (re < -1.0 || re > 1.0) return std::nullopt;
  const double thetaPrime = std::acos(re) * (flip ? -1.0 : 1.0);
  return std::make_pair(unit(theta), unit(thetaPrime));
}

}  // namespace

TEST_SUITE("pentagon") {
  TEST_CASE("reference realization") {
    const PentagonAngles a = referenceRealization();
    CHECK(closureResidual(a) <= 1e-12);
    CHECK(a.delta == doctest::Approx(pi - 2.0 * std::asin(0.3)).epsilon(1e-15));
    CHECK(2.0 * a.phi - a.beta == doctest::Approx(a.gamma).epsilon(1e-14));
    CHECK(2.0 * a.phi - a.alpha == doctest::Approx(a.delta).epsilon(1e-14));
    CHECK(std::abs(shapeConstant(a) - 1.619) <= 1e-3);
  }

  TEST_CASE("shape constant trivial cases") {
    PentagonAngles a{0.0, 0.7, 2.1, 2.1, 1.0};
    CHECK(shapeConstant(a) == doctest::Approx(0.0));
    a.delta = a.beta;
    CHECK(shapeConstant(a) == doctest::Approx(1.0));
    a.gamma = a.beta + pi;
    CHECK_THROWS_AS(shapeConstant(a), InputError);
    CHECK_THROWS_AS(shapeConstant(PentagonAngles{0.0, pi, 2.0, 1.0, 0.5}), InputError);
  }

  TEST_CASE("determinant examples") {
    const PentagonAngles a = referenceRealization();
    CHECK(std::abs(flexDeterminant(a, 1.0, 1.0)) <= 1e-14);
    const CriticalRealPart c = criticalRealPart(a, -1.0);
    CHECK(c.value == doctest::Approx(1.0 - 2.0 * shapeConstant(a)).epsilon(1e-12));
    CHECK_FALSE(c.onUnitCircle);
    CHECK(std::abs(flexDeterminant(a, unit(pi / 3), unit(pi / 7))) > 1e-4);
    for (const auto& root : quadraticRoots(quadratic(a, -1.0)))
      CHECK(std::abs(flexDeterminant(a, -1.0, root)) <= 1e-10);
  }

  TEST_CASE("quadratic coefficients") {
    const PentagonAngles a = referenceRealization();
    for (double theta : {0.3, 1.1, 2.0, pi}) {
      const QuadraticCoefficients q = quadratic(a, unit(theta));
      CHECK(q.a == q.c);
    }
    const QuadraticCoefficients one = quadratic(a, 1.0);
    CHECK(one.b == doctest::Approx(-2.0 * one.a).epsilon(1e-14));
    for (const auto& r : quadraticRoots(one)) CHECK(std::abs(r - 1.0) <= 1e-7);
    CHECK(criticalRealPart(a, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));

    PentagonAngles swapped = a;
    std::swap(swapped.beta, swapped.gamma);
    CHECK(quadratic(swapped, 1.0).a == doctest::Approx(-one.a).epsilon(1e-14));
    CHECK(criticalRealPart(swapped, 1.0).value == doctest::Approx(criticalRealPart(a, 1.0).value).epsilon(1e-14));
  }

  TEST_CASE("root product and unit-circle dichotomy") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> shift(-0.1, 0.1);
    for (int s = 0; s < 200; ++s) {
      const PentagonAngles a = solveSymmetricPentagon(shift(rng), referenceRealization().phi);
      const cd mu = unit(angle(rng));
      const auto roots = quadraticRoots(quadratic(a, mu));
      CHECK(std::abs(roots[0] * roots[1] - 1.0) <= 1e-10);
      const bool unitRoots = std::abs(std::abs(roots[0]) - 1.0) <= 1e-8 && std::abs(std::abs(roots[1]) - 1.0) <= 1e-8;
      CHECK(criticalRealPart(a, mu).onUnitCircle == unitRoots);
    }
  }

  TEST_CASE("determinant agrees with the predicate on 100 samples") {
    std::mt19937 rng(20240917u);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> shift(-0.1, 0.1);
    const double phi = referenceRealization().phi;
    int constructed = 0;
    int agreements = 0;
    int samples = 0;
    while (samples < 100) {
      const PentagonAngles a = solveSymmetricPentagon(shift(rng), phi);
      cd mu = unit(angle(rng));
      cd muPrime = unit(angle(rng));
      if (samples % 2 == 0) {
        const double lo = std::acos(std::max(-1.0, 1.0 - 2.0 / shapeConstant(a)));
        std::uniform_real_distribution<double> near(-lo, lo);
        const auto pair = onCondition(a, near(rng), samples % 4 == 0);
        if (!pair || std::abs(pair->first - 1.0) < 1e-3) continue;
        std::tie(mu, muPrime) = *pair;
        ++constructed;
      }
      ++samples;
      const bool det = normalizedFlexDeterminant(a, mu, muPrime) <= 1e-8;
      const bool pred = phaseFlexPredicate(a, mu, muPrime);
      agreements += det == pred ? 1 : 0;
      CHECK(det == pred);
    }
    CHECK(constructed == 50);
    CHECK(agreements == 100);
  }

  TEST_CASE("predicate edge cases") {
    const PentagonAngles a = referenceRealization();
    CHECK_THROWS_AS(phaseFlexPredicate(a, 1.0, 1.0), InputError);
    CHECK_FALSE(phaseFlexPredicate(a, 1.0, unit(0.5)));
    const auto pair = onCondition(a, 0.4, false);
    REQUIRE(pair);
    CHECK(phaseFlexPredicate(a, pair->first, pair->second));
    CHECK(phaseFlexPredicate(a, pair->first, std::conj(pair->second)));
  }

  TEST_CASE("realization rigidity") {
    const PentagonAngles a = referenceRealization();
    CHECK(realizationRigidityCheck(a));
    CHECK(realizationConditioning(a) > 1e-6);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> shift(-0.05, 0.05);
    for (int s = 0; s < 10; ++s) {
      PentagonAngles p = a;
      p.alpha += shift(rng);
      p.beta += shift(rng);
      p.gamma += shift(rng);
      p.delta += shift(rng);
      p.phi += shift(rng);
      CHECK(realizationRigidityCheck(p));
    }
  }

  TEST_CASE("symmetric family") {
    const PentagonAngles a = referenceRealization();
    const PentagonAngles b = solveSymmetricPentagon(a.alpha, a.phi);
    CHECK(b.beta == doctest::Approx(a.beta).epsilon(1e-9));
    CHECK(b.gamma == doctest::Approx(a.gamma).epsilon(1e-9));
    CHECK(b.delta == doctest::Approx(a.delta).epsilon(1e-9));
    for (double alpha : {-0.15, -0.05, 0.05, 0.15}) {
      const PentagonAngles p = solveSymmetricPentagon(alpha, a.phi);
      CHECK(closureResidual(p) <= 1e-10);
      CHECK(p.delta == 2.0 * p.phi - p.alpha);
      CHECK(p.gamma == 2.0 * p.phi - p.beta);
    }
    const double h = 1e-6;
    const double dBeta = (solveSymmetricPentagon(h, a.phi).beta - solveSymmetricPentagon(-h, a.phi).beta) / (2.0 * h);
    const double dDelta = (solveSymmetricPentagon(h, a.phi).delta - solveSymmetricPentagon(-h, a.phi).delta) / (2.0 * h);
    CHECK(dBeta == doctest::Approx(-std::sqrt(91.0) / 6.0).epsilon(1e-6));
    CHECK(symmetricFamilyDirection(a)[1] == doctest::Approx(-std::sqrt(91.0) / 6.0).epsilon(1e-12));
    CHECK(dDelta == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK_THROWS_AS(solveSymmetricPentagon(1.5, a.phi), InputError);
  }

  TEST_CASE("shape derivative") {
    const PentagonAngles a = referenceRealization();
    const double fd = shapeDerivativeFiniteDifference(a);
    CHECK(fd != 0.0);
    CHECK(shapeDerivative(a, symmetricFamilyDirection(a)) == doctest::Approx(fd).epsilon(1e-4));
    CHECK(shapeDerivative(a, nominalFamilyDirection()) != 0.0);
    CHECK(shapeDerivative(a, AngleDirection{}) == 0.0);
  }

  TEST_CASE("inverse shape search") {
    const PentagonAngles a = referenceRealization();
    const auto back = findShapeForX(shapeConstant(a), a.phi);
    REQUIRE(back);
    CHECK(std::abs(back->alpha) <= 1e-8);
    const ShapeMinimum m = symmetricShapeMinimum(a.phi);
    CHECK(m.x == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-9));
    CHECK_FALSE(findShapeForX(1.60, a.phi));
    const auto reach = findShapeForX(1.65, a.phi);
    REQUIRE(reach);
    CHECK(std::abs(shapeConstant(*reach) - 1.65) <= 1e-8);
    CHECK_FALSE(findShapeForX(50.0, a.phi));
  }
}
