#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "pjam/error.hpp"
#include "pjam/lattice.hpp"

using namespace pjam;
using pjam::testing::columns;

namespace {

bool hasCharacter(const std::vector<QuotientCharacter>& chars, std::complex<double> mu, std::complex<double> mu2) {
  for (const auto& c : chars)
    if (std::abs(c.phase(0) - mu) < 1e-8 && std::abs(c.phase(1) - mu2) < 1e-8) return true;
  return false;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("dual basis examples") {
    CHECK(dualBasis(makeLattice(Eigen::Matrix2d::Identity())).isApprox(Eigen::Matrix2d::Identity()));
    CHECK(dualBasis(makeLattice(2.0 * Eigen::Matrix2d::Identity())).isApprox(0.5 * Eigen::Matrix2d::Identity()));
    Eigen::Matrix2d tri;
    tri << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
    Eigen::Matrix2d expect;
    expect << 1.0, -1.0 / std::sqrt(3.0), 0.0, 2.0 / std::sqrt(3.0);
    const Eigen::MatrixXd h = dualBasis(makeLattice(tri));
    CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * tri - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("singular lattice is rejected") {
    Eigen::Matrix2d b;
    b << 1, 2, 2, 4;
    CHECK_THROWS_AS(makeLattice(b), InputError);
  }

  TEST_CASE("Smith normal form examples") {
    CHECK(smithNormalForm(diagonalSublattice({2, 3})).factors == (IntVector(2) << 1, 6).finished());
    CHECK(smithNormalForm(diagonalSublattice({1, 1})).factors == (IntVector(2) << 1, 1).finished());
    const Sublattice s = columns(3, 2, 3, -2);
    const QuotientGroup q = smithNormalForm(s);
    CHECK(q.factors == (IntVector(2) << 1, 12).finished());
    CHECK(q.order() == 12);
    IntMatrix diag = IntMatrix::Zero(2, 2);
    diag(0, 0) = 1;
    diag(1, 1) = 12;
    CHECK((multiply(multiply(q.left, s.coeffs), q.right) - diag).isZero());
    CHECK_THROWS_AS(makeSublattice(IntMatrix::Zero(2, 2)), InputError);
  }

  TEST_CASE("sublattice counts follow the divisor sum") {
    CHECK(enumerateSublattices(2, 1).size() == 1);
    CHECK(enumerateSublattices(2, 1)[0].coeffs == IntMatrix::Identity(2, 2));
    CHECK(enumerateSublattices(2, 2).size() == 3);
    CHECK(enumerateSublattices(2, 4).size() == 7);
    for (std::int64_t m = 1; m <= 24; ++m) {
      const auto subs = enumerateSublattices(2, m);
      CHECK(static_cast<std::int64_t>(subs.size()) == divisorSum(m));
      for (const auto& s : subs) CHECK(s.index() == m);
    }
    CHECK(divisorSum(12) == 28);
    CHECK_THROWS_AS(enumerateSublattices(2, 0), InputError);
  }

  TEST_CASE("character examples") {
    const Sublattice id = diagonalSublattice({1, 1});
    auto chars = enumerateCharacters(smithNormalForm(id), id);
    REQUIRE(chars.size() == 1);
    CHECK(chars[0].isTrivial());

    const Sublattice two = diagonalSublattice({2, 1});
    chars = enumerateCharacters(smithNormalForm(two), two);
    REQUIRE(chars.size() == 2);
    CHECK(chars[0].isTrivial());
    CHECK(hasCharacter(chars, -1.0, 1.0));

    const Sublattice s = columns(3, 2, 3, -2);
    chars = enumerateCharacters(smithNormalForm(s), s);
    CHECK(chars.size() == 12);
    const double third = 2.0 * std::numbers::pi / 3.0;
    CHECK(hasCharacter(chars, 1.0, -1.0));
    CHECK(hasCharacter(chars, std::polar(1.0, third), 1.0));
    CHECK(hasCharacter(chars, std::polar(1.0, 2.0 * third), 1.0));
  }

  TEST_CASE("characters are trivial on the sublattice and orthogonal") {
    for (std::int64_t m : {2, 5, 6, 12}) {
      for (const auto& s : enumerateSublattices(2, m)) {
        const auto chars = enumerateCharacters(smithNormalForm(s), s);
        CHECK(static_cast<std::int64_t>(chars.size()) == m);
        const Transversal tr(s);
        CHECK(static_cast<std::int64_t>(tr.size()) == m);
        for (const auto& chi : chars) {
          for (int c = 0; c < 2; ++c) CHECK(std::abs(chi.at(s.coeffs.col(c)) - 1.0) < 1e-10);
          if (chi.isTrivial()) continue;
          std::complex<double> sum = 0.0;
          for (std::size_t t = 0; t < tr.size(); ++t) sum += chi.at(tr.digit(t));
          CHECK(std::abs(sum) < 1e-8);
        }
      }
    }
  }

  TEST_CASE("character arithmetic is exact") {
    const QuotientCharacter chi({1, 3}, 4);
    CHECK(chi.phase(0) == std::complex<double>(0.0, 1.0));
    CHECK(chi.phase(1) == std::complex<double>(0.0, -1.0));
    CHECK(chi.order(0) == 4);
    IntVector a(2), b(2);
    a << 2, 1;
    b << -1, 5;
    CHECK(std::abs(chi.at(a + b) - chi.at(a) * chi.at(b)) < 1e-12);
    CHECK(chi.conjugate().phase(0) == std::conj(chi.phase(0)));
    CHECK(QuotientCharacter({2, 6}, 8) == QuotientCharacter({1, 3}, 4));
  }

  TEST_CASE("transversal reduction") {
    const Sublattice s = columns(3, 2, 3, -2);
    const Transversal tr(s);
    IntVector v(2);
    v << 7, -5;
    const auto [idx, coset] = tr.reduce(v);
    CHECK((tr.digit(idx) + multiply(tr.hermite(), IntMatrix(coset)) - v).isZero());
  }

  TEST_CASE("lattice points near a target") {
    const Lattice l = makeLattice(Eigen::Matrix2d::Identity());
    CHECK(latticePointsNear(l, Eigen::Vector2d::Zero(), 1.0).size() == 5);
    CHECK(latticePointsNear(l, Eigen::Vector2d(0.5, 0.5), 0.75).size() == 4);
  }
}
