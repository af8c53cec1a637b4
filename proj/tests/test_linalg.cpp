#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pjam/error.hpp"
#include "pjam/linalg.hpp"

using namespace pjam;

TEST_SUITE("linalg") {
  TEST_CASE("rank examples") {
    const auto id = rankNullspace(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)));
    CHECK(id.rank == 3);
    CHECK(id.nullity == 0);
    const auto zero = rankNullspace(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 4)));
    CHECK(zero.nullity == 4);
    CHECK(zero.rank == 0);
    Eigen::Vector3d u(1, 2, 3), v(-1, 0, 2);
    const auto outer = rankNullspace(Eigen::MatrixXd(u * v.transpose()));
    CHECK(outer.rank == 1);
    CHECK(outer.nullity == 2);
    CHECK((Eigen::MatrixXd(u * v.transpose()) * outer.nullspace).norm() < 1e-12);
  }

  TEST_CASE("rank of transpose matches") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd a(5, 3), b(3, 6);
      for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
      for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
      const Eigen::MatrixXd m = a * b;
      CHECK(rankNullspace(m).rank == 3);
      CHECK(rankNullspace(Eigen::MatrixXd(m.transpose())).rank == 3);
    }
  }

  TEST_CASE("nullspace basis is orthonormal and sent to zero") {
    Eigen::MatrixXd m(2, 4);
    m << 1, 2, 0, -1, 0, 1, 1, 1;
    const auto r = rankNullspace(m);
    CHECK(r.nullity == 2);
    CHECK((r.nullspace.transpose() * r.nullspace - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
    CHECK((m * r.nullspace).norm() < 1e-12);
    CHECK(r.singularValues(0) >= r.singularValues(1));
  }

  TEST_CASE("complex rank") {
    Eigen::MatrixXcd m(2, 2);
    m << std::complex<double>(1, 1), 2.0, std::complex<double>(2, 2), 4.0;
    CHECK(rankNullspace(m).nullity == 1);
    CHECK(smallestSingularValue(m) < 1e-12);
  }

  TEST_CASE("non-finite entries are rejected") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(rankNullspace(m), InputError);
  }

  TEST_CASE("deflation removes a known subspace") {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(3, 2);
    Eigen::MatrixXd trivial(3, 1);
    trivial << 1, 1, 0;
    const Eigen::MatrixXd rest = deflate<double>(basis, trivial);
    REQUIRE(rest.cols() == 1);
    CHECK(std::abs(rest.col(0).dot(trivial.col(0))) < 1e-12);
    CHECK(deflate<double>(trivial, basis).cols() == 0);
  }
}
