#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "pjam/error.hpp"
#include "pjam/framework.hpp"
#include "pjam/lp.hpp"

using namespace pjam;

TEST_SUITE("lp") {
  TEST_CASE("max x subject to x <= 3") {
    LinearProgram lp(1);
    lp.objective(0) = 1.0;
    lp.addUpperInequality(Eigen::RowVectorXd::Ones(1), 3.0);
    const LpOutcome out = solveLp(lp);
    CHECK((out.status == LpStatus::optimal));
    CHECK(out.optimum == doctest::Approx(3.0).epsilon(1e-12));
  }

  TEST_CASE("x >= 1 and x <= 0 is infeasible") {
    LinearProgram lp(1);
    lp.addLowerInequality(Eigen::RowVectorXd::Ones(1), 1.0);
    lp.addUpperInequality(Eigen::RowVectorXd::Ones(1), 0.0);
    CHECK((solveLp(lp).status == LpStatus::infeasible));
  }

  TEST_CASE("unbounded objective") {
    LinearProgram lp(2);
    lp.objective << 1.0, 1.0;
    lp.lower.setZero();
    Eigen::RowVectorXd row(2);
    row << 1.0, -1.0;
    lp.addUpperInequality(row, 1.0);
    CHECK((solveLp(lp).status == LpStatus::unbounded));
  }

  TEST_CASE("bounds and equalities") {
    // max 2x + y with x + y = 4, 0 <= x <= 3, y free -> x = 3, y = 1
    LinearProgram lp(2);
    lp.objective << 2.0, 1.0;
    lp.lower(0) = 0.0;
    lp.upper(0) = 3.0;
    lp.addEquality(Eigen::RowVectorXd::Ones(2), 4.0);
    const LpOutcome out = solveLp(lp);
    REQUIRE((out.status == LpStatus::optimal));
    CHECK(out.witness(0) == doctest::Approx(3.0));
    CHECK(out.witness(1) == doctest::Approx(1.0));
    CHECK(out.optimum == doctest::Approx(7.0));
  }

  TEST_CASE("dimension mismatch is an input error") {
    LinearProgram lp(2);
    CHECK_THROWS_AS(lp.addEquality(Eigen::RowVectorXd::Ones(3), 1.0), InputError);
    lp.lower.resize(1);
    CHECK_THROWS_AS(solveLp(lp), InputError);
  }

  TEST_CASE("strut slack LP on the one-disk square has optimum 0") {
    const Tensegrity t = pjam::testing::catalogTensegrity("one_disk_square");
    const Eigen::MatrixXd r = rigidityMatrix(t).matrix;
    const Eigen::Index nd = r.cols();
    const Eigen::Index e = r.rows();
    LinearProgram lp(nd + e);
    for (Eigen::Index k = 0; k < e; ++k) {
      lp.objective(nd + k) = 1.0;
      lp.upper(nd + k) = 1.0;
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nd + e);
      row.head(nd) = -r.row(k);
      row(nd + k) = 1.0;
      lp.addUpperInequality(row, 0.0);
    }
    for (int a = 0; a < 2; ++a) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nd + e);
      row(a) = 1.0;
      lp.addEquality(row, 0.0);
    }
    const LpOutcome out = solveLp(lp);
    REQUIRE((out.status == LpStatus::optimal));
    CHECK(std::abs(out.optimum) < 1e-12);
  }

  TEST_CASE("duality spot check on random bounded programs") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    int optimal = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + trial % 4;
      const int m = 2 + trial % 5;
      LinearProgram lp(n);
      lp.lower.setZero();
      for (int j = 0; j < n; ++j) lp.objective(j) = u(rng);
      for (int i = 0; i < m; ++i) {
        Eigen::RowVectorXd row(n);
        for (int j = 0; j < n; ++j) row(j) = pos(rng) * (u(rng) > -0.7 ? 1.0 : -0.2);
        lp.addUpperInequality(row, pos(rng));
      }
      const LpOutcome out = solveLp(lp);
      if (out.status != LpStatus::optimal) continue;
      ++optimal;
      CHECK(constraintViolation(lp, out.witness) <= 1e-8);
      REQUIRE(out.leDuals.size() == m);
      CHECK(out.leDuals.minCoeff() >= -1e-9);
      CHECK(std::abs(out.leDuals.dot(lp.leRhs) - out.optimum) <= 1e-6);
      // dual feasibility: A^T y >= c
      CHECK(((lp.leMatrix.transpose() * out.leDuals - lp.objective).minCoeff()) >= -1e-8);
    }
    CHECK(optimal >= 20);
  }

  TEST_CASE("identical inputs give identical outcomes") {
    LinearProgram lp(3);
    lp.objective << 1.0, 1.0, 1.0;
    lp.lower.setZero();
    lp.addUpperInequality((Eigen::RowVectorXd(3) << 1, 1, 0).finished(), 1.0);
    lp.addUpperInequality((Eigen::RowVectorXd(3) << 0, 1, 1).finished(), 1.0);
    lp.addUpperInequality((Eigen::RowVectorXd(3) << 1, 0, 1).finished(), 1.0);
    const LpOutcome a = solveLp(lp);
    const LpOutcome b = solveLp(lp);
    CHECK(a.optimum == doctest::Approx(1.5));
    CHECK(a.witness == b.witness);
    CHECK(a.pivots == b.pivots);
  }
}
