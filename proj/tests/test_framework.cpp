#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "pjam/error.hpp"
#include "pjam/framework.hpp"
#include "pjam/linalg.hpp"

using namespace pjam;
using pjam::testing::catalogTensegrity;

namespace {

Tensegrity twoVertexBar() {
  Tensegrity t;
  t.lattice = makeLattice(3.0 * Eigen::Matrix2d::Identity());
  t.vertices = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)};
  t.contacts.push_back({0, 1, IntVector::Zero(2), Kind::bar});
  return t;
}

}  // namespace

TEST_SUITE("framework") {
  TEST_CASE("edge vector examples") {
    CHECK(edgeVector(twoVertexBar(), 0).isApprox(Eigen::Vector2d(1, 0)));
    const Tensegrity sq = catalogTensegrity("one_disk_square");
    CHECK(edgeVector(sq, 1).isApprox(Eigen::Vector2d(1, 0)));
    const Tensegrity tri = catalogTensegrity("one_disk_triangular");
    bool found = false;
    for (int k = 0; k < tri.contactCount(); ++k)
      if (tri.contacts[static_cast<std::size_t>(k)].offset == (IntVector(2) << 0, 1).finished()) {
        found = true;
        CHECK((edgeVector(tri, static_cast<std::size_t>(k)) - Eigen::Vector2d(0.5, std::sqrt(3.0) / 2.0)).norm() < 1e-15);
      }
    CHECK(found);
  }

  TEST_CASE("invalid tensegrities are rejected") {
    Tensegrity t = twoVertexBar();
    t.vertices[1] = t.vertices[0];
    CHECK_THROWS_AS(validateTensegrity(t), InputError);
    t = twoVertexBar();
    t.contacts[0].j = 5;
    CHECK_THROWS_AS(validateTensegrity(t), InputError);
  }

  TEST_CASE("periodic rigidity matrix examples") {
    CHECK(rigidityMatrix(catalogTensegrity("one_disk_square")).matrix.isZero());
    Eigen::MatrixXd row(1, 4);
    row << -1, 0, 1, 0;
    CHECK(rigidityMatrix(twoVertexBar()).matrix == row);
    const Tensegrity dod = catalogTensegrity("dodecagon_16");
    CHECK((rigidityMatrix(dod).matrix * translationBasis(dod)).norm() < 1e-12);
  }

  TEST_CASE("affine rigidity matrix") {
    for (const char* name : {"one_disk_square", "one_disk_triangular", "dodecagon_16"}) {
      const Tensegrity t = catalogTensegrity(name);
      CHECK((affineRigidityMatrix(t).matrix * affineTrivialBasis(t)).norm() < 1e-12);
    }
    CHECK(rankNullspace(affineRigidityMatrix(catalogTensegrity("one_disk_square")).matrix).nullity == 4);
    CHECK(rankNullspace(affineRigidityMatrix(catalogTensegrity("one_disk_triangular")).matrix).nullity == 3);
  }

  TEST_CASE("phase matrix examples") {
    for (const char* name : {"one_disk_square", "dodecagon_16"}) {
      const Tensegrity t = catalogTensegrity(name);
      const Eigen::MatrixXcd ph = phaseMatrix(t, QuotientCharacter::trivial(2)).matrix;
      CHECK(ph.real() == rigidityMatrix(t).matrix);
      CHECK(ph.imag().isZero(0.0));
    }
    const Tensegrity sq = catalogTensegrity("one_disk_square");
    // contact 1 is horizontal, contact 0 vertical
    const Eigen::MatrixXcd m = phaseMatrix(sq, QuotientCharacter({1, 0}, 2)).matrix;
    CHECK(std::abs(m(1, 0) - (-2.0)) < 1e-15);
    CHECK(std::abs(m(1, 1)) < 1e-15);
    CHECK(m.row(0).norm() < 1e-15);
    const auto rr = rankNullspace(m);
    REQUIRE(rr.nullity == 1);
    CHECK(std::abs(rr.nullspace(0, 0)) < 1e-12);
    CHECK(std::abs(std::abs(rr.nullspace(1, 0)) - 1.0) < 1e-12);
    CHECK(rankNullspace(phaseMatrix(sq, QuotientCharacter({1, 0}, 3)).matrix).nullity == 1);
  }

  TEST_CASE("cover framework counts") {
    const Tensegrity sq = catalogTensegrity("one_disk_square");
    const Tensegrity same = coverFramework(sq, diagonalSublattice({1, 1}));
    CHECK(same.vertexCount() == 1);
    CHECK(same.contactCount() == 2);
    const Tensegrity c21 = coverFramework(sq, diagonalSublattice({2, 1}));
    CHECK(c21.vertexCount() == 2);
    CHECK(c21.contactCount() == 4);
    const Tensegrity dod = coverFramework(catalogTensegrity("dodecagon_16"), diagonalSublattice({2, 2}));
    CHECK(dod.vertexCount() == 64);
    CHECK(dod.contactCount() == 136);
    validateTensegrity(dod);
    for (int k = 0; k < dod.contactCount(); ++k) CHECK(std::abs(edgeVector(dod, static_cast<std::size_t>(k)).norm() - 1.0) < 1e-9);
  }

  TEST_CASE("phase flexes lift to cover flexes") {
    for (const char* name : {"one_disk_square", "one_disk_triangular", "dodecagon_16"}) {
      const Tensegrity t = catalogTensegrity(name);
      for (std::int64_t m : {2, 3, 4}) {
        for (const auto& s : enumerateSublattices(2, m)) {
          const Tensegrity cover = coverFramework(t, s);
          const Eigen::MatrixXcd coverR = rigidityMatrix(cover).matrix.cast<std::complex<double>>();
          for (const auto& chi : enumerateCharacters(smithNormalForm(s), s)) {
            const auto rr = rankNullspace(phaseMatrix(t, chi).matrix);
            for (Eigen::Index c = 0; c < rr.nullspace.cols(); ++c) {
              const Eigen::VectorXcd q = liftPhaseFlex(t, s, chi, rr.nullspace.col(c));
              CHECK((coverR * q).norm() <= 1e-9);
              CHECK((coverR * Eigen::VectorXcd(q.real().cast<std::complex<double>>())).norm() <= 1e-9);
            }
          }
        }
      }
    }
  }

  TEST_CASE("flex vectors stack and unstack") {
    Eigen::VectorXd v(2 * 3 + 4);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = static_cast<double>(i);
    const auto f = FlexVector<double>::fromStacked(v, 2, 3, true);
    CHECK(f.perVertex(1, 2) == 5.0);
    CHECK((*f.affine)(1, 0) == 8.0);
    CHECK(f.stacked() == v);
  }

  TEST_CASE("negated affine flexes stay in the kernel") {
    const Tensegrity sq = catalogTensegrity("one_disk_square");
    const Eigen::MatrixXd a = affineRigidityMatrix(sq).matrix;
    const auto rr = rankNullspace(a);
    for (Eigen::Index c = 0; c < rr.nullspace.cols(); ++c) CHECK((a * (-rr.nullspace.col(c))).norm() < 1e-12);
  }

  TEST_CASE("member kinds parse") {
    CHECK((kindFromString("cable") == Kind::cable));
    CHECK(toString(Kind::strut) == "strut");
    CHECK_THROWS_AS(kindFromString("rope"), InputError);
  }
}
