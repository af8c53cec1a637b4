#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "pjam/error.hpp"
#include "pjam/packing.hpp"

using namespace pjam;

namespace {

PeriodicPacking square(double radius) {
  PeriodicPacking p;
  p.lattice = makeLattice(Eigen::Matrix2d::Identity());
  p.disks.push_back({Eigen::Vector2d::Zero(), radius});
  return p;
}

}  // namespace

TEST_SUITE("packing") {
  TEST_CASE("validation examples") {
    CHECK(validate(square(0.5)).empty());
    const auto bad = validate(square(0.6));
    REQUIRE(bad.size() == 2);
    for (const auto& o : bad) {
      CHECK(o.i == 0);
      CHECK(o.j == 0);
      CHECK(o.depth == doctest::Approx(0.2).epsilon(1e-12));
    }
    CHECK(validate(getPacking("dodecagon_16")).empty());
    CHECK_THROWS_AS(validate(square(0.0)), InputError);
    CHECK_THROWS_AS(validate(square(0.5), -1.0), InputError);
  }

  TEST_CASE("contact detection examples") {
    const Tensegrity sq = detectContacts(square(0.5));
    REQUIRE(sq.contactCount() == 2);
    CHECK(sq.contacts[0].offset == (IntVector(2) << 0, 1).finished());
    CHECK(sq.contacts[1].offset == (IntVector(2) << 1, 0).finished());
    for (const auto& c : sq.contacts) CHECK((c.kind == Kind::strut));
    CHECK(pjam::testing::catalogTensegrity("one_disk_triangular").contactCount() == 3);
    const Tensegrity dod = pjam::testing::catalogTensegrity("dodecagon_16");
    CHECK(dod.vertexCount() == 16);
    CHECK(dod.contactCount() == 34);
    for (const auto& c : dod.contacts) {
      CHECK(c.i <= c.j);
      if (c.i == c.j) CHECK(lexPositive(c.offset));
    }
    for (int k = 0; k < dod.contactCount(); ++k) CHECK(std::abs(edgeVector(dod, static_cast<std::size_t>(k)).norm() - 1.0) <= 1e-9);
  }

  TEST_CASE("density examples") {
    const double pi = std::numbers::pi;
    CHECK(density(square(0.5)) == doctest::Approx(pi / 4.0).epsilon(1e-14));
    CHECK(density(getPacking("one_disk_triangular")) == doctest::Approx(pi / std::sqrt(12.0)).epsilon(1e-14));
    CHECK(std::abs(density(getPacking("dodecagon_16")) - 4.0 * pi / (6.0 * std::sqrt(3.0) + 11.0)) <= 1e-12);
    CHECK(ballVolume(3, 1.0) == doctest::Approx(4.0 * pi / 3.0));
  }

  TEST_CASE("contacts are invariant under rigid motions") {
    const PeriodicPacking p = getPacking("dodecagon_16");
    const double angle = 0.37;
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    PeriodicPacking moved;
    moved.lattice = makeLattice(rot * p.lattice.basis);
    for (const auto& d : p.disks) moved.disks.push_back({rot * d.center + Eigen::Vector2d(0.3, -1.1), d.radius});
    const Tensegrity a = detectContacts(p);
    const Tensegrity b = detectContacts(moved);
    REQUIRE(a.contactCount() == b.contactCount());
    for (int k = 0; k < a.contactCount(); ++k) {
      CHECK(a.contacts[static_cast<std::size_t>(k)].i == b.contacts[static_cast<std::size_t>(k)].i);
      CHECK(a.contacts[static_cast<std::size_t>(k)].offset == b.contacts[static_cast<std::size_t>(k)].offset);
      CHECK((rot * edgeVector(a, static_cast<std::size_t>(k)) - edgeVector(b, static_cast<std::size_t>(k))).norm() < 1e-12);
    }
  }

  TEST_CASE("covers multiply contacts and keep density") {
    for (const char* name : {"one_disk_square", "one_disk_triangular", "dodecagon_16"}) {
      const PeriodicPacking p = getPacking(name);
      const int base = detectContacts(p).contactCount();
      for (std::int64_t m : {2, 3, 4}) {
        for (const auto& s : enumerateSublattices(2, m)) {
          const PeriodicPacking cover = coverPacking(p, s);
          CHECK(detectContacts(cover).contactCount() == m * base);
          CHECK(coverFramework(detectContacts(p), s).contactCount() == m * base);
          CHECK(density(cover) == doctest::Approx(density(p)).epsilon(1e-12));
        }
      }
    }
  }
}
