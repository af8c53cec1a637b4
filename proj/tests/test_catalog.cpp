#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pjam/catalog.hpp"
#include "pjam/edgeflex.hpp"
#include "pjam/error.hpp"

using namespace pjam;

TEST_SUITE("catalog") {
  TEST_CASE("entries and order") {
    const auto& all = catalog();
    REQUIRE(all.size() == 3);
    CHECK(all[0].name == "one_disk_square");
    CHECK(all[1].name == "one_disk_triangular");
    CHECK(all[2].name == "dodecagon_16");
    for (const auto& e : all) {
      CAPTURE(e.name);
      CHECK(checkCatalogEntry(e).empty());
      CHECK(validate(e.packing).empty());
    }
    CHECK_THROWS_AS(catalogEntry("kagome"), InputError);
    CHECK_THROWS_AS(getPacking(""), InputError);
  }

  TEST_CASE("dodecagon census") {
    const PeriodicPacking p = getPacking("dodecagon_16");
    const Tensegrity t = detectContacts(p);
    CHECK(t.vertexCount() == 16);
    CHECK(t.contactCount() == 34);
    const FaceStructure f = traceFaces(t);
    CHECK(f.countFaces(3) == 12);
    CHECK(f.countFaces(4) == 5);
    CHECK(f.countFaces(12) == 1);
    CHECK(f.faces.size() == 18);
    CHECK(f.euler == 0);
    const double expected = 4.0 * std::numbers::pi / (6.0 * std::sqrt(3.0) + 11.0);
    CHECK(std::abs(density(p) - expected) <= 1e-12);
  }

  TEST_CASE("one-disk densities") {
    CHECK(density(getPacking("one_disk_square")) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
    CHECK(density(getPacking("one_disk_triangular")) ==
          doctest::Approx(std::numbers::pi / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(detectContacts(getPacking("one_disk_square")).contactCount() == 2);
    CHECK(detectContacts(getPacking("one_disk_triangular")).contactCount() == 3);
  }

  TEST_CASE("tampered entry reports failures") {
    CatalogEntry e = catalogEntry("dodecagon_16");
    e.contacts = 33;
    e.faceCensus[4] = 4;
    CHECK(checkCatalogEntry(e).size() >= 2);
  }
}
