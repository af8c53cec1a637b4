#include "pjam/catalog.hpp"

#include <cmath>
#include <numbers>

#include "pjam/edgeflex.hpp"
#include "pjam/error.hpp"

namespace pjam {

namespace {

PeriodicPacking oneDisk(const Eigen::Matrix2d& basis) {
  PeriodicPacking p;
  p.lattice = makeLattice(basis);
  p.disks.push_back({Eigen::Vector2d::Zero(), 0.5});
  return p;
}

PeriodicPacking dodecagon16() {
  const double s3 = std::sqrt(3.0);
  const double a = (2.0 + s3) / 2.0;
  const double b = 0.5;
  const double c = (1.0 + s3) / 2.0;
  Eigen::Matrix2d basis;
  basis.col(0) << s3 + 1.0, -s3 - 2.0;
  basis.col(1) << s3 + 2.0, s3 + 1.0;
  PeriodicPacking p;
  p.lattice = makeLattice(basis);
  const double ring[12][2] = {{a, b},   {c, c},   {b, a},   {-b, a},  {-c, c},  {-a, b},
                              {-a, -b}, {-c, -c}, {-b, -a}, {b, -a},  {c, -c},  {a, -b}};
  for (const auto& v : ring) p.disks.push_back({Eigen::Vector2d(v[0], v[1]), 0.5});
  const double extra[4][2] = {{0.0, 1.0 + s3}, {1.0, 1.0 + s3}, {1.0 + s3, 0.0}, {0.0, -1.0 - s3}};
  for (const auto& v : extra) p.disks.push_back({Eigen::Vector2d(v[0], v[1]), 0.5});
  return p;
}

std::vector<CatalogEntry> build() {
  const double pi = std::numbers::pi;
  const double s3 = std::sqrt(3.0);
  std::vector<CatalogEntry> out;
  out.push_back({"one_disk_square", "one disk on the unit square lattice; collectively jammed, not strictly jammed, unjams on index 2",
                 oneDisk(Eigen::Matrix2d::Identity()), 1, 2, pi / 4.0, {{4, 1}}});
  Eigen::Matrix2d tri;
  tri << 1.0, 0.5, 0.0, s3 / 2.0;
  out.push_back({"one_disk_triangular", "hexagonal packing, one disk per cell; strictly jammed and consistently jammed",
                 oneDisk(tri), 1, 3, pi / std::sqrt(12.0), {{3, 2}}});
  out.push_back({"dodecagon_16", "16 disks around a regular dodecagon; consistently collectively jammed, not strictly jammed",
                 dodecagon16(), 16, 34, 4.0 * pi / (6.0 * s3 + 11.0), {{3, 12}, {4, 5}, {12, 1}}});
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalogEntry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw InputError("unknown catalog packing '" + std::string(name) + "'");
}

PeriodicPacking getPacking(std::string_view name) { return catalogEntry(name).packing; }

std::vector<std::string> checkCatalogEntry(const CatalogEntry& entry) {
  std::vector<std::string> failures;
  if (!validate(entry.packing, 1e-9).empty()) failures.push_back("overlapping disks");
  if (static_cast<int>(entry.packing.disks.size()) != entry.vertices) failures.push_back("vertex count");
  const Tensegrity t = detectContacts(entry.packing);
  if (t.contactCount() != entry.contacts) failures.push_back("contact count " + std::to_string(t.contactCount()));
  if (std::abs(density(entry.packing) - entry.density) > 1e-12) failures.push_back("density");
  if (entry.packing.dim() == 2) {
    const FaceStructure fs = traceFaces(t);
    if (fs.euler != 0) failures.push_back("euler characteristic");
    std::size_t total = 0;
    for (const auto& [sides, count] : entry.faceCensus) {
      total += static_cast<std::size_t>(count);
      if (fs.countFaces(sides) != count) failures.push_back("face census at " + std::to_string(sides) + " sides");
    }
    if (total != fs.faces.size()) failures.push_back("face count");
  }
  return failures;
}

}  // namespace pjam
