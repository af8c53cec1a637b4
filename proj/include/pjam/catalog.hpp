#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pjam/packing.hpp"

namespace pjam {

struct CatalogEntry {
  std::string name;
  std::string description;
  PeriodicPacking packing;
  int vertices = 0;
  int contacts = 0;
  double density = 0.0;
  std::map<std::size_t, int> faceCensus;  ///< sides -> count
};

/// one_disk_square, one_disk_triangular, dodecagon_16, in that order.
const std::vector<CatalogEntry>& catalog();

/// Throws InputError for unknown names.
const CatalogEntry& catalogEntry(std::string_view name);
PeriodicPacking getPacking(std::string_view name);

/// Invariant failures of an entry (empty when all hold).
std::vector<std::string> checkCatalogEntry(const CatalogEntry& entry);

}  // namespace pjam
