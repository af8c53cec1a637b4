#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pjam/framework.hpp"
#include "pjam/jamming.hpp"
#include "pjam/packing.hpp"

namespace pjam {

/// Packing document: dim, lattice (generator columns), disks, optional contacts.
struct PackingFile {
  PeriodicPacking packing;
  std::optional<std::vector<Contact>> contacts;
};

/// Throws InputError with the line (syntax) or field path (content) at fault.
PackingFile parsePackingFile(const std::string& text);
PackingFile readPackingFile(const std::filesystem::path& path);
std::string dumpPackingFile(const PackingFile& file);
void writePackingFile(const std::filesystem::path& path, const PackingFile& file);

/// Explicit contacts when present, detected tangencies otherwise.
Tensegrity toTensegrity(const PackingFile& file, double tol = -1.0);

nlohmann::json tensegrityToJson(const Tensegrity& t);
Tensegrity tensegrityFromJson(const nlohmann::json& j);

nlohmann::json collectiveReportJson(const Tensegrity& t, const CollectiveVerdict& v);
nlohmann::json strictReportJson(const Tensegrity& t, const StrictVerdict& v);
nlohmann::json consistencyReportJson(const Tensegrity& t, const JammingReport& r);
nlohmann::json nMinJson(const NMinResult& r);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> lines;
};

/// Re-checks every certificate carried by a report.
VerifyOutcome verifyReport(const nlohmann::json& report);

}  // namespace pjam
