#include "pjam/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pjam/error.hpp"
#include "pjam/linalg.hpp"

namespace pjam {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "pjam-report/1";

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

Eigen::VectorXd realVector(const json& j, int d, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) fail(where, "expected an array of " + std::to_string(d) + " numbers");
  Eigen::VectorXd v(d);
  for (int m = 0; m < d; ++m) v(m) = number(j[static_cast<std::size_t>(m)], where + "[" + std::to_string(m) + "]");
  return v;
}

Eigen::VectorXd anyVector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return realVector(j, static_cast<int>(j.size()), where);
}

Eigen::MatrixXd latticeFromJson(const json& j, int d, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) fail(where, "expected " + std::to_string(d) + " generators");
  Eigen::MatrixXd basis(d, d);
  for (int m = 0; m < d; ++m) basis.col(m) = realVector(j[static_cast<std::size_t>(m)], d, where + "[" + std::to_string(m) + "]");
  return basis;
}

json latticeToJson(const Lattice& l) {
  json out = json::array();
  for (int m = 0; m < l.dim(); ++m) out.push_back(std::vector<double>(l.basis.col(m).data(), l.basis.col(m).data() + l.dim()));
  return out;
}

json vectorJson(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<Contact> contactsFromJson(const json& j, int d, int n, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<Contact> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& c = j[k];
    Contact contact;
    contact.i = static_cast<int>(integer(field(c, "i", at), at + ".i"));
    contact.j = static_cast<int>(integer(field(c, "j", at), at + ".j"));
    if (contact.i < 0 || contact.i >= n || contact.j < 0 || contact.j >= n) fail(at, "vertex index out of range");
    const json& off = field(c, "offset", at);
    if (!off.is_array() || static_cast<int>(off.size()) != d) fail(at + ".offset", "expected " + std::to_string(d) + " integers");
    contact.offset.resize(d);
    for (int m = 0; m < d; ++m) contact.offset(m) = integer(off[static_cast<std::size_t>(m)], at + ".offset");
    if (c.contains("kind")) {
      if (!c["kind"].is_string()) fail(at + ".kind", "expected a string");
      contact.kind = kindFromString(c["kind"].get<std::string>());
    }
    out.push_back(contact);
  }
  return out;
}

json contactsToJson(const std::vector<Contact>& contacts) {
  json out = json::array();
  for (const Contact& c : contacts)
    out.push_back({{"i", c.i},
                   {"j", c.j},
                   {"offset", std::vector<std::int64_t>(c.offset.data(), c.offset.data() + c.offset.size())},
                   {"kind", std::string(toString(c.kind))}});
  return out;
}

json certificate(const std::string& type, const Eigen::VectorXd& values) { return {{"type", type}, {"values", vectorJson(values)}}; }

json reportShell(const Tensegrity& t, const std::string& kind) {
  return {{"schema", kSchema}, {"kind", kind}, {"tensegrity", tensegrityToJson(t)}, {"certificates", json::array()}};
}

bool nontrivial(const Eigen::VectorXd& v, const Eigen::MatrixXd& trivial) {
  const Eigen::MatrixXd rest = deflate<double>(Eigen::MatrixXd(v), trivial, 1e-8 * std::max(1.0, v.norm()));
  return rest.cols() > 0;
}

}  // namespace

PackingFile parsePackingFile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(text.size(), e.byte > 0 ? static_cast<std::size_t>(e.byte - 1) : 0);
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw InputError("line " + std::to_string(line) + ": malformed packing file (" + e.what() + ")");
  }
  const int d = static_cast<int>(integer(field(doc, "dim", "document"), "dim"));
  if (d < 1) fail("dim", "must be positive");
  PackingFile file;
  file.packing.lattice = makeLattice(latticeFromJson(field(doc, "lattice", "document"), d, "lattice"));
  const json& disks = field(doc, "disks", "document");
  if (!disks.is_array()) fail("disks", "expected an array");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const std::string at = "disks[" + std::to_string(i) + "]";
    Disk disk;
    disk.center = realVector(field(disks[i], "center", at), d, at + ".center");
    disk.radius = number(field(disks[i], "radius", at), at + ".radius");
    if (!(disk.radius > 0.0)) fail(at + ".radius", "must be positive");
    file.packing.disks.push_back(disk);
  }
  if (doc.contains("contacts"))
    file.contacts = contactsFromJson(doc["contacts"], d, static_cast<int>(file.packing.disks.size()), "contacts");
  return file;
}

PackingFile readPackingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parsePackingFile(ss.str());
}

std::string dumpPackingFile(const PackingFile& file) {
  json doc;
  doc["dim"] = file.packing.dim();
  doc["lattice"] = latticeToJson(file.packing.lattice);
  doc["disks"] = json::array();
  for (const Disk& disk : file.packing.disks) doc["disks"].push_back({{"center", vectorJson(disk.center)}, {"radius", disk.radius}});
  if (file.contacts) doc["contacts"] = contactsToJson(*file.contacts);
  return doc.dump(2) + "\n";
}

void writePackingFile(const std::filesystem::path& path, const PackingFile& file) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << dumpPackingFile(file);
}

Tensegrity toTensegrity(const PackingFile& file, double tol) {
  if (!file.contacts) return detectContacts(file.packing, tol);
  Tensegrity t;
  t.lattice = file.packing.lattice;
  for (const Disk& disk : file.packing.disks) t.vertices.push_back(disk.center);
  t.contacts = *file.contacts;
  validateTensegrity(t);
  return t;
}

json tensegrityToJson(const Tensegrity& t) {
  json verts = json::array();
  for (const auto& p : t.vertices) verts.push_back(vectorJson(p));
  return {{"dim", t.dim()}, {"lattice", latticeToJson(t.lattice)}, {"vertices", verts}, {"contacts", contactsToJson(t.contacts)}};
}

Tensegrity tensegrityFromJson(const json& j) {
  const int d = static_cast<int>(integer(field(j, "dim", "tensegrity"), "tensegrity.dim"));
  Tensegrity t;
  t.lattice = makeLattice(latticeFromJson(field(j, "lattice", "tensegrity"), d, "tensegrity.lattice"));
  const json& verts = field(j, "vertices", "tensegrity");
  if (!verts.is_array()) fail("tensegrity.vertices", "expected an array");
  for (std::size_t i = 0; i < verts.size(); ++i) t.vertices.push_back(realVector(verts[i], d, "tensegrity.vertices"));
  t.contacts = contactsFromJson(field(j, "contacts", "tensegrity"), d, t.vertexCount(), "tensegrity.contacts");
  validateTensegrity(t);
  return t;
}

json collectiveReportJson(const Tensegrity& t, const CollectiveVerdict& v) {
  json r = reportShell(t, "collective");
  r["verdict"] = {{"collectively_jammed", v.jammed}, {"bar_rigid", v.barRigid}, {"stress_exists", v.stress.has_value()}};
  if (v.stress) r["certificates"].push_back(certificate("stress", v.stress->perContact));
  if (v.flex) r["certificates"].push_back(certificate("flex", *v.flex));
  return r;
}

json strictReportJson(const Tensegrity& t, const StrictVerdict& v) {
  json r = reportShell(t, "strict");
  r["verdict"] = {{"strictly_jammed", v.jammed},
                  {"affinely_rigid", v.affine.rigid},
                  {"affine_nullity", v.affine.nullity},
                  {"trivial_nullity", v.affine.trivial},
                  {"strict_stress_exists", v.stress.stress.has_value()},
                  {"margin", std::isfinite(v.stress.margin) ? json(v.stress.margin) : json(nullptr)}};
  if (v.stress.stress) r["certificates"].push_back(certificate("strict_stress", v.stress.stress->perContact));
  if (!v.affine.rigid && v.affine.flexes.cols() > 0) r["certificates"].push_back(certificate("affine_flex", v.affine.flexes.col(0)));
  return r;
}

json nMinJson(const NMinResult& r) {
  json out = {{"bound", r.bound}};
  out["value"] = r.value ? json(*r.value) : json(nullptr);
  if (r.witness) {
    json cols = json::array();
    for (Eigen::Index c = 0; c < r.witness->coeffs.cols(); ++c) {
      std::vector<std::int64_t> col;
      for (Eigen::Index rr = 0; rr < r.witness->coeffs.rows(); ++rr) col.push_back(r.witness->coeffs(rr, c));
      cols.push_back(col);
    }
    out["sublattice"] = cols;
  }
  if (r.character) out["character"] = {{"numerators", r.character->numerators()}, {"denominator", r.character->denominator()}};
  return out;
}

json consistencyReportJson(const Tensegrity& t, const JammingReport& rep) {
  json r = reportShell(t, "consistency");
  double worstLifted = 0.0;
  double worstRescaled = 0.0;
  for (const auto& s : rep.scaling) {
    worstLifted = std::max(worstLifted, s.liftedResidual);
    worstRescaled = std::max(worstRescaled, s.rescaledResidual);
  }
  r["verdict"] = {{"collectively_jammed", rep.collective.jammed},
                  {"strictly_jammed", rep.strict.jammed},
                  {"n_min", nMinJson(rep.nMin)},
                  {"tested_index_bound", rep.testedIndexBound},
                  {"consistently_strictly_jammed_up_to_bound", rep.consistentStrict},
                  {"scaling_checks", rep.scaling.size()},
                  {"scaling_lifted_residual", worstLifted},
                  {"scaling_rescaled_residual", worstRescaled}};
  if (rep.collective.stress) r["certificates"].push_back(certificate("stress", rep.collective.stress->perContact));
  if (rep.collective.flex) r["certificates"].push_back(certificate("flex", *rep.collective.flex));
  if (rep.strict.stress.stress) r["certificates"].push_back(certificate("strict_stress", rep.strict.stress.stress->perContact));
  return r;
}

VerifyOutcome verifyReport(const json& report) {
  if (!report.is_object() || report.value("schema", "") != kSchema) throw InputError("not a pjam report");
  const Tensegrity t = tensegrityFromJson(field(report, "tensegrity", "report"));
  const json& certs = field(report, "certificates", "report");
  if (!certs.is_array()) fail("certificates", "expected an array");
  VerifyOutcome out;
  auto record = [&](bool good, const std::string& line) {
    out.ok = out.ok && good;
    out.lines.push_back(std::string(good ? "ok   " : "FAIL ") + line);
  };
  for (std::size_t c = 0; c < certs.size(); ++c) {
    const std::string at = "certificates[" + std::to_string(c) + "]";
    const std::string type = field(certs[c], "type", at).get<std::string>();
    const Eigen::VectorXd values = anyVector(field(certs[c], "values", at), at + ".values");
    const double scale = std::max(1.0, values.size() ? values.cwiseAbs().maxCoeff() : 0.0);
    if (type == "stress" || type == "strict_stress") {
      if (values.size() != t.contactCount()) fail(at, "stress has wrong length");
      const StressVector s{values};
      const double eq = equilibriumResidual(t, s);
      const bool signs = signMargin(t, s) > 0.0;
      bool good = eq <= 1e-8 * scale && signs;
      std::string line = type + ": equilibrium residual " + std::to_string(eq) + (signs ? ", signs ok" : ", sign violation");
      if (type == "strict_stress") {
        const double sr = strictResidual(t, s);
        good = good && sr <= 1e-8 * scale;
        line += ", -I residual " + std::to_string(sr);
      }
      record(good, line);
    } else if (type == "flex") {
      const Eigen::MatrixXd r = rigidityMatrix(t).matrix;
      if (values.size() != r.cols()) fail(at, "flex has wrong length");
      const Eigen::VectorXd image = r * values;
      bool signs = true;
      for (int k = 0; k < t.contactCount(); ++k) {
        const Kind kind = t.contacts[static_cast<std::size_t>(k)].kind;
        const double tol = 1e-8 * scale;
        if ((kind == Kind::bar && std::abs(image(k)) > tol) || (kind == Kind::strut && image(k) < -tol) ||
            (kind == Kind::cable && image(k) > tol))
          signs = false;
      }
      const bool moves = nontrivial(values, translationBasis(t));
      record(signs && moves, std::string("flex: ") + (signs ? "member conditions hold" : "member condition violated") +
                                 (moves ? ", nontrivial" : ", trivial"));
    } else if (type == "affine_flex") {
      const Eigen::MatrixXd r = affineRigidityMatrix(t).matrix;
      if (values.size() != r.cols()) fail(at, "affine flex has wrong length");
      const double res = (r * values).cwiseAbs().maxCoeff();
      const bool moves = nontrivial(values, affineTrivialBasis(t));
      record(res <= 1e-8 * scale && moves, "affine_flex: residual " + std::to_string(res) + (moves ? ", nontrivial" : ", trivial"));
    } else {
      fail(at, "unknown certificate type '" + type + "'");
    }
  }
  return out;
}

}  // namespace pjam
