// pjam: jamming analysis of periodic disk and sphere packings.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pjam/catalog.hpp"
#include "pjam/error.hpp"
#include "pjam/io.hpp"
#include "pjam/jamming.hpp"
#include "pjam/pentagon.hpp"
#include "pjam/spectrum.hpp"

using namespace pjam;
using nlohmann::json;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 10;
constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

struct Options {
  std::string input;
  double tol = -1.0;
  bool json = false;
  int threads = 0;
  std::int64_t maxIndex = 6;
  int grid = 16;
  std::string out;
  std::vector<std::int64_t> sublattice;
  std::string name;
  double x = 0.0;
  bool checkRealization = false;
  int scanPhases = 0;
};

// "catalog:NAME" reads a built-in packing; anything else is a packing file.
PackingFile loadInput(const std::string& input) {
  const std::string prefix = "catalog:";
  if (input.rfind(prefix, 0) == 0) return PackingFile{getPacking(input.substr(prefix.size())), std::nullopt};
  return readPackingFile(input);
}

Tensegrity loadTensegrity(const Options& o) {
  const PackingFile file = loadInput(o.input);
  const auto overlaps = validate(file.packing);
  if (!overlaps.empty()) throw InputError("disks " + std::to_string(overlaps.front().i) + " and " +
                                          std::to_string(overlaps.front().j) + " overlap");
  return toTensegrity(file, o.tol);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

std::string vectorText(const Eigen::VectorXd& v) {
  std::ostringstream s;
  s.precision(10);
  for (Eigen::Index k = 0; k < v.size(); ++k) s << (k ? " " : "") << v(k);
  return s.str();
}

std::string characterText(const QuotientCharacter& c) {
  std::ostringstream s;
  s << "(";
  for (int m = 0; m < c.dim(); ++m) {
    const auto [num, den] = c.turn(m);
    s << (m ? ", " : "");
    if (num == 0)
      s << "1";
    else
      s << "exp(2 pi i " << num << "/" << den << ")";
  }
  s << ")";
  return s.str();
}

std::string nMinText(const NMinResult& r) {
  return r.value ? std::to_string(*r.value) : ">= " + std::to_string(r.bound + 1);
}

int cmdAnalyze(const Options& o) {
  const Tensegrity t = loadTensegrity(o);
  const CollectiveVerdict v = collectivelyJammed(t);
  if (o.json) {
    std::cout << collectiveReportJson(t, v).dump(2) << "\n";
  } else {
    std::cout << "vertices " << t.vertexCount() << ", contacts " << t.contactCount() << "\n";
    std::cout << "bar rigid: " << (v.barRigid ? "yes" : "no") << "\n";
    std::cout << "equilibrium stress: " << (v.stress ? vectorText(v.stress->perContact) : "none") << "\n";
    if (v.flex) std::cout << "unjamming flex: " << vectorText(*v.flex) << "\n";
    std::cout << (v.jammed ? "collectively jammed" : "not collectively jammed") << "\n";
  }
  return v.jammed ? kPositive : kNegative;
}

int cmdStrict(const Options& o) {
  const Tensegrity t = loadTensegrity(o);
  const StrictVerdict v = strictlyJammed(t);
  if (o.json) {
    std::cout << strictReportJson(t, v).dump(2) << "\n";
  } else {
    std::cout << "affine flex nullity " << v.affine.nullity << " (trivial " << v.affine.trivial << ")\n";
    std::cout << "strict stress: " << (v.stress.stress ? vectorText(v.stress.stress->perContact) : "none") << "\n";
    if (!v.affine.rigid && v.affine.flexes.cols() > 0)
      std::cout << "affine flex: " << vectorText(v.affine.flexes.col(0)) << "\n";
    std::cout << (v.jammed ? "strictly jammed" : "not strictly jammed") << "\n";
  }
  return v.jammed ? kPositive : kNegative;
}

// 0 when no sublattice up to the bound unjams, 10 when one does.
int cmdNmin(const Options& o) {
  if (o.maxIndex < 1) throw InputError("--max-index must be at least 1");
  const Tensegrity t = loadTensegrity(o);
  const NMinResult r = nMin(t, o.maxIndex, ExecutionPolicy{o.threads});
  if (o.json) {
    std::cout << nMinJson(r).dump(2) << "\n";
  } else {
    std::cout << "N_min " << nMinText(r) << "\n";
    if (r.witness) {
      const IntMatrix& s = r.witness->coeffs;
      std::cout << "sublattice columns (" << s(0, 0);
      for (Eigen::Index a = 1; a < s.rows(); ++a) std::cout << ", " << s(a, 0);
      for (Eigen::Index b = 1; b < s.cols(); ++b) {
        std::cout << "), (" << s(0, b);
        for (Eigen::Index a = 1; a < s.rows(); ++a) std::cout << ", " << s(a, b);
      }
      std::cout << ")\n";
    }
    if (r.character) std::cout << "flexing character " << characterText(*r.character) << "\n";
  }
  return r.value ? kNegative : kPositive;
}

int cmdConsistency(const Options& o) {
  if (o.maxIndex < 1) throw InputError("--max-index must be at least 1");
  const Tensegrity t = loadTensegrity(o);
  const JammingReport r = consistencyReport(t, o.maxIndex, ExecutionPolicy{o.threads});
  if (o.json) {
    std::cout << consistencyReportJson(t, r).dump(2) << "\n";
  } else {
    std::cout << "collectively jammed: " << (r.collective.jammed ? "yes" : "no") << "\n";
    std::cout << "strictly jammed: " << (r.strict.jammed ? "yes" : "no") << "\n";
    std::cout << "N_min " << nMinText(r.nMin) << "\n";
    if (r.consistentStrict) std::cout << "consistent-strict up to " << r.testedIndexBound << "\n";
    for (const auto& s : r.scaling)
      std::cout << "index " << s.sublattice.index() << " lifted strict stress residual " << s.liftedResidual << "\n";
  }
  return r.collective.jammed && !r.nMin.value ? kPositive : kNegative;
}

int cmdRum(const Options& o) {
  if (o.grid < 2) throw InputError("--grid must be at least 2");
  const Tensegrity t = loadTensegrity(o);
  const SpectrumGrid g = rumScan(t, o.grid, 1e-8, ExecutionPolicy{o.threads});
  std::ostringstream csv;
  writeSpectrumCsv(csv, g);
  emit(o, csv.str());
  return kPositive;
}

int cmdPentagon(const Options& o, bool xGiven) {
  const PentagonAngles a = referenceRealization();
  const int modes = (xGiven ? 1 : 0) + (o.checkRealization ? 1 : 0) + (o.scanPhases > 0 ? 1 : 0);
  if (modes != 1) throw InputError("choose exactly one of --x, --check-realization, --scan-phases");
  if (o.checkRealization) {
    const double closure = closureResidual(a);
    const double x = shapeConstant(a);
    const bool rigid = realizationRigidityCheck(a);
    const double dx = shapeDerivative(a, symmetricFamilyDirection(a));
    std::printf("angles alpha %.12f beta %.12f gamma %.12f delta %.12f phi %.12f\n", a.alpha, a.beta, a.gamma,
                a.delta, a.phi);
    std::printf("closure residual %.3e (%s)\n", closure, closure <= 1e-12 ? "ok" : "bad");
    std::printf("x %.10f\n", x);
    std::printf("realization %s (conditioning %.3e)\n", rigid ? "rigid" : "flexible", realizationConditioning(a));
    std::printf("dx/dalpha %.10f along the symmetric family\n", dx);
    return closure <= 1e-12 && rigid && dx != 0.0 ? kPositive : kNegative;
  }
  if (xGiven) {
    const auto found = findShapeForX(o.x, a.phi);
    if (!found) {
      const ShapeMinimum m = symmetricShapeMinimum(a.phi);
      std::printf("no symmetric pentagon with x = %.10g (family minimum %.10f at alpha %.6f)\n", o.x, m.x, m.alpha);
      return kNegative;
    }
    std::printf("alpha %.12f beta %.12f gamma %.12f delta %.12f phi %.12f\n", found->alpha, found->beta, found->gamma,
                found->delta, found->phi);
    std::printf("x %.12f closure residual %.3e\n", shapeConstant(*found), closureResidual(*found));
    return kPositive;
  }
  std::mt19937 rng(20240917u);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  int agree = 0;
  int onCondition = 0;
  const double x = shapeConstant(a);
  for (int s = 0; s < o.scanPhases;) {
    const std::complex<double> mu = std::polar(1.0, angle(rng));
    std::complex<double> muPrime = std::polar(1.0, angle(rng));
    if (s % 2 == 0) {
      const double re = 1.0 + x * (mu.real() - 1.0);
      if (re < -1.0 || re > 1.0 || std::abs(mu - 1.0) < 1e-3) continue;
      muPrime = std::polar(1.0, std::acos(re));
    }
    ++s;
    const bool pred = phaseFlexPredicate(a, mu, muPrime);
    onCondition += pred ? 1 : 0;
    agree += (normalizedFlexDeterminant(a, mu, muPrime) <= 1e-8) == pred ? 1 : 0;
  }
  std::printf("determinant/formula agreement %d/%d (%d on the flex condition)\n", agree, o.scanPhases, onCondition);
  return agree == o.scanPhases ? kPositive : kNegative;
}

int cmdVerify(const Options& o) {
  std::ifstream f(o.input);
  if (!f) throw InputError("cannot read " + o.input);
  json report;
  try {
    report = json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  const VerifyOutcome v = verifyReport(report);
  for (const auto& line : v.lines) std::cout << line << "\n";
  std::cout << (v.ok ? "all certificates verified" : "certificate check failed") << "\n";
  return v.ok ? kPositive : kNegative;
}

int cmdExport(const Options& o) {
  emit(o, dumpPackingFile(PackingFile{getPacking(o.name), std::nullopt}) + "\n");
  return kPositive;
}

int cmdList() {
  for (const auto& e : catalog())
    std::printf("%-20s %2d vertices %2d contacts density %.12f  %s\n", e.name.c_str(), e.vertices, e.contacts,
                e.density, e.description.c_str());
  return kPositive;
}

int cmdCover(const Options& o) {
  const PackingFile file = loadInput(o.input);
  const int d = file.packing.dim();
  if (static_cast<int>(o.sublattice.size()) != d * d)
    throw InputError("--sublattice needs " + std::to_string(d * d) + " integers (generator columns)");
  IntMatrix s(d, d);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a) s(a, b) = o.sublattice[static_cast<std::size_t>(b * d + a)];
  emit(o, dumpPackingFile(PackingFile{coverPacking(file.packing, makeSublattice(s)), std::nullopt}) + "\n");
  return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jamming analysis of periodic packings"};
  app.require_subcommand(1);
  Options o;

  auto addInput = [&](CLI::App* sub) {
    sub->add_option("packing", o.input, "packing file, or catalog:NAME")->required();
    sub->add_option("--tol", o.tol, "contact detection tolerance (default 1e-9 x mean radius)");
  };
  auto addScan = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads (0: all available)")->check(CLI::NonNegativeNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "collective jamming verdict with certificate");
  addInput(analyze);
  analyze->add_flag("--json", o.json, "print a verifiable JSON report");

  auto* strict = app.add_subcommand("strict", "strict jamming verdict with certificate");
  addInput(strict);
  strict->add_flag("--json", o.json, "print a verifiable JSON report");

  auto* nmin = app.add_subcommand("nmin", "smallest unjamming sublattice index");
  addInput(nmin);
  addScan(nmin);
  nmin->add_option("--max-index", o.maxIndex, "largest index tested")->required();
  nmin->add_flag("--json", o.json, "print JSON");

  auto* consistency = app.add_subcommand("consistency", "collective, strict and sublattice summary");
  addInput(consistency);
  addScan(consistency);
  consistency->add_option("--max-index", o.maxIndex, "largest index tested");
  consistency->add_flag("--json", o.json, "print a verifiable JSON report");

  auto* rum = app.add_subcommand("rum", "sampled phase spectrum as CSV");
  addInput(rum);
  addScan(rum);
  rum->add_option("--grid", o.grid, "samples per generator");
  rum->add_option("--out", o.out, "CSV file (default standard output)");

  auto* pentagon = app.add_subcommand("pentagon", "twenty-disk pentagon analytics");
  auto* xOpt = pentagon->add_option("--x", o.x, "find the symmetric pentagon with this shape constant");
  pentagon->add_flag("--check-realization", o.checkRealization, "closure, x, rigidity and dx/dalpha");
  pentagon->add_option("--scan-phases", o.scanPhases, "compare determinant and formula on N phase pairs")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "re-check the certificates of a JSON report");
  verify->add_option("report", o.input, "report file")->required();

  auto* exportCmd = app.add_subcommand("export", "write a catalog packing as a packing file");
  exportCmd->add_option("name", o.name, "catalog name")->required();
  exportCmd->add_option("--out", o.out, "output file (default standard output)");

  auto* list = app.add_subcommand("list", "list catalog packings");

  auto* cover = app.add_subcommand("cover", "packing file of a sublattice cover");
  cover->add_option("packing", o.input, "packing file, or catalog:NAME")->required();
  cover->add_option("--sublattice", o.sublattice, "generator columns, column by column")->required();
  cover->add_option("--out", o.out, "output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze) return cmdAnalyze(o);
    if (*strict) return cmdStrict(o);
    if (*nmin) return cmdNmin(o);
    if (*consistency) return cmdConsistency(o);
    if (*rum) return cmdRum(o);
    if (*pentagon) return cmdPentagon(o, xOpt->count() > 0);
    if (*verify) return cmdVerify(o);
    if (*exportCmd) return cmdExport(o);
    if (*list) return cmdList();
    if (*cover) return cmdCover(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kInputError;
}
