#include "pjam/jamming.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "pjam/error.hpp"
#include "pjam/linalg.hpp"
#include "pjam/lp.hpp"

namespace pjam {

namespace {

constexpr double kStrictThreshold = 1e-7;
constexpr double kCertificateTolerance = 1e-8;

Eigen::MatrixXd outerSum(const Tensegrity& t, const Eigen::VectorXd& omega) {
  const int d = t.dim();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < t.contactCount(); ++k) {
    const Eigen::VectorXd e = edgeVector(t, static_cast<std::size_t>(k));
    sum += omega(k) * e * e.transpose();
  }
  return sum;
}

bool characterFlexes(const Tensegrity& t, const QuotientCharacter& chi) {
  return rankNullspace(phaseMatrix(t, chi).matrix).nullity > 0;
}

// Flags for the nontrivial characters of Lambda / Lambda' that admit a phase flex.
std::vector<QuotientCharacter> flexingCharacters(const Tensegrity& t, const Sublattice& s, int threads) {
  const std::vector<QuotientCharacter> chars = enumerateCharacters(smithNormalForm(s), s);
  std::vector<char> flags(chars.size(), 0);
  std::exception_ptr failure;
  const auto count = static_cast<long>(chars.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long c = 0; c < count; ++c) {
    try {
      const auto& chi = chars[static_cast<std::size_t>(c)];
      if (!chi.isTrivial()) flags[static_cast<std::size_t>(c)] = characterFlexes(t, chi) ? 1 : 0;
    } catch (...) {
#pragma omp critical(pjam_jamming_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<QuotientCharacter> out;
  for (std::size_t c = 0; c < chars.size(); ++c)
    if (flags[c]) out.push_back(chars[c]);
  return out;
}

std::vector<QuotientCharacter> flexingCharactersSerial(const Tensegrity& t, const Sublattice& s) {
  std::vector<QuotientCharacter> out;
  for (const auto& chi : enumerateCharacters(smithNormalForm(s), s))
    if (!chi.isTrivial() && characterFlexes(t, chi)) out.push_back(chi);
  return out;
}

std::optional<QuotientCharacter> firstFlexingCharacter(const Tensegrity& t, const Sublattice& s) {
  for (const auto& chi : enumerateCharacters(smithNormalForm(s), s))
    if (!chi.isTrivial() && characterFlexes(t, chi)) return chi;
  return std::nullopt;
}

NMinResult unjammedAtBase(std::int64_t maxIndex, int d) {
  NMinResult r;
  r.value = 1;
  r.bound = maxIndex;
  r.witness = diagonalSublattice(std::vector<std::int64_t>(static_cast<std::size_t>(d), 1));
  return r;
}

void checkMaxIndex(std::int64_t maxIndex) {
  if (maxIndex < 1) throw InputError("maximum index must be at least 1");
}

}  // namespace

double equilibriumResidual(const Tensegrity& t, const StressVector& s) {
  if (s.perContact.size() != t.contactCount()) throw InputError("stress has wrong length");
  if (t.contactCount() == 0) return 0.0;
  const Eigen::VectorXd r = rigidityMatrix(t).matrix.transpose() * s.perContact;
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

double strictResidual(const Tensegrity& t, const StressVector& s, double scale) {
  if (s.perContact.size() != t.contactCount()) throw InputError("stress has wrong length");
  const Eigen::MatrixXd m = outerSum(t, s.perContact) + scale * Eigen::MatrixXd::Identity(t.dim(), t.dim());
  return m.cwiseAbs().maxCoeff();
}

double signMargin(const Tensegrity& t, const StressVector& s) {
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < t.contactCount(); ++k) {
    const Kind kind = t.contacts[static_cast<std::size_t>(k)].kind;
    if (kind == Kind::strut) margin = std::min(margin, -s.perContact(k));
    if (kind == Kind::cable) margin = std::min(margin, s.perContact(k));
  }
  return margin;
}

BarRigidity barPeriodicallyRigid(const Tensegrity& t) {
  validateTensegrity(t);
  const auto rr = rankNullspace(rigidityMatrix(t).matrix);
  BarRigidity out;
  out.nullity = rr.nullity;
  out.rigid = rr.nullity == t.dim();
  out.flexes = deflate<double>(rr.nullspace, translationBasis(t));
  return out;
}

std::optional<StressVector> equilibriumStress(const Tensegrity& t) {
  validateTensegrity(t);
  const int e = t.contactCount();
  if (e == 0) return StressVector{Eigen::VectorXd(0)};
  const Eigen::MatrixXd rt = rigidityMatrix(t).matrix.transpose();
  LinearProgram lp(e);
  for (Eigen::Index r = 0; r < rt.rows(); ++r) lp.addEquality(rt.row(r), 0.0);
  for (int k = 0; k < e; ++k) {
    switch (t.contacts[static_cast<std::size_t>(k)].kind) {
      case Kind::strut:
        lp.upper(k) = -1.0;
        lp.objective(k) = 1.0;
        break;
      case Kind::cable:
        lp.lower(k) = 1.0;
        lp.objective(k) = -1.0;
        break;
      case Kind::bar:
        break;
    }
  }
  const LpOutcome out = solveLp(lp);
  if (out.status == LpStatus::infeasible) return std::nullopt;
  if (out.status != LpStatus::optimal) throw NumericalError("equilibrium stress LP is unbounded");
  StressVector s{out.witness};
  if (equilibriumResidual(t, s) > kCertificateTolerance * std::max(1.0, s.perContact.cwiseAbs().maxCoeff()))
    throw NumericalError("equilibrium stress failed re-verification");
  return s;
}

SignedFlexResult signedFlexLP(const Tensegrity& t) {
  validateTensegrity(t);
  const int d = t.dim();
  const int e = t.contactCount();
  const Eigen::Index nd = static_cast<Eigen::Index>(t.vertexCount()) * d;
  const Eigen::MatrixXd r = rigidityMatrix(t).matrix;
  LinearProgram lp(nd + e);
  for (int k = 0; k < e; ++k) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nd + e);
    const Kind kind = t.contacts[static_cast<std::size_t>(k)].kind;
    lp.lower(nd + k) = 0.0;
    lp.upper(nd + k) = kind == Kind::bar ? 0.0 : 1.0;
    lp.objective(nd + k) = 1.0;
    if (kind == Kind::bar) {
      row.head(nd) = r.row(k);
      lp.addEquality(row, 0.0);
      continue;
    }
    row.head(nd) = kind == Kind::strut ? Eigen::RowVectorXd(-r.row(k)) : Eigen::RowVectorXd(r.row(k));
    row(nd + k) = 1.0;
    lp.addUpperInequality(row, 0.0);
  }
  for (int a = 0; a < d; ++a) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nd + e);
    for (int i = 0; i < t.vertexCount(); ++i) row(static_cast<Eigen::Index>(i) * d + a) = 1.0;
    lp.addEquality(row, 0.0);
  }
  const LpOutcome out = solveLp(lp);
  if (out.status != LpStatus::optimal) throw NumericalError("signed flex LP did not reach an optimum");
  return {out.optimum, out.witness.head(nd)};
}

CollectiveVerdict collectivelyJammed(const Tensegrity& t) {
  CollectiveVerdict v;
  const BarRigidity bars = barPeriodicallyRigid(t);
  v.barRigid = bars.rigid;
  v.stress = equilibriumStress(t);
  v.jammed = bars.rigid && v.stress.has_value();
  if (!v.jammed) {
    if (!bars.rigid) {
      v.flex = bars.flexes.col(0);
    } else {
      v.flex = signedFlexLP(t).flex;
    }
  }
  return v;
}

bool strutRigidDirectLP(const Tensegrity& t) {
  const SignedFlexResult r = signedFlexLP(t);
  if (r.slack > kStrictThreshold) return false;
  return rankNullspace(rigidityMatrix(t).matrix).nullity == t.dim();
}

AffineRigidity affinelyRigid(const Tensegrity& t) {
  validateTensegrity(t);
  const int d = t.dim();
  const auto rr = rankNullspace(affineRigidityMatrix(t).matrix);
  AffineRigidity out;
  out.nullity = rr.nullity;
  out.trivial = d + d * (d - 1) / 2;
  out.rigid = rr.nullity == out.trivial;
  out.flexes = deflate<double>(rr.nullspace, affineTrivialBasis(t));
  return out;
}

StrictStressResult strictEquilibriumStress(const Tensegrity& t) {
  validateTensegrity(t);
  const int d = t.dim();
  const int e = t.contactCount();
  const Eigen::MatrixXd rt = rigidityMatrix(t).matrix.transpose();
  const Eigen::MatrixXd edges = edgeVectors(t);
  LinearProgram lp(e + 1);
  const Eigen::Index margin = e;
  lp.objective(margin) = 1.0;
  lp.upper(margin) = 1.0;
  for (Eigen::Index r = 0; r < rt.rows(); ++r) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(e + 1);
    row.head(e) = rt.row(r);
    lp.addEquality(row, 0.0);
  }
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(e + 1);
      for (int k = 0; k < e; ++k) row(k) = edges(a, k) * edges(b, k);
      lp.addEquality(row, a == b ? -1.0 : 0.0);
    }
  for (int k = 0; k < e; ++k) {
    const Kind kind = t.contacts[static_cast<std::size_t>(k)].kind;
    if (kind == Kind::bar) continue;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(e + 1);
    row(k) = kind == Kind::strut ? 1.0 : -1.0;
    row(margin) = 1.0;
    lp.addUpperInequality(row, 0.0);
  }
  const LpOutcome out = solveLp(lp);
  StrictStressResult result;
  if (out.status == LpStatus::infeasible) {
    result.margin = -std::numeric_limits<double>::infinity();
    return result;
  }
  if (out.status != LpStatus::optimal) throw NumericalError("strict stress LP is unbounded");
  result.margin = out.witness(margin);
  if (result.margin > kStrictThreshold) {
    StressVector s{out.witness.head(e)};
    const double scale = std::max(1.0, s.perContact.cwiseAbs().maxCoeff());
    if (equilibriumResidual(t, s) > kCertificateTolerance * scale || strictResidual(t, s) > kCertificateTolerance * scale)
      throw NumericalError("strict stress failed re-verification");
    result.stress = s;
  }
  return result;
}

StrictVerdict strictlyJammed(const Tensegrity& t) {
  StrictVerdict v;
  v.affine = affinelyRigid(t);
  v.stress = strictEquilibriumStress(t);
  v.jammed = v.affine.rigid && v.stress.stress.has_value();
  return v;
}

SublatticeVerdict sublatticeJammed(const Tensegrity& t, const Sublattice& s, const ExecutionPolicy& policy) {
  SublatticeVerdict v;
  v.baseJammed = collectivelyJammed(t).jammed;
  if (!v.baseJammed) return v;
  v.flexing = flexingCharacters(t, s, resolveThreads(policy));
  v.jammed = v.flexing.empty();
  return v;
}

NMinResult nMin(const Tensegrity& t, std::int64_t maxIndex, const ExecutionPolicy& policy) {
  checkMaxIndex(maxIndex);
  if (!collectivelyJammed(t).jammed) return unjammedAtBase(maxIndex, t.dim());
  const int threads = resolveThreads(policy);
  NMinResult result;
  result.bound = maxIndex;
  for (std::int64_t m = 2; m <= maxIndex; ++m) {
    const std::vector<Sublattice> subs = enumerateSublattices(t.dim(), m);
    std::vector<std::optional<QuotientCharacter>> found(subs.size());
    std::exception_ptr failure;
    const auto count = static_cast<long>(subs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long idx = 0; idx < count; ++idx) {
      try {
        found[static_cast<std::size_t>(idx)] = firstFlexingCharacter(t, subs[static_cast<std::size_t>(idx)]);
      } catch (...) {
#pragma omp critical(pjam_jamming_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t idx = 0; idx < subs.size(); ++idx) {
      if (found[idx]) {
        result.value = m;
        result.witness = subs[idx];
        result.character = found[idx];
        return result;
      }
    }
  }
  return result;
}

bool oneDiskGcdPredicate(const Sublattice& s) {
  if (s.dim() != 2) throw InputError("gcd predicate needs a two-dimensional sublattice");
  const IntMatrix& m = s.coeffs;
  return checkedMul(gcd(m(0, 0), m(0, 1)), gcd(m(1, 0), m(1, 1))) != 1;
}

JammingReport consistencyReport(const Tensegrity& t, std::int64_t maxIndex, const ExecutionPolicy& policy) {
  checkMaxIndex(maxIndex);
  JammingReport report;
  report.testedIndexBound = maxIndex;
  report.collective = collectivelyJammed(t);
  report.strict = strictlyJammed(t);
  report.nMin = report.collective.jammed ? nMin(t, maxIndex, policy) : unjammedAtBase(maxIndex, t.dim());
  report.consistentStrict = report.strict.jammed && !report.nMin.value.has_value();
  if (report.strict.stress.stress) {
    const Eigen::VectorXd& omega = report.strict.stress.stress->perContact;
    for (std::int64_t m = 1; m <= maxIndex; ++m) {
      for (const Sublattice& s : enumerateSublattices(t.dim(), m)) {
        const Tensegrity cover = coverFramework(t, s);
        const StressVector lifted{liftStress(t, s, omega)};
        ScalingCheck check{s, strictResidual(cover, lifted, static_cast<double>(m)), 0.0};
        check.rescaledResidual = strictResidual(cover, StressVector{lifted.perContact / static_cast<double>(m)});
        report.scaling.push_back(check);
      }
    }
  }
  return report;
}

namespace reference {

SublatticeVerdict sublatticeJammed(const Tensegrity& t, const Sublattice& s) {
  SublatticeVerdict v;
  v.baseJammed = collectivelyJammed(t).jammed;
  if (!v.baseJammed) return v;
  v.flexing = flexingCharactersSerial(t, s);
  v.jammed = v.flexing.empty();
  return v;
}

NMinResult nMin(const Tensegrity& t, std::int64_t maxIndex) {
  checkMaxIndex(maxIndex);
  if (!collectivelyJammed(t).jammed) return unjammedAtBase(maxIndex, t.dim());
  NMinResult result;
  result.bound = maxIndex;
  for (std::int64_t m = 2; m <= maxIndex; ++m) {
    for (const Sublattice& s : enumerateSublattices(t.dim(), m)) {
      if (auto chi = firstFlexingCharacter(t, s)) {
        result.value = m;
        result.witness = s;
        result.character = chi;
        return result;
      }
    }
  }
  return result;
}

}  // namespace reference

}  // namespace pjam
