#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "pjam/framework.hpp"
#include "pjam/lattice.hpp"
#include "pjam/parallel.hpp"

namespace pjam {

/// One weight per canonical contact.
struct StressVector {
  Eigen::VectorXd perContact;
};

/// max |R^T omega| over vertex coordinates.
double equilibriumResidual(const Tensegrity& t, const StressVector& s);
/// max |sum omega_k e_k e_k^T + scale * I| entrywise.
double strictResidual(const Tensegrity& t, const StressVector& s, double scale = 1.0);
/// Smallest margin of the sign conditions: -omega on struts, omega on cables (infinity if none).
double signMargin(const Tensegrity& t, const StressVector& s);

struct BarRigidity {
  bool rigid = false;
  int nullity = 0;
  Eigen::MatrixXd flexes;  ///< orthonormal nontrivial flexes (translations removed)
};

/// All members treated as bars; rigid iff the periodic nullity equals d.
BarRigidity barPeriodicallyRigid(const Tensegrity& t);

/// {R^T omega = 0, omega <= -1 on struts, omega >= 1 on cables}; the witness minimises |omega|.
std::optional<StressVector> equilibriumStress(const Tensegrity& t);

/// Largest total slack of a sign-respecting flex with sum p' = 0 and slacks capped at 1.
/// A positive value comes with a flex that strictly moves some strut or cable.
struct SignedFlexResult {
  double slack = 0.0;
  Eigen::VectorXd flex;
};
SignedFlexResult signedFlexLP(const Tensegrity& t);

struct CollectiveVerdict {
  bool jammed = false;
  bool barRigid = false;
  std::optional<StressVector> stress;
  std::optional<Eigen::VectorXd> flex;  ///< nontrivial flex when unjammed
};

/// Bar rigidity together with an equilibrium stress.
CollectiveVerdict collectivelyJammed(const Tensegrity& t);

/// Direct decision from the strut condition R p' >= 0.
bool strutRigidDirectLP(const Tensegrity& t);

struct AffineRigidity {
  bool rigid = false;
  int nullity = 0;
  int trivial = 0;
  Eigen::MatrixXd flexes;  ///< nontrivial affine flexes (p', A) stacked
};

AffineRigidity affinelyRigid(const Tensegrity& t);

struct StrictStressResult {
  double margin = 0.0;  ///< optimal t, capped at 1
  std::optional<StressVector> stress;
};

/// max t with equilibrium, sum omega e e^T = -I and omega <= -t on struts (>= t on cables).
StrictStressResult strictEquilibriumStress(const Tensegrity& t);

struct StrictVerdict {
  bool jammed = false;
  AffineRigidity affine;
  StrictStressResult stress;
};

StrictVerdict strictlyJammed(const Tensegrity& t);

struct SublatticeVerdict {
  bool jammed = false;
  bool baseJammed = false;
  std::vector<QuotientCharacter> flexing;  ///< in enumeration order
};

/// Character test on Lambda / Lambda'; the base must be collectively jammed for a jammed verdict.
SublatticeVerdict sublatticeJammed(const Tensegrity& t, const Sublattice& s, const ExecutionPolicy& policy = {});

struct NMinResult {
  std::optional<std::int64_t> value;  ///< empty: jammed on every index up to `bound`
  std::int64_t bound = 0;
  std::optional<Sublattice> witness;
  std::optional<QuotientCharacter> character;
};

/// Smallest index at which some sublattice unjams.
NMinResult nMin(const Tensegrity& t, std::int64_t maxIndex, const ExecutionPolicy& policy = {});

/// d = 2, columns (a,b), (c,d): true when gcd(a,c) * gcd(b,d) != 1.
bool oneDiskGcdPredicate(const Sublattice& s);

struct ScalingCheck {
  Sublattice sublattice;
  double liftedResidual = 0.0;  ///< |sum omega e e^T + m I| on the cover
  double rescaledResidual = 0.0;
};

struct JammingReport {
  CollectiveVerdict collective;
  StrictVerdict strict;
  NMinResult nMin;
  std::int64_t testedIndexBound = 0;
  bool consistentStrict = false;  ///< strict and no unjammed sublattice up to the bound
  std::vector<ScalingCheck> scaling;
};

JammingReport consistencyReport(const Tensegrity& t, std::int64_t maxIndex, const ExecutionPolicy& policy = {});

namespace reference {

SublatticeVerdict sublatticeJammed(const Tensegrity& t, const Sublattice& s);
NMinResult nMin(const Tensegrity& t, std::int64_t maxIndex);

}  // namespace reference

}  // namespace pjam
