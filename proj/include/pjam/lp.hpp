#pragma once

#include <limits>
#include <string_view>

#include <Eigen/Core>

namespace pjam {

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view toString(LpStatus status);

/// maximize c^T x  subject to  Aeq x = beq,  Ale x <= ble,  lower <= x <= upper.
///
/// Bounds may be infinite; a default-constructed program over n variables has all
/// variables free and no constraints.
struct LinearProgram {
  explicit LinearProgram(Eigen::Index variables);

  Eigen::Index variables() const { return objective.size(); }

  /// Appends a row; returns its index within the equality (or inequality) block.
  Eigen::Index addEquality(const Eigen::RowVectorXd& row, double rhs);
  Eigen::Index addUpperInequality(const Eigen::RowVectorXd& row, double rhs);
  Eigen::Index addLowerInequality(const Eigen::RowVectorXd& row, double rhs);

  Eigen::VectorXd objective;
  Eigen::MatrixXd eqMatrix;
  Eigen::VectorXd eqRhs;
  Eigen::MatrixXd leMatrix;
  Eigen::VectorXd leRhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static constexpr double inf = std::numeric_limits<double>::infinity();
};

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  double optimum = 0.0;
  Eigen::VectorXd witness;
  /// Row multipliers of the internal standard form, mapped back to the
  /// equality and <= blocks. They certify the optimum only when every variable
  /// is bounded below by zero and unbounded above.
  Eigen::VectorXd eqDuals;
  Eigen::VectorXd leDuals;
  int pivots = 0;
};

struct LpOptions {
  double tolerance = 1e-9;
  int maxPivots = 200000;
};

/// Two-phase dense simplex with Bland's rule; deterministic for identical inputs.
/// Throws InputError on inconsistent dimensions, NumericalError if the pivot budget runs out.
LpOutcome solveLp(const LinearProgram& lp, const LpOptions& options = {});

/// Max violation of all constraints and bounds at x.
double constraintViolation(const LinearProgram& lp, const Eigen::VectorXd& x);

}  // namespace pjam
