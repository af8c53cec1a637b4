#include "pjam/lp.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "pjam/error.hpp"

namespace pjam {

std::string_view toString(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(Eigen::Index n)
    : objective(Eigen::VectorXd::Zero(n)),
      eqMatrix(0, n),
      eqRhs(0),
      leMatrix(0, n),
      leRhs(0),
      lower(Eigen::VectorXd::Constant(n, -inf)),
      upper(Eigen::VectorXd::Constant(n, inf)) {}

namespace {

Eigen::Index appendRow(Eigen::MatrixXd& m, Eigen::VectorXd& rhs, const Eigen::RowVectorXd& row, double value) {
  if (row.size() != m.cols()) throw InputError("LP row has wrong length");
  const Eigen::Index r = m.rows();
  m.conservativeResize(r + 1, Eigen::NoChange);
  m.row(r) = row;
  rhs.conservativeResize(r + 1);
  rhs(r) = value;
  return r;
}

}  // namespace

Eigen::Index LinearProgram::addEquality(const Eigen::RowVectorXd& row, double rhs) { return appendRow(eqMatrix, eqRhs, row, rhs); }

Eigen::Index LinearProgram::addUpperInequality(const Eigen::RowVectorXd& row, double rhs) {
  return appendRow(leMatrix, leRhs, row, rhs);
}

Eigen::Index LinearProgram::addLowerInequality(const Eigen::RowVectorXd& row, double rhs) {
  return appendRow(leMatrix, leRhs, -row, -rhs);
}

double constraintViolation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double worst = 0.0;
  if (lp.eqMatrix.rows() > 0) worst = std::max(worst, (lp.eqMatrix * x - lp.eqRhs).cwiseAbs().maxCoeff());
  if (lp.leMatrix.rows() > 0) worst = std::max(worst, (lp.leMatrix * x - lp.leRhs).maxCoeff());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.lower(j) - x(j));
    worst = std::max(worst, x(j) - lp.upper(j));
  }
  return worst;
}

namespace {

// x_j = offset + sum over (column, coefficient) of standard-form variables.
struct VariableMap {
  double offset = 0.0;
  Eigen::Index column = -1;
  double coefficient = 1.0;
  Eigen::Index negativeColumn = -1;  // split free variables
};

enum class RowOrigin { equality, inequality, bound };

struct StandardRow {
  RowOrigin origin;
  Eigen::Index source;
  double sign;  // +1 or -1 after making the rhs non-negative
};

class Tableau {
 public:
  Tableau(Eigen::MatrixXd table, std::vector<Eigen::Index> basis, Eigen::Index eligibleColumns, const LpOptions& options)
      : t_(std::move(table)), basis_(std::move(basis)), eligible_(eligibleColumns), opts_(options) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhsColumn() const { return t_.cols() - 1; }

  void setObjective(const Eigen::VectorXd& cost) {
    const Eigen::Index m = rows();
    auto z = t_.row(m);
    z.setZero();
    for (Eigen::Index j = 0; j < cost.size(); ++j) z(j) = -cost(j);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double cb = basis_[static_cast<std::size_t>(i)] < cost.size() ? cost(basis_[static_cast<std::size_t>(i)]) : 0.0;
      if (cb != 0.0) z += cb * t_.row(i);
    }
  }

  // Returns false when the objective is unbounded.
  bool optimize() {
    const Eigen::Index m = rows();
    const Eigen::Index rhs = rhsColumn();
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < eligible_; ++j)
        if (t_(m, j) < -opts_.tolerance) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= opts_.tolerance) continue;
        const double ratio = t_(i, rhs) / a;
        if (leave < 0 || ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    if (++pivots_ > opts_.maxPivots) throw NumericalError("LP pivot budget exhausted");
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  void removeRow(Eigen::Index r) {
    const Eigen::Index n = t_.rows();
    t_.block(r, 0, n - r - 1, t_.cols()) = t_.block(r + 1, 0, n - r - 1, t_.cols()).eval();
    t_.conservativeResize(n - 1, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

  void setEligible(Eigen::Index n) { eligible_ = n; }
  double value() const { return t_(rows(), rhsColumn()); }
  double at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
  const std::vector<Eigen::Index>& basis() const { return basis_; }
  int pivots() const { return pivots_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index eligible_;
  LpOptions opts_;
  int pivots_ = 0;
};

}  // namespace

LpOutcome solveLp(const LinearProgram& lp, const LpOptions& options) {
  const Eigen::Index n = lp.variables();
  if (lp.lower.size() != n || lp.upper.size() != n) throw InputError("LP bound vectors have wrong length");
  if (lp.eqMatrix.cols() != n || lp.leMatrix.cols() != n) throw InputError("LP constraint matrices have wrong width");
  if (lp.eqRhs.size() != lp.eqMatrix.rows() || lp.leRhs.size() != lp.leMatrix.rows())
    throw InputError("LP right-hand sides have wrong length");
  for (Eigen::Index j = 0; j < n; ++j)
    if (lp.lower(j) > lp.upper(j)) return LpOutcome{LpStatus::infeasible, 0.0, {}, {}, {}, 0};

  // Variable substitution into y >= 0.
  std::vector<VariableMap> vars(static_cast<std::size_t>(n));
  Eigen::Index structural = 0;
  std::vector<std::pair<Eigen::Index, double>> boundRows;  // (column, width)
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& v = vars[static_cast<std::size_t>(j)];
    const bool lo = std::isfinite(lp.lower(j));
    const bool hi = std::isfinite(lp.upper(j));
    if (lo) {
      v.offset = lp.lower(j);
      v.column = structural++;
      if (hi) boundRows.emplace_back(v.column, lp.upper(j) - lp.lower(j));
    } else if (hi) {
      v.offset = lp.upper(j);
      v.column = structural++;
      v.coefficient = -1.0;
    } else {
      v.column = structural++;
      v.negativeColumn = structural++;
    }
  }

  const Eigen::Index eqRows = lp.eqMatrix.rows();
  const Eigen::Index leRows = lp.leMatrix.rows();
  const Eigen::Index m = eqRows + leRows + static_cast<Eigen::Index>(boundRows.size());
  const Eigen::Index slacks = leRows + static_cast<Eigen::Index>(boundRows.size());

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, structural + slacks);
  Eigen::VectorXd b(m);
  std::vector<StandardRow> origin;
  origin.reserve(static_cast<std::size_t>(m));

  auto fillRow = [&](Eigen::Index r, const Eigen::RowVectorXd& row, double rhs) {
    double shifted = rhs;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double coef = row(j);
      if (coef == 0.0) continue;
      const auto& v = vars[static_cast<std::size_t>(j)];
      shifted -= coef * v.offset;
      a(r, v.column) += coef * v.coefficient;
      if (v.negativeColumn >= 0) a(r, v.negativeColumn) -= coef;
    }
    b(r) = shifted;
  };

  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < eqRows; ++i, ++r) {
    fillRow(r, lp.eqMatrix.row(i), lp.eqRhs(i));
    origin.push_back({RowOrigin::equality, i, 1.0});
  }
  Eigen::Index slack = structural;
  for (Eigen::Index i = 0; i < leRows; ++i, ++r, ++slack) {
    fillRow(r, lp.leMatrix.row(i), lp.leRhs(i));
    a(r, slack) = 1.0;
    origin.push_back({RowOrigin::inequality, i, 1.0});
  }
  for (std::size_t k = 0; k < boundRows.size(); ++k, ++r, ++slack) {
    a(r, boundRows[k].first) = 1.0;
    a(r, slack) = 1.0;
    b(r) = boundRows[k].second;
    origin.push_back({RowOrigin::bound, static_cast<Eigen::Index>(k), 1.0});
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
      origin[static_cast<std::size_t>(i)].sign = -1.0;
    }
  }

  // Initial basis: a +1 slack where available, otherwise an artificial column.
  const Eigen::Index realColumns = structural + slacks;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m), -1);
  Eigen::Index artificials = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index s = structural; s < realColumns; ++s)
      if (a(i, s) == 1.0) {
        basis[static_cast<std::size_t>(i)] = s;
        break;
      }
    if (basis[static_cast<std::size_t>(i)] < 0) basis[static_cast<std::size_t>(i)] = realColumns + artificials++;
  }
  const Eigen::Index totalColumns = realColumns + artificials;
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(m + 1, totalColumns + 1);
  table.topLeftCorner(m, realColumns) = a;
  table.block(0, totalColumns, m, 1) = b;
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] >= realColumns) table(i, basis[static_cast<std::size_t>(i)]) = 1.0;

  Tableau tab(std::move(table), basis, totalColumns, options);
  const double feasTol = options.tolerance * std::max(1.0, b.size() > 0 ? b.cwiseAbs().maxCoeff() : 1.0);

  if (artificials > 0) {
    Eigen::VectorXd phaseOne = Eigen::VectorXd::Zero(totalColumns);
    phaseOne.tail(artificials).setConstant(-1.0);
    tab.setObjective(phaseOne);
    tab.optimize();
    if (tab.value() < -feasTol * 10.0) {
      LpOutcome out;
      out.status = LpStatus::infeasible;
      out.pivots = tab.pivots();
      return out;
    }
    // Drive zero-level artificials out; drop rows that are redundant.
    for (Eigen::Index i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < realColumns) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < realColumns; ++j)
        if (std::abs(tab.at(i, j)) > 1e-7) {
          col = j;
          break;
        }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.removeRow(i);
        origin.erase(origin.begin() + i);
      }
    }
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(totalColumns);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    const double c = lp.objective(j);
    cost(v.column) += c * v.coefficient;
    if (v.negativeColumn >= 0) cost(v.negativeColumn) -= c;
  }
  tab.setEligible(realColumns);
  tab.setObjective(cost);
  LpOutcome out;
  if (!tab.optimize()) {
    out.status = LpStatus::unbounded;
    out.pivots = tab.pivots();
    return out;
  }

  // Basic solution, refined by re-solving B y_B = b on the surviving rows.
  const Eigen::Index mr = tab.rows();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(realColumns);
  for (Eigen::Index i = 0; i < mr; ++i) {
    const Eigen::Index col = tab.basis()[static_cast<std::size_t>(i)];
    if (col < realColumns) y(col) = tab.at(i, tab.rhsColumn());
  }
  Eigen::MatrixXd aRows(mr, realColumns);
  Eigen::VectorXd bRows(mr);
  Eigen::MatrixXd basisMatrix(mr, mr);
  Eigen::VectorXd basisCost(mr);
  {
    // Reconstruct surviving rows of the standard form from their origins.
    for (Eigen::Index i = 0; i < mr; ++i) {
      const auto& o = origin[static_cast<std::size_t>(i)];
      Eigen::Index stdRow = 0;
      switch (o.origin) {
        case RowOrigin::equality:
          stdRow = o.source;
          break;
        case RowOrigin::inequality:
          stdRow = eqRows + o.source;
          break;
        case RowOrigin::bound:
          stdRow = eqRows + leRows + o.source;
          break;
      }
      aRows.row(i) = a.row(stdRow);
      bRows(i) = b(stdRow);
    }
    bool haveBasis = true;
    for (Eigen::Index i = 0; i < mr; ++i) {
      const Eigen::Index col = tab.basis()[static_cast<std::size_t>(i)];
      if (col >= realColumns) {
        haveBasis = false;
        break;
      }
      basisMatrix.col(i) = aRows.col(col);
      basisCost(i) = cost(col);
    }
    if (haveBasis && mr > 0) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(basisMatrix);
      if (lu.isInvertible()) {
        const Eigen::VectorXd refined = lu.solve(bRows);
        if (refined.minCoeff() > -1e-7) {
          for (Eigen::Index i = 0; i < mr; ++i) y(tab.basis()[static_cast<std::size_t>(i)]) = std::max(0.0, refined(i));
        }
        const Eigen::VectorXd u = lu.transpose().solve(basisCost);
        out.eqDuals = Eigen::VectorXd::Zero(eqRows);
        out.leDuals = Eigen::VectorXd::Zero(leRows);
        for (Eigen::Index i = 0; i < mr; ++i) {
          const auto& o = origin[static_cast<std::size_t>(i)];
          if (o.origin == RowOrigin::equality) out.eqDuals(o.source) = o.sign * u(i);
          if (o.origin == RowOrigin::inequality) out.leDuals(o.source) = o.sign * u(i);
        }
      }
    }
  }

  Eigen::VectorXd x(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    x(j) = v.offset + v.coefficient * y(v.column);
    if (v.negativeColumn >= 0) x(j) -= y(v.negativeColumn);
  }
  out.status = LpStatus::optimal;
  out.witness = x;
  out.optimum = lp.objective.dot(x);
  out.pivots = tab.pivots();
  return out;
}

}  // namespace pjam
