#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pjam/integer_matrix.hpp"

namespace pjam {

/// Period lattice; columns of `basis` are the generators g_1..g_d.
struct Lattice {
  Eigen::MatrixXd basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  double cellVolume() const;
  /// Cartesian vector of the lattice point with integer coordinates `coords`.
  Eigen::VectorXd point(const IntVector& coords) const;
};

/// Validating constructor; throws InputError for non-square or singular bases.
Lattice makeLattice(const Eigen::MatrixXd& basis);

/// Rows h_j of the inverse basis, h_j . g_i = [i == j].
Eigen::MatrixXd dualBasis(const Lattice& lattice);

/// Integer coordinates lambda with |T lambda - target| <= radius.
std::vector<IntVector> latticePointsNear(const Lattice& lattice, const Eigen::VectorXd& target, double radius);

/// Integer sublattice; columns of `coeffs` generate it in lattice coordinates.
struct Sublattice {
  IntMatrix coeffs;

  int dim() const { return static_cast<int>(coeffs.rows()); }
  std::int64_t index() const;
};

Sublattice makeSublattice(const IntMatrix& coeffs);
Sublattice diagonalSublattice(const std::vector<std::int64_t>& diagonal);

/// The finite abelian group Lambda / Lambda' in Smith form.
struct QuotientGroup {
  IntVector factors;  ///< invariant factors, each dividing the next
  IntMatrix left;     ///< U with U * S * V = diag(factors)
  IntMatrix right;    ///< V

  std::int64_t order() const;
};

QuotientGroup smithNormalForm(const Sublattice& s);

/// Multiplicative character of the lattice, stored as exact turns num_m / den per generator.
///
/// The phase on generator m is exp(2 pi i num_m / den); at a lattice vector lambda it is
/// exp(2 pi i sum_m lambda_m num_m / den). All numerators are kept in [0, den).
class QuotientCharacter {
 public:
  QuotientCharacter() = default;
  QuotientCharacter(std::vector<std::int64_t> numerators, std::int64_t denominator);

  static QuotientCharacter trivial(int dim) { return QuotientCharacter(std::vector<std::int64_t>(dim, 0), 1); }

  int dim() const { return static_cast<int>(numerators_.size()); }
  bool isTrivial() const;
  const std::vector<std::int64_t>& numerators() const { return numerators_; }
  std::int64_t denominator() const { return denominator_; }

  /// Reduced turn fraction for generator m as (numerator, denominator).
  std::pair<std::int64_t, std::int64_t> turn(int m) const;
  /// Multiplicative order of the phase on generator m.
  std::int64_t order(int m) const;

  std::complex<double> phase(int m) const;
  std::vector<std::complex<double>> phases() const;
  /// rho(lambda) for integer lattice coordinates lambda.
  std::complex<double> at(const IntVector& lambda) const;
  /// Turns of rho(lambda) as an exact residue modulo the denominator.
  std::int64_t turnsAt(const IntVector& lambda) const;

  QuotientCharacter conjugate() const;

  friend bool operator==(const QuotientCharacter& a, const QuotientCharacter& b);

 private:
  std::vector<std::int64_t> numerators_;
  std::int64_t denominator_ = 1;
};

/// exp(2 pi i num / den), exact at quarter turns.
std::complex<double> unitPhase(std::int64_t num, std::int64_t den);

/// All characters of Lambda / Lambda'; exactly index-many, trivial first.
std::vector<QuotientCharacter> enumerateCharacters(const QuotientGroup& q, const Sublattice& s);

/// All column Hermite normal forms of determinant m in dimension d.
std::vector<Sublattice> enumerateSublattices(int d, std::int64_t m);

/// Sum of divisors, used as the expected sublattice count in dimension 2.
std::int64_t divisorSum(std::int64_t m);

/// Canonical digit transversal of Lambda / Lambda' built from the column HNF.
class Transversal {
 public:
  explicit Transversal(const Sublattice& s);

  const IntMatrix& hermite() const { return hermite_; }
  std::size_t size() const { return digits_.size(); }
  const IntVector& digit(std::size_t idx) const { return digits_[idx]; }

  /// Writes v = digit(idx) + H * coset and returns (idx, coset).
  std::pair<std::size_t, IntVector> reduce(const IntVector& v) const;

 private:
  std::size_t indexOf(const IntVector& digit) const;

  IntMatrix hermite_;
  std::vector<IntVector> digits_;
};

}  // namespace pjam
