#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pjam/lattice.hpp"
#include "pjam/linalg.hpp"

namespace pjam {

enum class Kind { bar, cable, strut };

std::string_view toString(Kind kind);
/// Throws InputError for anything but "bar", "cable" or "strut".
Kind kindFromString(std::string_view text);

/// Member from vertex i (offset 0) to vertex j translated by `offset` (lattice coordinates).
struct Contact {
  int i = 0;
  int j = 0;
  IntVector offset;
  Kind kind = Kind::strut;
};

/// Periodic tensegrity (G, p, Lambda).
struct Tensegrity {
  Lattice lattice;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<Contact> contacts;

  int dim() const { return lattice.dim(); }
  int vertexCount() const { return static_cast<int>(vertices.size()); }
  int contactCount() const { return static_cast<int>(contacts.size()); }
};

/// Throws InputError on out-of-range indices, wrong dimensions or zero edge vectors.
void validateTensegrity(const Tensegrity& t);

/// Copy of t with every member set to `kind`.
Tensegrity withKind(Tensegrity t, Kind kind);

/// i <= j, and a self-contact gets a lexicographically positive offset.
Contact canonicalContact(Contact c);
bool lexPositive(const IntVector& v);

Eigen::VectorXd edgeVector(const Tensegrity& t, std::size_t k);
/// d x E matrix whose columns are the edge vectors.
Eigen::MatrixXd edgeVectors(const Tensegrity& t);

/// First-order motion: column i of perVertex is p'_i; affine part A when present.
template <class Scalar>
struct FlexVector {
  Matrix<Scalar> perVertex;
  std::optional<Eigen::MatrixXd> affine;

  /// Stacked coordinates (p'_1, ..., p'_n [, A row-major]).
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> stacked() const;
  static FlexVector fromStacked(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, int dim, int vertices, bool withAffine);
};

enum class OperatorVariant { periodic, affine, phase };

template <class Scalar>
struct RigidityOperator {
  OperatorVariant variant = OperatorVariant::periodic;
  Matrix<Scalar> matrix;
  std::optional<QuotientCharacter> character;
};

/// Row k: +e_k on block j, -e_k on block i (zero for self-contacts).
RigidityOperator<double> rigidityMatrix(const Tensegrity& t);
/// Periodic blocks plus d*d columns for A, row-major: coefficient of A(a,b) is e[a] e[b].
RigidityOperator<double> affineRigidityMatrix(const Tensegrity& t);
/// Row k: rho(lambda_k) e_k on block j, -e_k on block i.
RigidityOperator<std::complex<double>> phaseMatrix(const Tensegrity& t, const QuotientCharacter& chi);

/// nd x d, the translations.
Eigen::MatrixXd translationBasis(const Tensegrity& t);
/// (nd + d^2) x (d + d(d-1)/2): translations, then skew A with p' = 0.
Eigen::MatrixXd affineTrivialBasis(const Tensegrity& t);

/// Finite cover on the sublattice S; vertex (digit t, i) has index t*n + i and contact
/// k seen from digit t has index t*E + k. Lattice basis is T*H with H the column HNF of S.
Tensegrity coverFramework(const Tensegrity& t, const Sublattice& s);

/// q_(i,t) = rho(digit t) q_i, stacked in cover vertex order.
Eigen::VectorXcd liftPhaseFlex(const Tensegrity& t, const Sublattice& s, const QuotientCharacter& chi,
                               const Eigen::VectorXcd& flex);
/// Copies omega onto every translate, in cover contact order.
Eigen::VectorXd liftStress(const Tensegrity& t, const Sublattice& s, const Eigen::VectorXd& omega);

}  // namespace pjam
