#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace pjam {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Overflow-checked primitives; throw OverflowError instead of wrapping.
std::int64_t checkedAdd(std::int64_t a, std::int64_t b);
std::int64_t checkedSub(std::int64_t a, std::int64_t b);
std::int64_t checkedMul(std::int64_t a, std::int64_t b);

/// Floor division and non-negative remainder: a = q*b + r with 0 <= r < |b|.
std::int64_t floorDiv(std::int64_t a, std::int64_t b);
std::int64_t floorMod(std::int64_t a, std::int64_t b);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Checked product of integer matrices.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
std::int64_t determinant(const IntMatrix& m);

/// Result of the column Hermite normal form: h = s * unimodular.
struct HermiteForm {
  IntMatrix h;  ///< lower triangular, positive diagonal, 0 <= h(i,j) < h(i,i) for j < i
  IntMatrix unimodular;
};

/// Column-style Hermite normal form of a nonsingular square integer matrix.
HermiteForm columnHermiteForm(const IntMatrix& s);

struct SmithForm {
  IntMatrix left;     ///< unimodular U
  IntMatrix right;    ///< unimodular V
  IntVector factors;  ///< d_1 | d_2 | ... with U * S * V = diag(factors)
};

/// Smith normal form of a nonsingular square integer matrix.
SmithForm smithForm(const IntMatrix& s);

}  // namespace pjam
