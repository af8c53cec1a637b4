#pragma once

#include <complex>

#include <Eigen/Core>

namespace pjam {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
struct RankResult {
  int rank = 0;
  int nullity = 0;
  Matrix<Scalar> nullspace;        ///< orthonormal columns spanning the numerical kernel
  Eigen::VectorXd singularValues;  ///< descending
};

/// Numerical rank with threshold tolFactor * sigma_max; throws InputError on NaN/Inf.
RankResult<double> rankNullspace(const Eigen::MatrixXd& m, double tolFactor = 1e-9);
RankResult<std::complex<double>> rankNullspace(const Eigen::MatrixXcd& m, double tolFactor = 1e-9);

/// Smallest of the `cols` singular values, counting missing ones (rows < cols) as zero.
double smallestSingularValue(const Eigen::MatrixXcd& m);

/// Orthonormal basis of span(basis) minus span(trivial); both inputs need not be orthonormal.
template <class Scalar>
Matrix<Scalar> deflate(const Matrix<Scalar>& basis, const Matrix<Scalar>& trivial, double tol = 1e-7);

}  // namespace pjam
