#include "pjam/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "pjam/error.hpp"

namespace pjam {

namespace {

template <class Scalar>
RankResult<Scalar> rankNullspaceImpl(const Matrix<Scalar>& m, double tolFactor) {
  if (!m.allFinite()) throw InputError("matrix has NaN or Inf entries");
  const Eigen::Index cols = m.cols();
  RankResult<Scalar> out;
  if (cols == 0) return out;
  if (m.rows() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    out.nullity = static_cast<int>(cols);
    out.nullspace = Matrix<Scalar>::Identity(cols, cols);
    out.singularValues = Eigen::VectorXd::Zero(std::min(m.rows(), cols));
    return out;
  }
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeFullV);
  out.singularValues = svd.singularValues();
  const double threshold = tolFactor * out.singularValues(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < out.singularValues.size(); ++i)
    if (out.singularValues(i) > threshold) ++rank;
  out.rank = rank;
  out.nullity = static_cast<int>(cols) - rank;
  out.nullspace = svd.matrixV().rightCols(out.nullity);
  return out;
}

}  // namespace

RankResult<double> rankNullspace(const Eigen::MatrixXd& m, double tolFactor) { return rankNullspaceImpl<double>(m, tolFactor); }

RankResult<std::complex<double>> rankNullspace(const Eigen::MatrixXcd& m, double tolFactor) {
  return rankNullspaceImpl<std::complex<double>>(m, tolFactor);
}

double smallestSingularValue(const Eigen::MatrixXcd& m) {
  if (m.rows() < m.cols() || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(m.cols() - 1);
}

template <class Scalar>
Matrix<Scalar> deflate(const Matrix<Scalar>& basis, const Matrix<Scalar>& trivial, double tol) {
  Matrix<Scalar> projected = basis;
  if (trivial.cols() > 0) {
    Eigen::HouseholderQR<Matrix<Scalar>> qr(trivial);
    const Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(trivial.rows(), trivial.cols());
    projected -= q * (q.adjoint() * basis);
  }
  if (projected.cols() == 0) return projected;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(projected, Eigen::ComputeThinU);
  int keep = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++keep;
  return svd.matrixU().leftCols(keep);
}

template Matrix<double> deflate(const Matrix<double>&, const Matrix<double>&, double);
template Matrix<std::complex<double>> deflate(const Matrix<std::complex<double>>&, const Matrix<std::complex<double>>&,
                                              double);

}  // namespace pjam
