#include "pjam/framework.hpp"

#include <string>

#include "pjam/error.hpp"

namespace pjam {

std::string_view toString(Kind kind) {
  switch (kind) {
    case Kind::bar:
      return "bar";
    case Kind::cable:
      return "cable";
    case Kind::strut:
      return "strut";
  }
  return "unknown";
}

Kind kindFromString(std::string_view text) {
  if (text == "bar") return Kind::bar;
  if (text == "cable") return Kind::cable;
  if (text == "strut") return Kind::strut;
  throw InputError("unknown member kind '" + std::string(text) + "'");
}

bool lexPositive(const IntVector& v) {
  for (Eigen::Index m = 0; m < v.size(); ++m)
    if (v(m) != 0) return v(m) > 0;
  return false;
}

Contact canonicalContact(Contact c) {
  if (c.i > c.j || (c.i == c.j && !lexPositive(c.offset))) {
    std::swap(c.i, c.j);
    c.offset = -c.offset;
  }
  return c;
}

void validateTensegrity(const Tensegrity& t) {
  const int d = t.dim();
  if (d < 1) throw InputError("tensegrity has no lattice");
  makeLattice(t.lattice.basis);
  for (const auto& p : t.vertices)
    if (p.size() != d || !p.allFinite()) throw InputError("vertex has wrong dimension or non-finite coordinates");
  for (std::size_t k = 0; k < t.contacts.size(); ++k) {
    const Contact& c = t.contacts[k];
    if (c.i < 0 || c.j < 0 || c.i >= t.vertexCount() || c.j >= t.vertexCount())
      throw InputError("contact " + std::to_string(k) + " has a vertex index out of range");
    if (c.offset.size() != d) throw InputError("contact " + std::to_string(k) + " has an offset of wrong dimension");
    if (c.i == c.j && c.offset.isZero()) throw InputError("contact " + std::to_string(k) + " joins a vertex to itself");
    if (edgeVector(t, k).norm() <= 1e-12) throw InputError("contact " + std::to_string(k) + " has a zero edge vector");
  }
}

Tensegrity withKind(Tensegrity t, Kind kind) {
  for (auto& c : t.contacts) c.kind = kind;
  return t;
}

Eigen::VectorXd edgeVector(const Tensegrity& t, std::size_t k) {
  const Contact& c = t.contacts.at(k);
  return t.vertices[static_cast<std::size_t>(c.j)] + t.lattice.point(c.offset) - t.vertices[static_cast<std::size_t>(c.i)];
}

Eigen::MatrixXd edgeVectors(const Tensegrity& t) {
  Eigen::MatrixXd e(t.dim(), t.contactCount());
  for (int k = 0; k < t.contactCount(); ++k) e.col(k) = edgeVector(t, static_cast<std::size_t>(k));
  return e;
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> FlexVector<Scalar>::stacked() const {
  const Eigen::Index d = perVertex.rows();
  const Eigen::Index n = perVertex.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n * d + (affine ? d * d : 0));
  for (Eigen::Index i = 0; i < n; ++i) v.segment(i * d, d) = perVertex.col(i);
  if (affine)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) v(n * d + a * d + b) = Scalar((*affine)(a, b));
  return v;
}

template <class Scalar>
FlexVector<Scalar> FlexVector<Scalar>::fromStacked(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, int dim, int vertices,
                                                  bool withAffine) {
  const Eigen::Index expected = static_cast<Eigen::Index>(dim) * vertices + (withAffine ? dim * dim : 0);
  if (v.size() != expected) throw InputError("flex vector has wrong length");
  FlexVector f;
  f.perVertex.resize(dim, vertices);
  for (int i = 0; i < vertices; ++i) f.perVertex.col(i) = v.segment(static_cast<Eigen::Index>(i) * dim, dim);
  if (withAffine) {
    Eigen::MatrixXd a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const Scalar x = v(static_cast<Eigen::Index>(vertices) * dim + r * dim + c);
        if constexpr (std::is_same_v<Scalar, double>)
          a(r, c) = x;
        else
          a(r, c) = std::real(x);
      }
    f.affine = a;
  }
  return f;
}

template struct FlexVector<double>;
template struct FlexVector<std::complex<double>>;

RigidityOperator<double> rigidityMatrix(const Tensegrity& t) {
  const int d = t.dim();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(t.contactCount(), static_cast<Eigen::Index>(t.vertexCount()) * d);
  for (int k = 0; k < t.contactCount(); ++k) {
    const Contact& c = t.contacts[static_cast<std::size_t>(k)];
    const Eigen::VectorXd e = edgeVector(t, static_cast<std::size_t>(k));
    r.block(k, static_cast<Eigen::Index>(c.j) * d, 1, d) += e.transpose();
    r.block(k, static_cast<Eigen::Index>(c.i) * d, 1, d) -= e.transpose();
  }
  return {OperatorVariant::periodic, std::move(r), std::nullopt};
}

RigidityOperator<double> affineRigidityMatrix(const Tensegrity& t) {
  const int d = t.dim();
  const Eigen::Index nd = static_cast<Eigen::Index>(t.vertexCount()) * d;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(t.contactCount(), nd + d * d);
  r.leftCols(nd) = rigidityMatrix(t).matrix;
  for (int k = 0; k < t.contactCount(); ++k) {
    const Eigen::VectorXd e = edgeVector(t, static_cast<std::size_t>(k));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) r(k, nd + a * d + b) = e(a) * e(b);
  }
  return {OperatorVariant::affine, std::move(r), std::nullopt};
}

RigidityOperator<std::complex<double>> phaseMatrix(const Tensegrity& t, const QuotientCharacter& chi) {
  const int d = t.dim();
  if (chi.dim() != d) throw InputError("character dimension does not match the tensegrity");
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(t.contactCount(), static_cast<Eigen::Index>(t.vertexCount()) * d);
  for (int k = 0; k < t.contactCount(); ++k) {
    const Contact& c = t.contacts[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd e = edgeVector(t, static_cast<std::size_t>(k)).cast<std::complex<double>>();
    const std::complex<double> rho = chi.at(c.offset);
    r.block(k, static_cast<Eigen::Index>(c.j) * d, 1, d) += rho * e.transpose();
    r.block(k, static_cast<Eigen::Index>(c.i) * d, 1, d) -= e.transpose();
  }
  return {OperatorVariant::phase, std::move(r), chi};
}

Eigen::MatrixXd translationBasis(const Tensegrity& t) {
  const int d = t.dim();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.vertexCount()) * d, d);
  for (int i = 0; i < t.vertexCount(); ++i) b.block(static_cast<Eigen::Index>(i) * d, 0, d, d).setIdentity();
  return b;
}

Eigen::MatrixXd affineTrivialBasis(const Tensegrity& t) {
  const int d = t.dim();
  const Eigen::Index nd = static_cast<Eigen::Index>(t.vertexCount()) * d;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nd + d * d, d + d * (d - 1) / 2);
  b.topLeftCorner(nd, d) = translationBasis(t);
  int col = d;
  for (int a = 0; a < d; ++a)
    for (int c = a + 1; c < d; ++c, ++col) {
      b(nd + a * d + c, col) = 1.0;
      b(nd + c * d + a, col) = -1.0;
    }
  return b;
}

Tensegrity coverFramework(const Tensegrity& t, const Sublattice& s) {
  if (s.dim() != t.dim()) throw InputError("sublattice dimension does not match the tensegrity");
  const Transversal tr(s);
  const int n = t.vertexCount();
  Tensegrity cover;
  cover.lattice = Lattice{t.lattice.basis * tr.hermite().cast<double>()};
  cover.vertices.reserve(tr.size() * static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < tr.size(); ++idx)
    for (int i = 0; i < n; ++i) cover.vertices.push_back(t.vertices[static_cast<std::size_t>(i)] + t.lattice.point(tr.digit(idx)));
  cover.contacts.reserve(tr.size() * t.contacts.size());
  for (std::size_t idx = 0; idx < tr.size(); ++idx) {
    for (const Contact& c : t.contacts) {
      const auto [target, coset] = tr.reduce(tr.digit(idx) + c.offset);
      Contact lifted;
      lifted.i = static_cast<int>(idx) * n + c.i;
      lifted.j = static_cast<int>(target) * n + c.j;
      lifted.offset = coset;
      lifted.kind = c.kind;
      cover.contacts.push_back(canonicalContact(lifted));
    }
  }
  return cover;
}

Eigen::VectorXcd liftPhaseFlex(const Tensegrity& t, const Sublattice& s, const QuotientCharacter& chi,
                               const Eigen::VectorXcd& flex) {
  const Eigen::Index block = static_cast<Eigen::Index>(t.vertexCount()) * t.dim();
  if (flex.size() != block) throw InputError("phase flex has wrong length");
  const Transversal tr(s);
  Eigen::VectorXcd q(block * static_cast<Eigen::Index>(tr.size()));
  for (std::size_t idx = 0; idx < tr.size(); ++idx)
    q.segment(static_cast<Eigen::Index>(idx) * block, block) = chi.at(tr.digit(idx)) * flex;
  return q;
}

Eigen::VectorXd liftStress(const Tensegrity& t, const Sublattice& s, const Eigen::VectorXd& omega) {
  if (omega.size() != t.contactCount()) throw InputError("stress has wrong length");
  const auto m = static_cast<Eigen::Index>(s.index());
  Eigen::VectorXd lifted(omega.size() * m);
  for (Eigen::Index r = 0; r < m; ++r) lifted.segment(r * omega.size(), omega.size()) = omega;
  return lifted;
}

}  // namespace pjam
