#include "pjam/lattice.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "pjam/error.hpp"

namespace pjam {

double Lattice::cellVolume() const { return std::abs(basis.determinant()); }

Eigen::VectorXd Lattice::point(const IntVector& coords) const { return basis * coords.cast<double>(); }

Lattice makeLattice(const Eigen::MatrixXd& basis) {
  if (basis.rows() != basis.cols() || basis.rows() == 0) throw InputError("lattice basis must be a non-empty square matrix");
  if (!basis.allFinite()) throw InputError("lattice basis has non-finite entries");
  const double det = basis.determinant();
  const double scale = basis.colwise().norm().prod();
  if (std::abs(det) <= 1e-12 * scale) throw InputError("singular lattice basis");
  return Lattice{basis};
}

Eigen::MatrixXd dualBasis(const Lattice& lattice) { return makeLattice(lattice.basis).basis.inverse(); }

std::vector<IntVector> latticePointsNear(const Lattice& lattice, const Eigen::VectorXd& target, double radius) {
  const Eigen::MatrixXd dual = dualBasis(lattice);
  const Eigen::Index d = lattice.basis.rows();
  const Eigen::VectorXd centre = dual * target;
  IntVector lo(d), hi(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const double spread = dual.row(m).norm() * radius;
    lo(m) = static_cast<std::int64_t>(std::ceil(centre(m) - spread - 1e-9));
    hi(m) = static_cast<std::int64_t>(std::floor(centre(m) + spread + 1e-9));
    if (hi(m) < lo(m)) return {};
  }
  std::vector<IntVector> out;
  IntVector lambda = lo;
  for (;;) {
    if ((lattice.point(lambda) - target).norm() <= radius) out.push_back(lambda);
    Eigen::Index m = d - 1;
    while (m >= 0 && lambda(m) == hi(m)) {
      lambda(m) = lo(m);
      --m;
    }
    if (m < 0) break;
    ++lambda(m);
  }
  return out;
}

std::int64_t Sublattice::index() const {
  const std::int64_t det = determinant(coeffs);
  return det < 0 ? -det : det;
}

Sublattice makeSublattice(const IntMatrix& coeffs) {
  if (coeffs.rows() != coeffs.cols() || coeffs.rows() == 0) throw InputError("sublattice matrix must be square");
  if (determinant(coeffs) == 0) throw InputError("singular sublattice matrix");
  return Sublattice{coeffs};
}

Sublattice diagonalSublattice(const std::vector<std::int64_t>& diagonal) {
  const auto d = static_cast<Eigen::Index>(diagonal.size());
  IntMatrix s = IntMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) s(i, i) = diagonal[static_cast<std::size_t>(i)];
  return makeSublattice(s);
}

std::int64_t QuotientGroup::order() const {
  std::int64_t n = 1;
  for (Eigen::Index i = 0; i < factors.size(); ++i) n = checkedMul(n, factors(i));
  return n;
}

QuotientGroup smithNormalForm(const Sublattice& s) {
  SmithForm f = smithForm(s.coeffs);
  return {f.factors, f.left, f.right};
}

std::complex<double> unitPhase(std::int64_t num, std::int64_t den) {
  const std::int64_t r = floorMod(num, den);
  if (r == 0) return {1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return std::polar(1.0, angle);
}

QuotientCharacter::QuotientCharacter(std::vector<std::int64_t> numerators, std::int64_t denominator)
    : numerators_(std::move(numerators)), denominator_(denominator) {
  if (denominator_ <= 0) throw InputError("character denominator must be positive");
  std::int64_t g = denominator_;
  for (auto& n : numerators_) {
    n = floorMod(n, denominator_);
    g = gcd(g, n);
  }
  if (g > 1) {
    for (auto& n : numerators_) n /= g;
    denominator_ /= g;
  }
}

bool QuotientCharacter::isTrivial() const {
  for (auto n : numerators_)
    if (n != 0) return false;
  return true;
}

std::pair<std::int64_t, std::int64_t> QuotientCharacter::turn(int m) const {
  const std::int64_t n = numerators_.at(static_cast<std::size_t>(m));
  const std::int64_t g = gcd(n, denominator_);
  return {n / g, denominator_ / g};
}

std::int64_t QuotientCharacter::order(int m) const { return turn(m).second; }

std::complex<double> QuotientCharacter::phase(int m) const {
  return unitPhase(numerators_.at(static_cast<std::size_t>(m)), denominator_);
}

std::vector<std::complex<double>> QuotientCharacter::phases() const {
  std::vector<std::complex<double>> out;
  out.reserve(numerators_.size());
  for (int m = 0; m < dim(); ++m) out.push_back(phase(m));
  return out;
}

std::int64_t QuotientCharacter::turnsAt(const IntVector& lambda) const {
  if (lambda.size() != dim()) throw InputError("character/offset dimension mismatch");
  std::int64_t acc = 0;
  for (int m = 0; m < dim(); ++m) {
    const std::int64_t term = checkedMul(floorMod(lambda(m), denominator_), numerators_[static_cast<std::size_t>(m)]);
    acc = floorMod(checkedAdd(acc, term), denominator_);
  }
  return acc;
}

std::complex<double> QuotientCharacter::at(const IntVector& lambda) const {
  return unitPhase(turnsAt(lambda), denominator_);
}

QuotientCharacter QuotientCharacter::conjugate() const {
  std::vector<std::int64_t> neg(numerators_.size());
  for (std::size_t m = 0; m < neg.size(); ++m) neg[m] = -numerators_[m];
  return QuotientCharacter(std::move(neg), denominator_);
}

bool operator==(const QuotientCharacter& a, const QuotientCharacter& b) {
  return a.denominator_ == b.denominator_ && a.numerators_ == b.numerators_;
}

std::vector<QuotientCharacter> enumerateCharacters(const QuotientGroup& q, const Sublattice& s) {
  const int d = s.dim();
  if (q.factors.size() != d || q.left.rows() != d) throw InputError("quotient group does not match sublattice");
  if (q.order() != s.index()) throw InputError("quotient group order differs from sublattice index");
  const std::int64_t big = q.factors(d - 1);
  std::vector<QuotientCharacter> out;
  out.reserve(static_cast<std::size_t>(q.order()));
  std::vector<std::int64_t> k(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<std::int64_t> nums(static_cast<std::size_t>(d), 0);
    for (int m = 0; m < d; ++m) {
      std::int64_t acc = 0;
      for (int i = 0; i < d; ++i) {
        const std::int64_t scale = big / q.factors(i);
        acc = checkedAdd(acc, checkedMul(checkedMul(k[static_cast<std::size_t>(i)], q.left(i, m)), scale));
      }
      nums[static_cast<std::size_t>(m)] = acc;
    }
    out.emplace_back(std::move(nums), big);
    int pos = d - 1;
    while (pos >= 0) {
      auto& digit = k[static_cast<std::size_t>(pos)];
      if (++digit < q.factors(pos)) break;
      digit = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

namespace {

void enumerateDiagonals(int d, std::int64_t m, std::vector<std::int64_t>& current,
                        std::vector<std::vector<std::int64_t>>& out) {
  if (static_cast<int>(current.size()) == d - 1) {
    current.push_back(m);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::int64_t a = 1; a <= m; ++a) {
    if (m % a != 0) continue;
    current.push_back(a);
    enumerateDiagonals(d, m / a, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Sublattice> enumerateSublattices(int d, std::int64_t m) {
  if (d < 1) throw InputError("dimension must be positive");
  if (m <= 0) throw InputError("sublattice index must be positive");
  std::vector<std::vector<std::int64_t>> diagonals;
  std::vector<std::int64_t> current;
  enumerateDiagonals(d, m, current, diagonals);

  std::vector<Sublattice> out;
  for (const auto& diag : diagonals) {
    // Free entries h(i, j), j < i, range over [0, diag[i]).
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j) slots.emplace_back(i, j);
    std::vector<std::int64_t> values(slots.size(), 0);
    for (;;) {
      IntMatrix h = IntMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i) h(i, i) = diag[static_cast<std::size_t>(i)];
      for (std::size_t s = 0; s < slots.size(); ++s) h(slots[s].first, slots[s].second) = values[s];
      out.push_back(Sublattice{h});
      std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(slots.size()) - 1;
      while (pos >= 0) {
        const auto p = static_cast<std::size_t>(pos);
        if (++values[p] < diag[static_cast<std::size_t>(slots[p].first)]) break;
        values[p] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

std::int64_t divisorSum(std::int64_t m) {
  std::int64_t s = 0;
  for (std::int64_t a = 1; a <= m; ++a)
    if (m % a == 0) s += a;
  return s;
}

Transversal::Transversal(const Sublattice& s) : hermite_(columnHermiteForm(s.coeffs).h) {
  const Eigen::Index d = hermite_.rows();
  IntVector digit = IntVector::Zero(d);
  for (;;) {
    digits_.push_back(digit);
    Eigen::Index pos = d - 1;
    while (pos >= 0) {
      if (++digit(pos) < hermite_(pos, pos)) break;
      digit(pos) = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::size_t Transversal::indexOf(const IntVector& digit) const {
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < digit.size(); ++i)
    idx = idx * static_cast<std::size_t>(hermite_(i, i)) + static_cast<std::size_t>(digit(i));
  return idx;
}

std::pair<std::size_t, IntVector> Transversal::reduce(const IntVector& v) const {
  const Eigen::Index d = hermite_.rows();
  if (v.size() != d) throw InputError("transversal reduce: dimension mismatch");
  IntVector r = v;
  IntVector coset = IntVector::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::int64_t q = floorDiv(r(i), hermite_(i, i));
    coset(i) = q;
    if (q == 0) continue;
    for (Eigen::Index row = i; row < d; ++row) r(row) = checkedSub(r(row), checkedMul(q, hermite_(row, i)));
  }
  return {indexOf(r), coset};
}

}  // namespace pjam
