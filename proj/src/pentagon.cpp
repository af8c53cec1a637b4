#include "pjam/pentagon.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "pjam/error.hpp"
#include "pjam/linalg.hpp"

namespace pjam {

namespace {

constexpr double kPi = std::numbers::pi;

double cotChecked(double u) {
  const double s = std::sin(u);
  if (std::abs(s) <= 1e-12) throw InputError("pentagon angle difference is a multiple of pi");
  return std::cos(u) / s;
}

double csc2(double u) {
  const double s = std::sin(u);
  return 1.0 / (s * s);
}

Eigen::Matrix4cd flexMatrix(const PentagonAngles& a, std::complex<double> mu, std::complex<double> mp) {
  const double b = a.beta - a.alpha;
  const double c = a.gamma - a.alpha;
  const double d = a.delta - a.alpha;
  Eigen::Matrix4cd m;
  m << 1.0, std::cos(b), std::cos(c), std::cos(d),
       0.0, std::sin(b), std::sin(c), std::sin(d),
       1.0, mp * std::cos(b), mp * mu * std::cos(c), mu * std::cos(d),
       0.0, mp * std::sin(b), mp * mu * std::sin(c), mu * std::sin(d);
  return m;
}

Eigen::Matrix<double, 5, 5> realizationMatrix(const PentagonAngles& a) {
  const double p3 = a.phi + kPi / 3.0;
  Eigen::Matrix<double, 5, 5> m;
  m << 1.0, 0.0, 0.0, std::cos(a.delta), 4.0 * std::cos(a.phi),
       0.0, 0.0, 0.0, std::sin(a.delta), 4.0 * std::sin(a.phi),
       0.0, 0.0, std::cos(a.gamma), std::cos(a.delta), 3.0 * std::cos(p3) - std::cos(a.phi),
       0.0, 0.0, std::sin(a.gamma), std::sin(a.delta), 3.0 * std::sin(p3) - std::sin(a.phi),
       std::sin(a.alpha), std::sin(a.beta), std::sin(a.gamma), std::sin(a.delta), std::sin(a.phi);
  return m;
}

}  // namespace

double closureResidual(const PentagonAngles& a) {
  std::complex<double> s = 0.0;
  for (double t : {a.alpha, a.beta, a.gamma, a.delta, a.phi}) s += std::polar(1.0, t);
  return std::abs(s);
}

PentagonAngles referenceRealization() {
  const double af = std::asin(0.8);
  const double at = std::asin(0.3);
  return {0.0, -af - at, af - at + kPi, kPi - 2.0 * at, kPi / 2.0 - at};
}

double shapeConstant(const PentagonAngles& a) {
  const double cb = cotChecked(a.beta - a.alpha);
  const double cc = cotChecked(a.gamma - a.alpha);
  const double cd = cotChecked(a.delta - a.alpha);
  const double den = cb - cc;
  if (std::abs(den) <= 1e-12 * std::max({1.0, std::abs(cb), std::abs(cc)})) throw InputError("shape constant denominator vanishes");
  return (cd - cc) / den;
}

std::complex<double> flexDeterminant(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime) {
  return flexMatrix(a, mu, muPrime).determinant();
}

double normalizedFlexDeterminant(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime) {
  const Eigen::Matrix4cd m = flexMatrix(a, mu, muPrime);
  return std::abs(m.determinant()) / m.rowwise().norm().prod();
}

QuadraticCoefficients quadratic(const PentagonAngles& a, std::complex<double> mu) {
  const double cb = cotChecked(a.beta - a.alpha);
  const double cc = cotChecked(a.gamma - a.alpha);
  const double cd = cotChecked(a.delta - a.alpha);
  const double re = mu.real();
  QuadraticCoefficients q;
  q.a = cb - cc;
  q.b = -2.0 * cb + (2.0 - 2.0 * re) * cd + 2.0 * re * cc;
  q.c = q.a;
  if (std::abs(q.a) <= 1e-12) throw InputError("degenerate packing: leading coefficient vanishes");
  return q;
}

std::array<std::complex<double>, 2> quadraticRoots(const QuadraticCoefficients& q) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(q.b * q.b - 4.0 * q.a * q.c));
  return {(-q.b + disc) / (2.0 * q.a), (-q.b - disc) / (2.0 * q.a)};
}

CriticalRealPart criticalRealPart(const PentagonAngles& a, std::complex<double> mu) {
  const QuadraticCoefficients q = quadratic(a, mu);
  const double v = -q.b / (2.0 * q.a);
  return {v, std::abs(v) <= 1.0};
}

bool phaseFlexPredicate(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime) {
  if (std::abs(mu - 1.0) <= 1e-12 && std::abs(muPrime - 1.0) <= 1e-12) throw InputError("both phases are trivial");
  const double x = shapeConstant(a);
  const double u = mu.real() - 1.0;
  const double v = muPrime.real() - 1.0;
  const double scale = std::max(std::abs(u), std::abs(v));
  return std::abs(v - x * u) <= 1e-8 * scale;
}

bool realizationRigidityCheck(const PentagonAngles& a) {
  return rankNullspace(Eigen::MatrixXd(realizationMatrix(a))).nullity == 0;
}

double realizationConditioning(const PentagonAngles& a) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(realizationMatrix(a)));
  const auto& s = svd.singularValues();
  return s(4) / s(0);
}

PentagonAngles solveSymmetricPentagon(double alpha, double phi) {
  const double c0 = 2.0 * std::cos(alpha - phi) + 1.0;
  auto f = [&](double u) { return c0 + 2.0 * std::cos(u); };
  const double lo = -kPi;
  const double hi = 0.0;
  if (f(lo) > 0.0 || f(hi) < 0.0) throw InputError("no symmetric pentagon for this alpha and phi");
  double u = 0.0;
  if (f(lo) == 0.0) {
    u = lo;
  } else if (f(hi) == 0.0) {
    u = hi;
  } else {
    std::uintmax_t iterations = 200;
    const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
    u = 0.5 * (bracket.first + bracket.second);
  }
  PentagonAngles a;
  a.alpha = alpha;
  a.phi = phi;
  a.beta = phi + u;
  a.gamma = 2.0 * phi - a.beta;
  a.delta = 2.0 * phi - alpha;
  if (closureResidual(a) > 1e-10) throw NumericalError("symmetric pentagon does not close");
  return a;
}

AngleDirection nominalFamilyDirection() {
  const double s = 6.0 / std::sqrt(91.0);
  return {1.0, -s, s, -1.0, 0.0};
}

AngleDirection symmetricFamilyDirection(const PentagonAngles& a) {
  const double db = -std::sin(a.alpha - a.phi) / std::sin(a.beta - a.phi);
  return {1.0, db, -db, -1.0, 0.0};
}

double shapeDerivative(const PentagonAngles& a, const AngleDirection& dir) {
  const double ub = a.beta - a.alpha;
  const double uc = a.gamma - a.alpha;
  const double ud = a.delta - a.alpha;
  const double n = cotChecked(ud) - cotChecked(uc);
  const double d = cotChecked(ub) - cotChecked(uc);
  const double dn = -csc2(ud) * (dir[3] - dir[0]) + csc2(uc) * (dir[2] - dir[0]);
  const double dd = -csc2(ub) * (dir[1] - dir[0]) + csc2(uc) * (dir[2] - dir[0]);
  return (dn * d - n * dd) / (d * d);
}

double shapeDerivativeFiniteDifference(const PentagonAngles& a, double step) {
  const double xp = shapeConstant(solveSymmetricPentagon(a.alpha + step, a.phi));
  const double xm = shapeConstant(solveSymmetricPentagon(a.alpha - step, a.phi));
  return (xp - xm) / (2.0 * step);
}

ShapeMinimum symmetricShapeMinimum(double phi, double lo, double hi) {
  auto f = [&](double alpha) { return shapeConstant(solveSymmetricPentagon(alpha, phi)); };
  const auto best = boost::math::tools::brent_find_minima(f, lo, hi, 50);
  return {best.first, best.second};
}

std::optional<PentagonAngles> findShapeForX(double target, double phi) {
  return findShapeForX(target, phi, -0.2, symmetricShapeMinimum(phi).alpha);
}

std::optional<PentagonAngles> findShapeForX(double target, double phi, double lo, double hi) {
  auto g = [&](double alpha) { return shapeConstant(solveSymmetricPentagon(alpha, phi)) - target; };
  double glo = 0.0;
  double ghi = 0.0;
  try {
    glo = g(lo);
    ghi = g(hi);
  } catch (const InputError&) {
    return std::nullopt;
  }
  double alpha = 0.0;
  if (glo == 0.0) {
    alpha = lo;
  } else if (ghi == 0.0) {
    alpha = hi;
  } else {
    if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
    try {
      std::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iterations);
      alpha = 0.5 * (bracket.first + bracket.second);
    } catch (const InputError&) {
      return std::nullopt;
    }
  }
  const PentagonAngles a = solveSymmetricPentagon(alpha, phi);
  if (std::abs(shapeConstant(a) - target) > 1e-8) return std::nullopt;
  return a;
}

}  // namespace pjam
