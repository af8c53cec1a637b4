#pragma once

#include <array>
#include <complex>
#include <optional>

namespace pjam {

/// Edge directions (radians) of the unit-edge pentagon.
struct PentagonAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double phi = 0.0;
};

/// |sum of exp(i angle)| over the five edges.
double closureResidual(const PentagonAngles& a);

/// alpha = 0, beta = -AF - AT, gamma = AF - AT + pi, delta = pi - 2 AT, phi = pi/2 - AT,
/// with AF = asin(4/5) and AT = asin(3/10).
PentagonAngles referenceRealization();

/// (cot(delta-alpha) - cot(gamma-alpha)) / (cot(beta-alpha) - cot(gamma-alpha)).
/// Throws InputError when an angle difference is a multiple of pi or the denominator vanishes.
double shapeConstant(const PentagonAngles& a);

/// Determinant of the 4x4 phase-flex system with r = 0, angles taken relative to alpha.
std::complex<double> flexDeterminant(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime);
/// The same determinant divided by the product of its row norms.
double normalizedFlexDeterminant(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime);

struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// A mu'^2 + B mu' + C = 0 after removing the factor mu; A = C = cot(beta) - cot(gamma).
QuadraticCoefficients quadratic(const PentagonAngles& a, std::complex<double> mu);
std::array<std::complex<double>, 2> quadraticRoots(const QuadraticCoefficients& q);

struct CriticalRealPart {
  double value = 0.0;  ///< -B / 2A
  bool onUnitCircle = false;
};

CriticalRealPart criticalRealPart(const PentagonAngles& a, std::complex<double> mu);

/// (Re mu' - 1) = x (Re mu - 1) within 1e-8 relative. Throws InputError when both phases are 1.
bool phaseFlexPredicate(const PentagonAngles& a, std::complex<double> mu, std::complex<double> muPrime);

/// Nullity of the 5x5 system in the lower-pentagon rotations (a, b, c, d, r) is zero.
bool realizationRigidityCheck(const PentagonAngles& a);
/// Smallest singular value of that system over its largest.
double realizationConditioning(const PentagonAngles& a);

/// Bilaterally symmetric pentagon with phi held fixed: delta = 2 phi - alpha, gamma = 2 phi - beta,
/// beta on the branch beta - phi in (-pi, 0). Throws InputError when no such branch exists.
PentagonAngles solveSymmetricPentagon(double alpha, double phi);

using AngleDirection = std::array<double, 5>;  ///< (d alpha, d beta, d gamma, d delta, d phi)

/// (1, -6/sqrt(91), 6/sqrt(91), -1, 0).
AngleDirection nominalFamilyDirection();
/// Tangent of the symmetric family at `a`: beta' = -sin(alpha - phi) / sin(beta - phi).
AngleDirection symmetricFamilyDirection(const PentagonAngles& a);

/// Directional derivative of shapeConstant by the chain rule.
double shapeDerivative(const PentagonAngles& a, const AngleDirection& direction);
/// Central difference of shapeConstant along solveSymmetricPentagon.
double shapeDerivativeFiniteDifference(const PentagonAngles& a, double step = 1e-6);

struct ShapeMinimum {
  double alpha = 0.0;
  double x = 0.0;
};

/// Minimum of the shape constant along the symmetric family, searched for alpha in [lo, hi].
ShapeMinimum symmetricShapeMinimum(double phi, double lo = -0.2, double hi = 0.2);

/// alpha in [lo, hi] with shapeConstant(solveSymmetricPentagon(alpha, phi)) = target to 1e-8.
std::optional<PentagonAngles> findShapeForX(double target, double phi, double lo, double hi);
/// Same, on the decreasing branch from alpha = -0.2 up to the family minimum.
std::optional<PentagonAngles> findShapeForX(double target, double phi);

}  // namespace pjam
