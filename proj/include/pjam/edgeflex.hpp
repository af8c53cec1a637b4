#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pjam/framework.hpp"

namespace pjam {

/// Half-edge 2k runs along contact k from i to j; 2k+1 is its reverse.
inline int halfEdgeContact(int h) { return h / 2; }
inline double halfEdgeSign(int h) { return h % 2 == 0 ? 1.0 : -1.0; }

/// Rotation system and faces of a periodic planar embedding.
struct FaceStructure {
  std::vector<std::vector<int>> rotation;  ///< outgoing half-edges per vertex, counterclockwise
  std::vector<int> next;                   ///< successor of each half-edge along its face
  std::vector<std::vector<int>> faces;     ///< half-edge cycles
  int euler = 0;                           ///< V - E + F

  /// Number of faces with exactly `size` sides.
  int countFaces(std::size_t size) const;
};

/// d = 2 only. Throws InputError on crossing edges, collinear overlaps or Euler != 0.
FaceStructure traceFaces(const Tensegrity& t);

/// Closed walk (as half-edges) from vertex 0 to its translate by generator m.
std::vector<int> tourPath(const Tensegrity& t, int generator);

/// e'_k = p'_j - p'_i (+ A e_k); d x E.
Eigen::MatrixXd vertexToEdgeFlex(const Tensegrity& t, const Eigen::MatrixXd& perVertex,
                                 const std::optional<Eigen::MatrixXd>& affine = std::nullopt);

/// Contacts whose edge flex breaks the member sign rule (bar = 0, cable <= 0, strut >= 0).
std::vector<int> edgeSignViolations(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex, double tol = 1e-9);

/// Column m: the edge flex summed along tourPath(t, m).
Eigen::MatrixXd tourSums(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex);

/// Integrates an edge flex from `anchor`; throws InputError naming the first violated face or tour.
Eigen::MatrixXd edgeToVertexFlex(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex, int anchor = 0,
                                 const Eigen::VectorXd& anchorValue = Eigen::VectorXd());

/// Infinitesimal rotations alpha_k with e'_k = alpha_k R(pi/2) e_k.
struct RotationSpace {
  FaceStructure faces;
  std::vector<std::vector<int>> tours;
  Eigen::MatrixXd constraints;  ///< 2 rows per face, then 2 per tour
  Eigen::MatrixXd basis;        ///< E x dim, orthonormal
};

/// Face and tour conditions; members are treated as bars.
RotationSpace rotationFlexSpace(const Tensegrity& t);
/// Face conditions only.
RotationSpace faceRotationSpace(const Tensegrity& t);

/// Edge flex R(pi/2) e_k alpha_k.
Eigen::MatrixXd rotationToEdgeFlex(const Tensegrity& t, const Eigen::VectorXd& alpha);

struct LemmaViolation {
  int face = 0;
  std::string lemma;  ///< "triangle" or "rhombus"
  double gap = 0.0;
};

std::vector<LemmaViolation> checkTriangleRhombusLemmas(const Tensegrity& t, const FaceStructure& faces,
                                                       const Eigen::VectorXd& alpha, double tol = 1e-8);

}  // namespace pjam
