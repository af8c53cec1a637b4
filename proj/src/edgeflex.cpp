#include "pjam/edgeflex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "pjam/error.hpp"
#include "pjam/linalg.hpp"

namespace pjam {

namespace {

struct HalfEdgeView {
  int origin;
  int target;
  Eigen::Vector2d vec;
  IntVector offset;
};

HalfEdgeView view(const Tensegrity& t, int h) {
  const Contact& c = t.contacts[static_cast<std::size_t>(halfEdgeContact(h))];
  const Eigen::Vector2d e = edgeVector(t, static_cast<std::size_t>(halfEdgeContact(h)));
  if (h % 2 == 0) return {c.i, c.j, e, c.offset};
  return {c.j, c.i, -e, -c.offset};
}

void requirePlanar(const Tensegrity& t) {
  if (t.dim() != 2) throw InputError("edge flex analysis needs a two-dimensional framework");
  validateTensegrity(t);
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segmentsCross(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1, const Eigen::Vector2d& b0,
                   const Eigen::Vector2d& b1, double eps) {
  const bool shared = (a0 - b0).norm() <= eps || (a0 - b1).norm() <= eps || (a1 - b0).norm() <= eps || (a1 - b1).norm() <= eps;
  const Eigen::Vector2d da = a1 - a0;
  const Eigen::Vector2d db = b1 - b0;
  const double o1 = cross(da, b0 - a0);
  const double o2 = cross(da, b1 - a0);
  const double o3 = cross(db, a0 - b0);
  const double o4 = cross(db, a1 - b0);
  const double scale = eps * std::max(da.norm(), db.norm());
  if (std::abs(cross(da, db)) <= scale * std::max(da.norm(), db.norm())) {
    // Parallel: overlapping only if collinear with interior overlap.
    if (std::abs(o1) > scale) return false;
    const double len = da.squaredNorm();
    const double s0 = (b0 - a0).dot(da) / len;
    const double s1 = (b1 - a0).dot(da) / len;
    const double lo = std::max(0.0, std::min(s0, s1));
    const double hi = std::min(1.0, std::max(s0, s1));
    return hi - lo > eps;
  }
  if (shared) return false;
  const bool proper = ((o1 > scale && o2 < -scale) || (o1 < -scale && o2 > scale)) &&
                      ((o3 > scale && o4 < -scale) || (o3 < -scale && o4 > scale));
  if (proper) return true;
  // An endpoint resting on the other segment's interior.
  auto onSegment = [&](const Eigen::Vector2d& p, const Eigen::Vector2d& s0, const Eigen::Vector2d& s1) {
    const Eigen::Vector2d d = s1 - s0;
    if (std::abs(cross(d, p - s0)) > scale) return false;
    const double u = (p - s0).dot(d) / d.squaredNorm();
    return u > eps && u < 1.0 - eps;
  };
  return onSegment(b0, a0, a1) || onSegment(b1, a0, a1) || onSegment(a0, b0, b1) || onSegment(a1, b0, b1);
}

void checkCrossings(const Tensegrity& t) {
  const int e = t.contactCount();
  const double eps = 1e-9;
  for (int k1 = 0; k1 < e; ++k1) {
    const HalfEdgeView v1 = view(t, 2 * k1);
    const Eigen::Vector2d a0 = t.vertices[static_cast<std::size_t>(v1.origin)];
    const Eigen::Vector2d a1 = a0 + v1.vec;
    for (int k2 = k1; k2 < e; ++k2) {
      const HalfEdgeView v2 = view(t, 2 * k2);
      const Eigen::Vector2d b0 = t.vertices[static_cast<std::size_t>(v2.origin)];
      const Eigen::Vector2d target = (a0 + 0.5 * v1.vec) - (b0 + 0.5 * v2.vec);
      const double reach = 0.5 * (v1.vec.norm() + v2.vec.norm()) + eps;
      for (const IntVector& lambda : latticePointsNear(t.lattice, target, reach)) {
        if (k1 == k2 && lambda.isZero()) continue;
        const Eigen::Vector2d shift = t.lattice.point(lambda);
        if (segmentsCross(a0, a1, b0 + shift, b0 + shift + v2.vec, eps))
          throw InputError("contacts " + std::to_string(k1) + " and " + std::to_string(k2) + " cross");
      }
    }
  }
}

Eigen::Vector2d quarterTurn(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

// Sum over a half-edge walk of sign * R(pi/2) e_k, as a 2 x E coefficient block.
Eigen::MatrixXd walkRows(const Tensegrity& t, const std::vector<int>& walk) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2, t.contactCount());
  for (int h : walk) {
    const int k = halfEdgeContact(h);
    rows.col(k) += halfEdgeSign(h) * quarterTurn(edgeVector(t, static_cast<std::size_t>(k)));
  }
  return rows;
}

Eigen::Vector2d walkSum(const Eigen::MatrixXd& edgeFlex, const std::vector<int>& walk) {
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int h : walk) s += halfEdgeSign(h) * edgeFlex.col(halfEdgeContact(h));
  return s;
}

RotationSpace buildSpace(const Tensegrity& t, bool withTours) {
  RotationSpace space;
  space.faces = traceFaces(t);
  std::vector<Eigen::MatrixXd> blocks;
  for (const auto& f : space.faces.faces) blocks.push_back(walkRows(t, f));
  if (withTours)
    for (int m = 0; m < 2; ++m) {
      space.tours.push_back(tourPath(t, m));
      blocks.push_back(walkRows(t, space.tours.back()));
    }
  space.constraints.resize(static_cast<Eigen::Index>(2 * blocks.size()), t.contactCount());
  for (std::size_t b = 0; b < blocks.size(); ++b) space.constraints.middleRows(static_cast<Eigen::Index>(2 * b), 2) = blocks[b];
  space.basis = rankNullspace(space.constraints).nullspace;
  return space;
}

}  // namespace

int FaceStructure::countFaces(std::size_t size) const {
  return static_cast<int>(std::count_if(faces.begin(), faces.end(), [&](const auto& f) { return f.size() == size; }));
}

FaceStructure traceFaces(const Tensegrity& t) {
  requirePlanar(t);
  checkCrossings(t);
  const int n = t.vertexCount();
  const int halfEdges = 2 * t.contactCount();
  FaceStructure fs;
  fs.rotation.resize(static_cast<std::size_t>(n));
  std::vector<double> angle(static_cast<std::size_t>(halfEdges));
  for (int h = 0; h < halfEdges; ++h) {
    const HalfEdgeView v = view(t, h);
    angle[static_cast<std::size_t>(h)] = std::atan2(v.vec.y(), v.vec.x());
    fs.rotation[static_cast<std::size_t>(v.origin)].push_back(h);
  }
  std::vector<int> position(static_cast<std::size_t>(halfEdges));
  for (auto& out : fs.rotation) {
    std::sort(out.begin(), out.end(), [&](int a, int b) { return angle[static_cast<std::size_t>(a)] < angle[static_cast<std::size_t>(b)]; });
    for (std::size_t p = 0; p < out.size(); ++p) position[static_cast<std::size_t>(out[p])] = static_cast<int>(p);
  }
  fs.next.resize(static_cast<std::size_t>(halfEdges));
  for (int h = 0; h < halfEdges; ++h) {
    const int twin = h ^ 1;
    const auto& out = fs.rotation[static_cast<std::size_t>(view(t, twin).origin)];
    const int deg = static_cast<int>(out.size());
    fs.next[static_cast<std::size_t>(h)] = out[static_cast<std::size_t>((position[static_cast<std::size_t>(twin)] - 1 + deg) % deg)];
  }
  std::vector<char> seen(static_cast<std::size_t>(halfEdges), 0);
  for (int h = 0; h < halfEdges; ++h) {
    if (seen[static_cast<std::size_t>(h)]) continue;
    std::vector<int> face;
    IntVector drift = IntVector::Zero(2);
    for (int g = h; !seen[static_cast<std::size_t>(g)]; g = fs.next[static_cast<std::size_t>(g)]) {
      seen[static_cast<std::size_t>(g)] = 1;
      face.push_back(g);
      drift += view(t, g).offset;
    }
    if (!drift.isZero()) throw InputError("face " + std::to_string(fs.faces.size()) + " wraps around the torus");
    fs.faces.push_back(std::move(face));
  }
  fs.euler = n - t.contactCount() + static_cast<int>(fs.faces.size());
  if (fs.euler != 0) throw InputError("embedding has Euler characteristic " + std::to_string(fs.euler) + ", expected 0");
  return fs;
}

std::vector<int> tourPath(const Tensegrity& t, int generator) {
  requirePlanar(t);
  if (generator < 0 || generator >= t.dim()) throw InputError("generator index out of range");
  const int n = t.vertexCount();
  const std::int64_t box = std::max<std::int64_t>(4, 2 * static_cast<std::int64_t>(n));
  using State = std::pair<int, std::vector<std::int64_t>>;
  auto key = [](int v, const IntVector& off) { return State{v, std::vector<std::int64_t>(off.data(), off.data() + off.size())}; };
  std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(n));
  for (int h = 0; h < 2 * t.contactCount(); ++h) outgoing[static_cast<std::size_t>(view(t, h).origin)].push_back(h);
  IntVector goal = IntVector::Zero(t.dim());
  goal(generator) = 1;
  std::map<State, std::pair<State, int>> parent;
  std::deque<std::pair<int, IntVector>> queue;
  const State start = key(0, IntVector::Zero(t.dim()));
  parent.emplace(start, std::make_pair(start, -1));
  queue.emplace_back(0, IntVector::Zero(t.dim()));
  while (!queue.empty()) {
    auto [v, off] = queue.front();
    queue.pop_front();
    const State here = key(v, off);
    if (v == 0 && off == goal) {
      std::vector<int> path;
      for (State s = here; parent.at(s).second >= 0; s = parent.at(s).first) path.push_back(parent.at(s).second);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int h : outgoing[static_cast<std::size_t>(v)]) {
      const HalfEdgeView hv = view(t, h);
      const IntVector nextOff = off + hv.offset;
      if (nextOff.cwiseAbs().maxCoeff() > box) continue;
      const State there = key(hv.target, nextOff);
      if (parent.count(there)) continue;
      parent.emplace(there, std::make_pair(here, h));
      queue.emplace_back(hv.target, nextOff);
    }
  }
  throw InputError("no contact path realises lattice generator " + std::to_string(generator + 1));
}

Eigen::MatrixXd vertexToEdgeFlex(const Tensegrity& t, const Eigen::MatrixXd& perVertex, const std::optional<Eigen::MatrixXd>& affine) {
  validateTensegrity(t);
  if (perVertex.rows() != t.dim() || perVertex.cols() != t.vertexCount()) throw InputError("vertex flex has wrong shape");
  Eigen::MatrixXd out(t.dim(), t.contactCount());
  for (int k = 0; k < t.contactCount(); ++k) {
    const Contact& c = t.contacts[static_cast<std::size_t>(k)];
    out.col(k) = perVertex.col(c.j) - perVertex.col(c.i);
    if (affine) out.col(k) += *affine * edgeVector(t, static_cast<std::size_t>(k));
  }
  return out;
}

std::vector<int> edgeSignViolations(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex, double tol) {
  std::vector<int> bad;
  for (int k = 0; k < t.contactCount(); ++k) {
    const double s = edgeVector(t, static_cast<std::size_t>(k)).dot(edgeFlex.col(k));
    const Kind kind = t.contacts[static_cast<std::size_t>(k)].kind;
    if ((kind == Kind::bar && std::abs(s) > tol) || (kind == Kind::cable && s > tol) || (kind == Kind::strut && s < -tol))
      bad.push_back(k);
  }
  return bad;
}

Eigen::MatrixXd tourSums(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex) {
  requirePlanar(t);
  Eigen::MatrixXd sums(2, 2);
  for (int m = 0; m < 2; ++m) sums.col(m) = walkSum(edgeFlex, tourPath(t, m));
  return sums;
}

Eigen::MatrixXd edgeToVertexFlex(const Tensegrity& t, const Eigen::MatrixXd& edgeFlex, int anchor, const Eigen::VectorXd& anchorValue) {
  requirePlanar(t);
  if (edgeFlex.rows() != 2 || edgeFlex.cols() != t.contactCount()) throw InputError("edge flex has wrong shape");
  if (anchor < 0 || anchor >= t.vertexCount()) throw InputError("anchor vertex out of range");
  const double tol = 1e-9 * std::max(1.0, edgeFlex.size() ? edgeFlex.cwiseAbs().maxCoeff() : 0.0);
  const FaceStructure fs = traceFaces(t);
  for (std::size_t f = 0; f < fs.faces.size(); ++f)
    if (walkSum(edgeFlex, fs.faces[f]).norm() > tol) throw InputError("edge flex does not close around face " + std::to_string(f));
  for (int m = 0; m < 2; ++m)
    if (walkSum(edgeFlex, tourPath(t, m)).norm() > tol)
      throw InputError("edge flex does not close along the tour of generator " + std::to_string(m + 1));

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, t.vertexCount());
  std::vector<char> placed(static_cast<std::size_t>(t.vertexCount()), 0);
  p.col(anchor) = anchorValue.size() == 2 ? Eigen::Vector2d(anchorValue) : Eigen::Vector2d::Zero();
  placed[static_cast<std::size_t>(anchor)] = 1;
  std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(t.vertexCount()));
  for (int h = 0; h < 2 * t.contactCount(); ++h) outgoing[static_cast<std::size_t>(view(t, h).origin)].push_back(h);
  std::deque<int> queue{anchor};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int h : outgoing[static_cast<std::size_t>(v)]) {
      const int w = view(t, h).target;
      if (placed[static_cast<std::size_t>(w)]) continue;
      p.col(w) = p.col(v) + halfEdgeSign(h) * edgeFlex.col(halfEdgeContact(h));
      placed[static_cast<std::size_t>(w)] = 1;
      queue.push_back(w);
    }
  }
  if (std::find(placed.begin(), placed.end(), 0) != placed.end()) throw InputError("contact graph is disconnected");
  return p;
}

RotationSpace rotationFlexSpace(const Tensegrity& t) {
  requirePlanar(t);
  return buildSpace(t, true);
}

RotationSpace faceRotationSpace(const Tensegrity& t) {
  requirePlanar(t);
  return buildSpace(t, false);
}

Eigen::MatrixXd rotationToEdgeFlex(const Tensegrity& t, const Eigen::VectorXd& alpha) {
  requirePlanar(t);
  if (alpha.size() != t.contactCount()) throw InputError("rotation vector has wrong length");
  Eigen::MatrixXd out(2, t.contactCount());
  for (int k = 0; k < t.contactCount(); ++k) out.col(k) = alpha(k) * quarterTurn(edgeVector(t, static_cast<std::size_t>(k)));
  return out;
}

std::vector<LemmaViolation> checkTriangleRhombusLemmas(const Tensegrity& t, const FaceStructure& faces, const Eigen::VectorXd& alpha,
                                                       double tol) {
  if (alpha.size() != t.contactCount()) throw InputError("rotation vector has wrong length");
  const double scale = tol * std::max(1.0, alpha.size() ? alpha.cwiseAbs().maxCoeff() : 0.0);
  std::vector<LemmaViolation> out;
  auto a = [&](int h) { return alpha(halfEdgeContact(h)); };
  for (std::size_t f = 0; f < faces.faces.size(); ++f) {
    const auto& face = faces.faces[f];
    if (face.size() == 3) {
      const double hi = std::max({a(face[0]), a(face[1]), a(face[2])});
      const double lo = std::min({a(face[0]), a(face[1]), a(face[2])});
      if (hi - lo > scale) out.push_back({static_cast<int>(f), "triangle", hi - lo});
    } else if (face.size() == 4) {
      Eigen::Vector2d v[4];
      for (int s = 0; s < 4; ++s) v[s] = view(t, face[static_cast<std::size_t>(s)]).vec;
      const double len = v[0].norm();
      bool rhombus = true;
      for (int s = 1; s < 4; ++s) rhombus = rhombus && std::abs(v[s].norm() - len) <= 1e-9 * len;
      rhombus = rhombus && std::abs(cross(v[0], v[2])) <= 1e-9 * len * len && std::abs(cross(v[1], v[3])) <= 1e-9 * len * len;
      if (!rhombus) continue;
      const double gap = std::max(std::abs(a(face[0]) - a(face[2])), std::abs(a(face[1]) - a(face[3])));
      if (gap > scale) out.push_back({static_cast<int>(f), "rhombus", gap});
    }
  }
  return out;
}

}  // namespace pjam
