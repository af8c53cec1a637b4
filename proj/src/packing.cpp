#include "pjam/packing.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "pjam/error.hpp"

namespace pjam {

namespace {

void checkPacking(const PeriodicPacking& p) {
  makeLattice(p.lattice.basis);
  for (std::size_t i = 0; i < p.disks.size(); ++i) {
    const Disk& disk = p.disks[i];
    if (disk.center.size() != p.dim() || !disk.center.allFinite())
      throw InputError("disk " + std::to_string(i) + " has a bad centre");
    if (!(disk.radius > 0.0) || !std::isfinite(disk.radius)) throw InputError("disk " + std::to_string(i) + " has a non-positive radius");
  }
}

// Calls f(i, j, offset, distance) for every canonical pair closer than r_i + r_j + slack.
template <class F>
void forEachNearPair(const PeriodicPacking& p, double slack, F&& f) {
  const int n = static_cast<int>(p.disks.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Disk& a = p.disks[static_cast<std::size_t>(i)];
      const Disk& b = p.disks[static_cast<std::size_t>(j)];
      const double reach = a.radius + b.radius + slack;
      for (const IntVector& lambda : latticePointsNear(p.lattice, a.center - b.center, reach)) {
        if (i == j && !lexPositive(lambda)) continue;
        const double dist = (b.center + p.lattice.point(lambda) - a.center).norm();
        f(i, j, lambda, dist);
      }
    }
  }
}

}  // namespace

std::vector<Overlap> validate(const PeriodicPacking& p, double tol) {
  if (tol < 0.0) throw InputError("tolerance must be non-negative");
  checkPacking(p);
  std::vector<Overlap> out;
  forEachNearPair(p, 0.0, [&](int i, int j, const IntVector& lambda, double dist) {
    const double depth = p.disks[static_cast<std::size_t>(i)].radius + p.disks[static_cast<std::size_t>(j)].radius - dist;
    if (depth > tol) out.push_back({i, j, lambda, depth});
  });
  return out;
}

double defaultContactTolerance(const PeriodicPacking& p) {
  if (p.disks.empty()) return 1e-9;
  double sum = 0.0;
  for (const Disk& d : p.disks) sum += d.radius;
  return 1e-9 * sum / static_cast<double>(p.disks.size());
}

Tensegrity detectContacts(const PeriodicPacking& p, double tol) {
  checkPacking(p);
  if (tol < 0.0) tol = defaultContactTolerance(p);
  Tensegrity t;
  t.lattice = p.lattice;
  for (const Disk& d : p.disks) t.vertices.push_back(d.center);
  forEachNearPair(p, tol, [&](int i, int j, const IntVector& lambda, double dist) {
    const double gap = dist - p.disks[static_cast<std::size_t>(i)].radius - p.disks[static_cast<std::size_t>(j)].radius;
    if (std::abs(gap) <= tol) t.contacts.push_back({i, j, lambda, Kind::strut});
  });
  return t;
}

double ballVolume(int dim, double radius) {
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / boost::math::tgamma(half + 1.0) * std::pow(radius, dim);
}

double density(const PeriodicPacking& p) {
  checkPacking(p);
  double total = 0.0;
  for (const Disk& d : p.disks) total += ballVolume(p.dim(), d.radius);
  return total / p.lattice.cellVolume();
}

PeriodicPacking coverPacking(const PeriodicPacking& p, const Sublattice& s) {
  checkPacking(p);
  if (s.dim() != p.dim()) throw InputError("sublattice dimension does not match the packing");
  const Transversal tr(s);
  PeriodicPacking cover;
  cover.lattice = makeLattice(p.lattice.basis * tr.hermite().cast<double>());
  for (std::size_t idx = 0; idx < tr.size(); ++idx)
    for (const Disk& d : p.disks) cover.disks.push_back({d.center + p.lattice.point(tr.digit(idx)), d.radius});
  return cover;
}

}  // namespace pjam
