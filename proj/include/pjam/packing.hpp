#pragma once

#include <vector>

#include <Eigen/Core>

#include "pjam/framework.hpp"
#include "pjam/lattice.hpp"

namespace pjam {

struct Disk {
  Eigen::VectorXd center;
  double radius = 0.0;
};

/// Balls on the torus E^d / Lambda.
struct PeriodicPacking {
  Lattice lattice;
  std::vector<Disk> disks;

  int dim() const { return lattice.dim(); }
};

/// Overlap of disk i with disk j translated by `offset`.
struct Overlap {
  int i = 0;
  int j = 0;
  IntVector offset;
  double depth = 0.0;
};

/// Canonical pairs overlapping by more than tol. Throws InputError on non-positive radii.
std::vector<Overlap> validate(const PeriodicPacking& p, double tol = 1e-9);

/// Default contact tolerance, 1e-9 times the mean radius.
double defaultContactTolerance(const PeriodicPacking& p);

/// Tangencies as canonical strut contacts. A negative tol selects the default.
Tensegrity detectContacts(const PeriodicPacking& p, double tol = -1.0);

double ballVolume(int dim, double radius);
double density(const PeriodicPacking& p);

/// The same packing viewed on the sublattice S (digit order as in coverFramework).
PeriodicPacking coverPacking(const PeriodicPacking& p, const Sublattice& s);

}  // namespace pjam
