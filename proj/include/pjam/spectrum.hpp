#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "pjam/framework.hpp"
#include "pjam/parallel.hpp"

namespace pjam {

struct SpectrumSample {
  std::vector<double> theta;  ///< mu_m = exp(i theta_m)
  double sigmaMin = 0.0;
  int nullity = 0;
};

struct SpectrumGrid {
  int resolution = 0;
  std::vector<SpectrumSample> samples;  ///< row-major, last angle fastest
};

/// sigma_min of the phase operator at theta_m = 2 pi j_m / resolution.
/// A sample counts as in the spectrum when sigma <= tolFactor * sigma_max.
SpectrumGrid rumScan(const Tensegrity& t, int resolution, double tolFactor = 1e-8, const ExecutionPolicy& policy = {});

/// Header `theta1,...,sigma_min,nullity`, values with 17 significant digits.
void writeSpectrumCsv(std::ostream& out, const SpectrumGrid& grid);

struct LineSweepEntry {
  std::int64_t k = 0;
  bool jammed = false;
  std::vector<std::int64_t> flexOrders;  ///< orders of the flexing characters on the last generator
};

/// Tests diag(1, ..., 1, k) for k = 1..kMax through its characters.
std::vector<LineSweepEntry> lineSweep1xk(const Tensegrity& t, std::int64_t kMax, const ExecutionPolicy& policy = {});

namespace reference {

SpectrumGrid rumScan(const Tensegrity& t, int resolution, double tolFactor = 1e-8);

}  // namespace reference

}  // namespace pjam
