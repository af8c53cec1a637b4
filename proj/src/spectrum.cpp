#include "pjam/spectrum.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <numbers>

#include "pjam/error.hpp"
#include "pjam/jamming.hpp"
#include "pjam/linalg.hpp"

namespace pjam {

namespace {

std::size_t gridSize(int d, int resolution) {
  std::size_t total = 1;
  for (int m = 0; m < d; ++m) total *= static_cast<std::size_t>(resolution);
  return total;
}

SpectrumSample sampleAt(const Tensegrity& t, int resolution, std::size_t flat, double tolFactor) {
  const int d = t.dim();
  std::vector<std::int64_t> nums(static_cast<std::size_t>(d));
  for (int m = d - 1; m >= 0; --m) {
    nums[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(flat % static_cast<std::size_t>(resolution));
    flat /= static_cast<std::size_t>(resolution);
  }
  SpectrumSample s;
  for (std::int64_t j : nums) s.theta.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / resolution);
  const QuotientCharacter chi(nums, resolution);
  const auto rr = rankNullspace(phaseMatrix(t, chi).matrix, tolFactor);
  s.nullity = rr.nullity;
  const Eigen::Index cols = static_cast<Eigen::Index>(t.vertexCount()) * d;
  s.sigmaMin = rr.singularValues.size() < cols || cols == 0 ? 0.0 : rr.singularValues(cols - 1);
  return s;
}

void checkResolution(const Tensegrity& t, int resolution) {
  if (resolution < 2) throw InputError("grid resolution must be at least 2");
  validateTensegrity(t);
}

}  // namespace

SpectrumGrid rumScan(const Tensegrity& t, int resolution, double tolFactor, const ExecutionPolicy& policy) {
  checkResolution(t, resolution);
  SpectrumGrid grid;
  grid.resolution = resolution;
  grid.samples.resize(gridSize(t.dim(), resolution));
  std::exception_ptr failure;
  const auto count = static_cast<long>(grid.samples.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolveThreads(policy))
  for (long idx = 0; idx < count; ++idx) {
    try {
      grid.samples[static_cast<std::size_t>(idx)] = sampleAt(t, resolution, static_cast<std::size_t>(idx), tolFactor);
    } catch (...) {
#pragma omp critical(pjam_spectrum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return grid;
}

void writeSpectrumCsv(std::ostream& out, const SpectrumGrid& grid) {
  const std::size_t d = grid.samples.empty() ? 2 : grid.samples.front().theta.size();
  for (std::size_t m = 0; m < d; ++m) out << "theta" << (m + 1) << ',';
  out << "sigma_min,nullity\n";
  char buf[64];
  for (const SpectrumSample& s : grid.samples) {
    for (double th : s.theta) {
      std::snprintf(buf, sizeof buf, "%.17g", th);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", s.sigmaMin);
    out << buf << ',' << s.nullity << '\n';
  }
}

std::vector<LineSweepEntry> lineSweep1xk(const Tensegrity& t, std::int64_t kMax, const ExecutionPolicy& policy) {
  if (kMax < 1) throw InputError("kMax must be at least 1");
  const int d = t.dim();
  const bool base = collectivelyJammed(t).jammed;
  std::vector<LineSweepEntry> out;
  for (std::int64_t k = 1; k <= kMax; ++k) {
    LineSweepEntry entry;
    entry.k = k;
    std::vector<std::int64_t> diag(static_cast<std::size_t>(d), 1);
    diag.back() = k;
    const Sublattice s = diagonalSublattice(diag);
    if (base) {
      for (const auto& chi : sublatticeJammed(t, s, policy).flexing) entry.flexOrders.push_back(chi.order(d - 1));
      std::sort(entry.flexOrders.begin(), entry.flexOrders.end());
      entry.flexOrders.erase(std::unique(entry.flexOrders.begin(), entry.flexOrders.end()), entry.flexOrders.end());
    }
    entry.jammed = base && entry.flexOrders.empty();
    out.push_back(entry);
  }
  return out;
}

namespace reference {

SpectrumGrid rumScan(const Tensegrity& t, int resolution, double tolFactor) {
  checkResolution(t, resolution);
  SpectrumGrid grid;
  grid.resolution = resolution;
  const std::size_t total = gridSize(t.dim(), resolution);
  for (std::size_t idx = 0; idx < total; ++idx) grid.samples.push_back(sampleAt(t, resolution, idx, tolFactor));
  return grid;
}

}  // namespace reference

}  // namespace pjam
