// Serial reference versus OpenMP timings for the sublattice and spectrum scans.
#include <chrono>
#include <cstdio>
#include <functional>

#include <CLI11.hpp>

#include "pjam/catalog.hpp"
#include "pjam/jamming.hpp"
#include "pjam/parallel.hpp"
#include "pjam/spectrum.hpp"

using namespace pjam;

namespace {

double seconds(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pjam scan benchmarks"};
  std::string name = "dodecagon_16";
  int grid = 24;
  std::int64_t maxIndex = 8;
  int threads = 0;
  int repeats = 3;
  app.add_option("--packing", name, "catalog packing");
  app.add_option("--grid", grid, "spectrum samples per generator");
  app.add_option("--max-index", maxIndex, "largest sublattice index");
  app.add_option("--threads", threads, "OpenMP threads (0: all available)");
  app.add_option("--repeats", repeats, "best of N runs");
  CLI11_PARSE(app, argc, argv);

  const Tensegrity t = detectContacts(getPacking(name));
  const ExecutionPolicy policy{threads};
  std::printf("packing %s, %d threads\n", name.c_str(), resolveThreads(policy));

  const double rumSerial = seconds([&] { reference::rumScan(t, grid); }, repeats);
  const double rumParallel = seconds([&] { rumScan(t, grid, 1e-8, policy); }, repeats);
  std::printf("rumScan grid %d: serial %.4fs  parallel %.4fs  speedup %.2fx\n", grid, rumSerial, rumParallel,
              rumSerial / rumParallel);

  const double nSerial = seconds([&] { reference::nMin(t, maxIndex); }, repeats);
  const double nParallel = seconds([&] { nMin(t, maxIndex, policy); }, repeats);
  std::printf("nMin index <= %lld: serial %.4fs  parallel %.4fs  speedup %.2fx\n", static_cast<long long>(maxIndex),
              nSerial, nParallel, nSerial / nParallel);
  return 0;
}
