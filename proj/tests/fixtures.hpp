#pragma once

#include <random>
#include <vector>

#include "pjam/catalog.hpp"
#include "pjam/framework.hpp"
#include "pjam/lattice.hpp"
#include "pjam/packing.hpp"

namespace pjam::testing {

inline Tensegrity catalogTensegrity(const char* name) { return detectContacts(getPacking(name)); }

inline Sublattice columns(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix s(2, 2);
  s << a, c, b, d;
  return makeSublattice(s);
}

// Covers of the one-disk packings with jittered vertices and a few contacts removed.
inline std::vector<Tensegrity> perturbedInstances(int count, unsigned seed = 20240917u) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> drops(0, 2);
  std::uniform_int_distribution<int> index(1, 6);
  std::vector<Tensegrity> out;
  while (static_cast<int>(out.size()) < count) {
    const Tensegrity base = detectContacts(getPacking(coin(rng) ? "one_disk_square" : "one_disk_triangular"));
    const auto subs = enumerateSublattices(2, index(rng));
    std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
    Tensegrity t = coverFramework(base, subs[pick(rng)]);
    for (auto& p : t.vertices) p += Eigen::Vector2d(jitter(rng), jitter(rng));
    const int remove = drops(rng);
    for (int r = 0; r < remove && t.contacts.size() > 1; ++r) {
      std::uniform_int_distribution<std::size_t> which(0, t.contacts.size() - 1);
      t.contacts.erase(t.contacts.begin() + static_cast<std::ptrdiff_t>(which(rng)));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace pjam::testing
