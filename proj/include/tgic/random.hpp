#pragma once
// Reproducible random instances and partial matrices.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/model.hpp"

namespace tgic {

/// mt19937_64 with bounded draws by rejection, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw DimensionError("Rng::below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t v;
    do v = g_();
    while (v > limit);
    return v % n;
  }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool percent(unsigned p) { return below(100) < p; }

 private:
  std::mt19937_64 g_;
};

enum class RandomMode {
  Uniform,      ///< independent side information
  Structured,   ///< each cross block empty, full or random
  Disjoint      ///< no common messages
};

struct RandomSpec {
  std::uint32_t q = 2;
  std::size_t min_m = 2;
  std::size_t max_m = 6;
  std::size_t max_extra_receivers = 2;   ///< receivers beyond one per message
  unsigned side_percent = 45;
  RandomMode mode = RandomMode::Structured;
};

inline TgicpInstance random_instance(Rng& rng, const RandomSpec& spec) {
  if (spec.min_m < 1 || spec.min_m > spec.max_m) throw ValidationError("bad message-count range");
  TgicpInstance inst;
  inst.q = spec.q;
  inst.m = rng.between(spec.min_m, spec.max_m);
  std::vector<Part> part(inst.m + 1);
  for (std::size_t j = 1; j <= inst.m; ++j) {
    const std::uint64_t k = rng.below(spec.mode == RandomMode::Disjoint ? 2 : 3);
    part[j] = kParts[k];
    if (part[j] != Part::Two) inst.M1.push_back(j);
    if (part[j] != Part::One) inst.M2.push_back(j);
  }
  // participation style per (receiver part, message part): 0 none, 1 full, 2 random
  std::array<std::array<int, 3>, 3> style{};
  for (auto& row : style)
    for (auto& s : row) s = spec.mode == RandomMode::Structured ? static_cast<int>(rng.below(3)) : 2;
  const std::size_t n = inst.m + rng.below(spec.max_extra_receivers + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Receiver r;
    r.demand = i < inst.m ? i + 1 : rng.between(1, inst.m);
    const Part a = part[r.demand];
    for (std::size_t j = 1; j <= inst.m; ++j) {
      if (j == r.demand) continue;
      const Part b = part[j];
      const int s = a == b ? 2 : style[idx(a)][idx(b)];
      if (s == 1 || (s == 2 && rng.percent(spec.side_percent))) r.side.push_back(j);
    }
    inst.receivers.push_back(std::move(r));
  }
  inst.validate();
  return inst;
}

/// n x m fitting-style matrix: one ONE per row, at most max_x X cells.
inline PartialMatrix random_fitting(Rng& rng, std::size_t n, std::size_t m, std::size_t max_x,
                                    unsigned x_percent = 40) {
  PartialMatrix p(n, m);
  std::size_t xs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = i < m ? i : rng.below(m);
    p(i, d) = Cell::One;
    for (std::size_t j = 0; j < m; ++j)
      if (j != d && xs < max_x && rng.percent(x_percent)) {
        p(i, j) = Cell::X;
        ++xs;
      }
  }
  return p;
}

struct TriangularAssembly {
  std::vector<PartialMatrix> blocks;
  PartialMatrix assembled;
};

/// Diagonal fitting blocks, ZERO below the diagonal, ZERO/X above it.
inline TriangularAssembly random_triangular(Rng& rng, std::size_t nblocks, std::size_t max_side,
                                            std::size_t max_x) {
  TriangularAssembly t;
  std::vector<std::size_t> rows, cols;
  std::size_t budget = max_x;
  for (std::size_t k = 0; k < nblocks; ++k) {
    const std::size_t m = rng.between(1, max_side);
    const std::size_t n = m + rng.below(2);
    PartialMatrix b = random_fitting(rng, n, m, budget / 2);
    budget -= b.x_count();
    t.blocks.push_back(b);
    rows.push_back(n);
    cols.push_back(m);
  }
  std::vector<std::vector<PartialMatrix>> grid(nblocks);
  for (std::size_t a = 0; a < nblocks; ++a)
    for (std::size_t b = 0; b < nblocks; ++b) {
      if (a == b) {
        grid[a].push_back(t.blocks[a]);
        continue;
      }
      PartialMatrix off(rows[a], cols[b]);
      if (a < b)
        for (std::size_t i = 0; i < off.rows(); ++i)
          for (std::size_t j = 0; j < off.cols(); ++j)
            if (budget && rng.percent(30)) {
              off(i, j) = Cell::X;
              --budget;
            }
      grid[a].push_back(off);
    }
  t.assembled = assemble(grid);
  return t;
}

}  // namespace tgic
