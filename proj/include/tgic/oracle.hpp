#pragma once
// Exhaustive optimum over pairs of row spaces, for tiny instances.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/model.hpp"
#include "tgic/verify.hpp"

namespace tgic {

class OracleRefused : public Error {
 public:
  using Error::Error;
};

struct OracleCaps {
  std::size_t max_m = 6;
  std::uint64_t max_pairs = 2'000'000'000ull;   ///< candidate space pairs for GF(2), m <= 6
  std::uint64_t max_pairs_generic = 5'000'000;  ///< candidate pairs on the generic path
  unsigned threads = 1;
};

struct OracleResult {
  std::size_t length = 0;
  TwoSenderCode code;
  std::uint64_t pairs = 0;   ///< candidate pairs examined
};

namespace detail {

inline std::uint64_t xor_translate(std::uint64_t set, std::uint32_t b) {
  static constexpr std::uint64_t kMask[6] = {0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
                                             0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
  for (int k = 0; k < 6; ++k)
    if ((b >> k) & 1u) {
      const unsigned s = 1u << k;
      set = ((set & kMask[k]) << s) | ((set >> s) & kMask[k]);
    }
  return set;
}

/// Membership bitmap of the GF(2) span of `basis` (vectors of at most 6 bits).
inline std::uint64_t span_bitmap(const std::vector<std::uint32_t>& basis) {
  std::uint64_t s = 1;
  for (auto b : basis) s |= xor_translate(s, b);
  return s;
}

inline std::uint32_t global_mask(std::span<const Elem> row, const std::vector<std::size_t>& cols) {
  std::uint32_t v = 0;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c]) v |= 1u << (cols[c] - 1);
  return v;
}

/// Smallest (i, j) in lexicographic order with ok(i, j), split over threads by i.
template <class Ok>
std::optional<std::pair<std::size_t, std::size_t>> first_pair(std::size_t n1, std::size_t n2, unsigned threads,
                                                              Ok ok) {
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  auto work = [&](unsigned t, unsigned stride) {
    for (std::size_t i = t; i < n1; i += stride) {
      if (static_cast<std::uint64_t>(i) * n2 >= best.load()) return;
      for (std::size_t j = 0; j < n2; ++j)
        if (ok(i, j)) {
          std::uint64_t key = static_cast<std::uint64_t>(i) * n2 + j;
          std::uint64_t cur = best.load();
          while (key < cur && !best.compare_exchange_weak(cur, key)) {}
          return;
        }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n1, 1))));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  if (best.load() == kNone) return std::nullopt;
  return std::make_pair(static_cast<std::size_t>(best / n2), static_cast<std::size_t>(best % n2));
}

}  // namespace detail

/// Minimum l1 + l2 over all row spaces of G1 and G2. Lengths ascend; for a
/// fixed total, l1 ascends; spaces follow enumerate_rref order.
inline OracleResult oracle_optimum(const TgicpInstance& inst, const OracleCaps& caps = {}) {
  inst.validate();
  if (inst.q != 2 && inst.q != 3) throw OracleRefused("oracle supports q = 2 or 3 only");
  if (inst.m > caps.max_m)
    throw OracleRefused("oracle refuses m = " + std::to_string(inst.m) + " > cap " + std::to_string(caps.max_m));
  const Field f(inst.q);
  const bool fast = inst.q == 2 && inst.m <= 6;
  const std::size_t k1 = inst.M1.size(), k2 = inst.M2.size();

  std::vector<std::uint64_t> coset;
  if (fast)
    for (const auto& r : inst.receivers) {
      std::uint32_t side = 0;
      for (auto j : r.side) side |= 1u << (j - 1);
      const std::uint32_t nonside = ((1u << inst.m) - 1) & ~side;
      const std::uint32_t target = 1u << (r.demand - 1);
      std::uint64_t c = 0;
      for (std::uint32_t v = 0; v < (1u << inst.m); ++v)
        if ((v & nonside) == target) c |= 1ull << v;
      coset.push_back(c);
    }

  OracleResult res;
  for (std::size_t L = 0; L <= inst.m; ++L) {
    for (std::size_t l1 = 0; l1 <= L; ++l1) {
      const std::size_t l2 = L - l1;
      if (l1 > k1 || l2 > k2) continue;
      const std::vector<Mat> s1 = enumerate_rref(l1, k1, f);
      const std::vector<Mat> s2 = enumerate_rref(l2, k2, f);
      const std::uint64_t pairs = static_cast<std::uint64_t>(s1.size()) * s2.size();
      res.pairs += pairs;
      if (res.pairs > (fast ? caps.max_pairs : caps.max_pairs_generic))
        throw OracleRefused("oracle search exceeds its pair cap");
      std::optional<std::pair<std::size_t, std::size_t>> hit;
      if (fast) {
        std::vector<std::uint64_t> span1;
        for (const auto& g : s1) {
          std::vector<std::uint32_t> b;
          for (std::size_t r = 0; r < g.rows(); ++r) b.push_back(detail::global_mask(g.row(r), inst.M1));
          span1.push_back(detail::span_bitmap(b));
        }
        std::vector<std::vector<std::uint32_t>> basis2;
        for (const auto& g : s2) {
          std::vector<std::uint32_t> b;
          for (std::size_t r = 0; r < g.rows(); ++r) b.push_back(detail::global_mask(g.row(r), inst.M2));
          basis2.push_back(std::move(b));
        }
        hit = detail::first_pair(s1.size(), s2.size(), caps.threads, [&](std::size_t i, std::size_t j) {
          std::uint64_t s = span1[i];
          for (auto b : basis2[j]) s |= detail::xor_translate(s, b);
          for (auto c : coset)
            if (!(s & c)) return false;
          return true;
        });
      } else {
        hit = detail::first_pair(s1.size(), s2.size(), caps.threads, [&](std::size_t i, std::size_t j) {
          TwoSenderCode c{s1[i], s2[j], inst.M1, inst.M2};
          Mat G = c.global(inst.m);
          for (const auto& r : inst.receivers)
            if (!receiver_decodes(G, r, inst.m, f)) return false;
          return true;
        });
      }
      if (hit) {
        res.length = L;
        res.code = TwoSenderCode{s1[hit->first], s2[hit->second], inst.M1, inst.M2};
        return res;
      }
    }
  }
  throw Error("oracle found no code of length <= m");
}

/// Single-sender optimum: one sender holding every message.
inline std::size_t sgicp_oracle(const TgicpInstance& inst, const OracleCaps& caps = {}) {
  TgicpInstance s = inst;
  s.M1 = iota_set(inst.m);
  s.M2.clear();
  return oracle_optimum(s, caps).length;
}

inline std::size_t sgicp_oracle(const PartialMatrix& fx, std::uint32_t q, const OracleCaps& caps = {}) {
  return sgicp_oracle(sgicp_instance(fx, q), caps);
}

}  // namespace tgic
