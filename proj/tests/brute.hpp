#pragma once
// Brute-force references used only by tests. Nothing here calls the
// library's elimination, minrank or search routines.

#include <cstdint>
#include <set>
#include <vector>

#include "tgic/field.hpp"
#include "tgic/model.hpp"

namespace brute {

using tgic::Elem;
using tgic::Mat;

inline std::uint64_t ipow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= q;
  return r;
}

/// All vectors c * rows(M) for every coefficient vector c.
inline std::set<std::vector<Elem>> span(const Mat& m, std::uint32_t q) {
  std::set<std::vector<Elem>> out;
  const std::size_t n = m.rows(), c = m.cols();
  const std::uint64_t total = ipow(q, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Elem> v(c, 0);
    std::uint64_t x = code;
    for (std::size_t r = 0; r < n; ++r) {
      const Elem a = static_cast<Elem>(x % q);
      x /= q;
      for (std::size_t j = 0; j < c; ++j) v[j] = static_cast<Elem>((v[j] + a * m(r, j)) % q);
    }
    out.insert(std::move(v));
  }
  return out;
}

/// rank = log_q |rowspace|.
inline std::size_t rank(const Mat& m, std::uint32_t q) {
  std::size_t sz = span(m, q).size(), r = 0;
  while (sz > 1) {
    sz /= q;
    ++r;
  }
  return r;
}

/// Minimum rank over every completion, by enumeration.
inline std::size_t minrank(const tgic::PartialMatrix& fx, std::uint32_t q) {
  std::vector<std::pair<std::size_t, std::size_t>> xs;
  for (std::size_t i = 0; i < fx.rows(); ++i)
    for (std::size_t j = 0; j < fx.cols(); ++j)
      if (fx(i, j) == tgic::Cell::X) xs.emplace_back(i, j);
  Mat base = fx.zero_completion();
  std::size_t best = std::min(fx.rows(), fx.cols());
  const std::uint64_t total = ipow(q, xs.size());
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat f = base;
    std::uint64_t x = code;
    for (auto [i, j] : xs) {
      f(i, j) = static_cast<Elem>(x % q);
      x /= q;
    }
    best = std::min(best, rank(f, q));
  }
  return best;
}

/// Some combination of G's rows equals e_demand off the side information.
inline bool decodes(const Mat& G, const tgic::Receiver& r, std::size_t m, std::uint32_t q) {
  std::vector<bool> side(m + 1, false);
  for (auto j : r.side) side[j] = true;
  for (const auto& v : span(G.rows() ? G : Mat(0, m), q)) {
    if (v.size() != m) continue;
    bool ok = true;
    for (std::size_t j = 1; j <= m && ok; ++j)
      if (!side[j]) ok = v[j - 1] == (j == r.demand ? 1u : 0u);
    if (ok) return true;
  }
  return false;
}

inline bool decodes_all(const Mat& G, const tgic::TgicpInstance& inst) {
  for (const auto& r : inst.receivers)
    if (!decodes(G, r, inst.m, inst.q)) return false;
  return true;
}

/// Calls fn(M) for every l x c matrix over GF(q).
template <class Fn>
void each_matrix(std::size_t l, std::size_t c, std::uint32_t q, Fn&& fn) {
  const std::uint64_t total = ipow(q, l * c);
  Mat m(l, c);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        m(i, j) = static_cast<Elem>(x % q);
        x /= q;
      }
    if (!fn(static_cast<const Mat&>(m))) return;
  }
}

/// Smallest l <= limit such that some l x m matrix decodes every receiver; limit + 1 if none.
inline std::size_t shortest_code(const tgic::TgicpInstance& inst, std::size_t limit) {
  for (std::size_t l = 0; l <= limit; ++l) {
    bool found = false;
    each_matrix(l, inst.m, inst.q, [&](const Mat& g) {
      found = decodes_all(g, inst);
      return !found;
    });
    if (found) return l;
  }
  return limit + 1;
}

/// Two-sender optimum over raw encoding matrices (no row-space reduction).
inline std::size_t two_sender_raw(const tgic::TgicpInstance& inst) {
  for (std::size_t L = 0; L <= inst.m; ++L)
    for (std::size_t l1 = 0; l1 <= L; ++l1) {
      const std::size_t l2 = L - l1;
      bool found = false;
      each_matrix(l1, inst.M1.size(), inst.q, [&](const Mat& g1) {
        each_matrix(l2, inst.M2.size(), inst.q, [&](const Mat& g2) {
          Mat G(0, inst.m);
          auto put = [&](const Mat& g, const std::vector<std::size_t>& cols) {
            for (std::size_t r = 0; r < g.rows(); ++r) {
              std::vector<Elem> row(inst.m, 0);
              for (std::size_t c = 0; c < cols.size(); ++c) row[cols[c] - 1] = g(r, c);
              G.append_row(row);
            }
          };
          put(g1, inst.M1);
          put(g2, inst.M2);
          found = decodes_all(G, inst);
          return !found;
        });
        return !found;
      });
      if (found) return L;
    }
  return inst.m;
}

/// Cycle detection by trying every vertex ordering of {1, 2, J}.
inline bool has_cycle(std::uint8_t mask) {
  static const int from[6] = {0, 1, 0, 2, 1, 2};
  static const int to[6] = {1, 0, 2, 0, 2, 1};
  int perm[3] = {0, 1, 2};
  do {
    int pos[3];
    for (int k = 0; k < 3; ++k) pos[perm[k]] = k;
    bool ok = true;
    for (int e = 0; e < 6; ++e)
      if ((mask >> e) & 1 && pos[from[e]] > pos[to[e]]) ok = false;
    if (ok) return false;
  } while (std::next_permutation(perm, perm + 3));
  return true;
}

}  // namespace brute
