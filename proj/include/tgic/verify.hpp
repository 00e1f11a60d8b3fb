#pragma once
// Two-sender codes and per-receiver linear decodability.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/model.hpp"

namespace tgic {

/// Encoding matrices of both senders over their own message sets.
struct TwoSenderCode {
  Mat G1;                          ///< l1 x |M1|
  Mat G2;                          ///< l2 x |M2|
  std::vector<std::size_t> cols1;  ///< local column -> global 1-based message
  std::vector<std::size_t> cols2;

  std::size_t l1() const { return G1.rows(); }
  std::size_t l2() const { return G2.rows(); }
  std::size_t length() const { return l1() + l2(); }

  static Mat to_global(const Mat& local, const std::vector<std::size_t>& cols, std::size_t m) {
    if (local.rows() == 0) return Mat(0, m);
    return embed(local, m, cols);
  }
  Mat global1(std::size_t m) const { return to_global(G1, cols1, m); }
  Mat global2(std::size_t m) const { return to_global(G2, cols2, m); }
  Mat global(std::size_t m) const { return vstack(global1(m), global2(m)); }

  /// Builds a code from global-column matrices; fails if a sender uses a message it lacks.
  static TwoSenderCode from_global(const TgicpInstance& inst, const Mat& s1, const Mat& s2) {
    TwoSenderCode c;
    c.cols1 = inst.M1;
    c.cols2 = inst.M2;
    auto local = [&](const Mat& g, const std::vector<std::size_t>& cols, int who) {
      if (g.rows() == 0) return Mat(0, cols.size());
      if (g.cols() != inst.m) throw DimensionError("codeword width differs from message count");
      std::vector<bool> ok(inst.m + 1, false);
      for (auto j : cols) ok[j] = true;
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t j = 0; j < g.cols(); ++j)
          if (g(r, j) && !ok[j + 1])
            throw ValidationError("sender " + std::to_string(who) + " does not hold message " +
                                  std::to_string(j + 1));
      return submatrix(g, iota1(g.rows()), cols);
    };
    c.G1 = local(s1, c.cols1, 1);
    c.G2 = local(s2, c.cols2, 2);
    return c;
  }

 private:
  static std::vector<std::size_t> iota1(std::size_t n) { return detail::iota1(n); }
};

inline TwoSenderCode swap_code(const TwoSenderCode& c) {
  return TwoSenderCode{c.G2, c.G1, c.cols2, c.cols1};
}

struct VerifyReport {
  std::vector<bool> decodable;
  bool overall = true;

  std::vector<std::size_t> failures() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < decodable.size(); ++i)
      if (!decodable[i]) v.push_back(i + 1);
    return v;
  }
};

/// True iff e_demand lies in rowspace(G) + span{e_j : j in side}.
inline bool receiver_decodes(const Mat& G, const Receiver& r, std::size_t m, const Field& f) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 1; j <= m; ++j)
    if (!std::binary_search(r.side.begin(), r.side.end(), j)) keep.push_back(j);
  std::vector<Elem> target(keep.size(), 0);
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (keep[k] == r.demand) target[k] = 1;
  if (G.rows() == 0) return false;
  Mat proj = submatrix(G, detail::iota1(G.rows()), keep);
  return in_rowspace(proj, target, f);
}

inline VerifyReport verify(const TwoSenderCode& code, const TgicpInstance& inst, const Field& f) {
  if (code.cols1 != inst.M1 || code.cols2 != inst.M2)
    throw ValidationError("code column maps do not match the senders' message sets");
  if (code.G1.cols() != inst.M1.size() || code.G2.cols() != inst.M2.size())
    throw DimensionError("encoding matrix width differs from the sender's message count");
  check_entries(code.G1, f);
  check_entries(code.G2, f);
  Mat G = code.global(inst.m);
  VerifyReport rep;
  for (const auto& r : inst.receivers) {
    bool ok = receiver_decodes(G, r, inst.m, f);
    rep.decodable.push_back(ok);
    rep.overall = rep.overall && ok;
  }
  return rep;
}

/// Single-sender check: G is l x m over all messages.
inline VerifyReport verify_single(const Mat& G, const TgicpInstance& inst, const Field& f) {
  VerifyReport rep;
  for (const auto& r : inst.receivers) {
    bool ok = receiver_decodes(G.rows() ? G : Mat(0, inst.m), r, inst.m, f);
    rep.decodable.push_back(ok);
    rep.overall = rep.overall && ok;
  }
  return rep;
}

}  // namespace tgic
