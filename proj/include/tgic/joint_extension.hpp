#pragma once
// Joint extensions of several single-sender problems: the construction of a
// common encoding matrix G_E from normalized completions of the blocks, and a
// search that recognizes when a block matrix admits that construction.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/minrank.hpp"
#include "tgic/model.hpp"

namespace tgic {

/// Row and column block sizes of a u x u block matrix.
struct BlockStructure {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t u() const { return rows.size(); }
  std::size_t row_offset(std::size_t i) const {
    std::size_t s = 0;
    for (std::size_t k = 0; k < i; ++k) s += rows[k];
    return s;
  }
  std::size_t col_offset(std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t k = 0; k < j; ++k) s += cols[k];
    return s;
  }
  std::size_t total_rows() const { return row_offset(u()); }
  std::size_t total_cols() const { return col_offset(u()); }
};

/// Block (i, j), 0-based block indices.
inline PartialMatrix block_of(const PartialMatrix& fx, const BlockStructure& bs, std::size_t i, std::size_t j) {
  if (fx.rows() != bs.total_rows() || fx.cols() != bs.total_cols())
    throw DimensionError("block structure does not match the matrix");
  PartialMatrix b(bs.rows[i], bs.cols[j]);
  const std::size_t r0 = bs.row_offset(i), c0 = bs.col_offset(j);
  for (std::size_t a = 0; a < b.rows(); ++a)
    for (std::size_t c = 0; c < b.cols(); ++c) b(a, c) = fx(r0 + a, c0 + c);
  return b;
}

/// Thrown when an induced off-diagonal block fails its pattern. Indices are 1-based.
class ExtensionError : public Error {
 public:
  ExtensionError(std::size_t i, std::size_t j, std::size_t row, std::size_t col)
      : Error("induced block (" + std::to_string(i) + "," + std::to_string(j) + ") violates its pattern at row " +
              std::to_string(row) + ", column " + std::to_string(col)),
        i_(i), j_(j), row_(row), col_(col) {}
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t i_, j_, row_, col_;
};

struct ExtensionSpec {
  std::vector<PartialMatrix> sub;                 ///< diagonal fittings F_x^(i)
  std::vector<CompletionWitness> witness;         ///< one normalized completion per block
  std::vector<std::vector<PartialMatrix>> B;      ///< B[i][j] for i != j; diagonal entries unused
  std::vector<std::size_t> minranks;              ///< optional: mrk of each block, enables the optimality flag

  std::size_t u() const { return sub.size(); }

  /// Blocks sorted by non-increasing r, ties by index.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> o(u());
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = k;
    std::stable_sort(o.begin(), o.end(), [&](auto a, auto b) { return witness[a].r > witness[b].r; });
    return o;
  }
  std::size_t top_rank() const {
    std::size_t r = 0;
    for (const auto& w : witness) r = std::max(r, w.r);
    return r;
  }
  BlockStructure structure() const {
    BlockStructure bs;
    for (const auto& s : sub) {
      bs.rows.push_back(s.rows());
      bs.cols.push_back(s.cols());
    }
    return bs;
  }

  /// Splits a block matrix into a spec (witnesses still to be supplied).
  static ExtensionSpec from_matrix(const PartialMatrix& fxE, const BlockStructure& bs) {
    ExtensionSpec s;
    const std::size_t u = bs.u();
    s.B.assign(u, std::vector<PartialMatrix>(u));
    for (std::size_t i = 0; i < u; ++i) {
      s.sub.push_back(block_of(fxE, bs, i, i));
      for (std::size_t j = 0; j < u; ++j)
        if (i != j) s.B[i][j] = block_of(fxE, bs, i, j);
    }
    return s;
  }
};

struct ExtensionWitness {
  Mat G;                    ///< r_top x sum(m_i), column blocks in block order
  Mat D;                    ///< sum(n_i) x r_top, rows in the original row order
  std::size_t length = 0;
  std::optional<bool> optimal;   ///< set when minranks are known
};

/// Top r_i rows of a witness in its normalized order, as an r_i x m_j matrix.
inline Mat leading_rows(const CompletionWitness& w, std::size_t count) {
  Mat lead = w.leading();
  Mat out(count, w.F.cols());
  for (std::size_t k = 0; k < std::min(count, lead.rows()); ++k)
    std::copy(lead.row(k).begin(), lead.row(k).end(), out.row(k).begin());
  return out;
}

/// F-hat(i, j): r_i rows built from the leading rows of block j, zero padded.
inline Mat fhat(const CompletionWitness& wi, const CompletionWitness& wj) {
  return leading_rows(wj, wi.r);
}
inline Mat fhat(std::size_t i, std::size_t j, const ExtensionSpec& spec) {
  return fhat(spec.witness.at(i), spec.witness.at(j));
}

/// Induced block B(i,j) = [F-hat; P_i F-hat], returned in block i's original row order.
inline Mat induced_block(const CompletionWitness& wi, const CompletionWitness& wj, const Field& f) {
  Mat fh = fhat(wi, wj);
  Mat lower = wi.P.rows() ? multiply(wi.P, fh, f) : Mat(0, fh.cols());
  Mat stacked = vstack(fh, lower);
  if (stacked.rows() == 0) stacked = Mat(0, wj.F.cols());
  Mat out(stacked.rows(), stacked.cols());
  for (std::size_t k = 0; k < wi.row_perm.size(); ++k)
    std::copy(stacked.row(k).begin(), stacked.row(k).end(), out.row(wi.row_perm[k] - 1).begin());
  return out;
}

/// First mismatch of a matrix against a pattern, 1-based, or nullopt.
inline std::optional<std::pair<std::size_t, std::size_t>> first_mismatch(const Mat& m, const PartialMatrix& p) {
  if (m.rows() != p.rows() || m.cols() != p.cols()) throw DimensionError("pattern shape mismatch");
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) {
      Cell c = p(a, b);
      if ((c == Cell::Zero && m(a, b) != 0) || (c == Cell::One && m(a, b) != 1)) return std::make_pair(a + 1, b + 1);
    }
  return std::nullopt;
}

inline bool pair_compatible(const CompletionWitness& wi, const CompletionWitness& wj, const PartialMatrix& pattern,
                            const Field& f) {
  if (pattern.rows() == 0 || pattern.cols() == 0) return true;
  return !first_mismatch(induced_block(wi, wj, f), pattern).has_value();
}

/// The encoding matrix and decoding matrix of the joint extension.
inline ExtensionWitness build_extension(const ExtensionSpec& spec, const Field& f) {
  const std::size_t u = spec.u();
  if (spec.witness.size() != u) throw DimensionError("one witness per block required");
  for (std::size_t i = 0; i < u; ++i) {
    if (!check_witness(spec.witness[i], spec.sub[i], f))
      throw ValidationError("witness " + std::to_string(i + 1) + " is not a normalized completion of its block");
  }
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = 0; j < u; ++j) {
      if (i == j) continue;
      const PartialMatrix& pat = spec.B.at(i).at(j);
      if (pat.rows() == 0 || pat.cols() == 0) continue;
      if (auto bad = first_mismatch(induced_block(spec.witness[i], spec.witness[j], f), pat))
        throw ExtensionError(i + 1, j + 1, bad->first, bad->second);
    }
  ExtensionWitness w;
  const std::size_t rt = spec.top_rank();
  w.length = rt;
  BlockStructure bs = spec.structure();
  w.G = Mat(rt, bs.total_cols());
  for (std::size_t j = 0; j < u; ++j) {
    Mat blk = leading_rows(spec.witness[j], rt);
    const std::size_t c0 = bs.col_offset(j);
    for (std::size_t a = 0; a < rt; ++a)
      for (std::size_t b = 0; b < blk.cols(); ++b) w.G(a, c0 + b) = blk(a, b);
  }
  w.D = Mat(bs.total_rows(), rt);
  for (std::size_t i = 0; i < u; ++i) {
    const auto& wi = spec.witness[i];
    const std::size_t r0 = bs.row_offset(i);
    for (std::size_t k = 0; k < wi.row_perm.size(); ++k) {
      const std::size_t row = r0 + wi.row_perm[k] - 1;
      if (k < wi.r) w.D(row, k) = 1;
      else
        for (std::size_t t = 0; t < wi.r; ++t) w.D(row, t) = wi.P(k - wi.r, t);
    }
  }
  if (spec.minranks.size() == u) {
    std::size_t mx = 0;
    for (auto r : spec.minranks) mx = std::max(mx, r);
    w.optimal = rt == mx;
  }
  return w;
}

inline bool verify_extension(const ExtensionWitness& w, const PartialMatrix& fxE, const Field& f) {
  if (w.D.rows() != fxE.rows() || w.G.cols() != fxE.cols() || w.D.cols() != w.G.rows())
    throw DimensionError("extension witness does not match the matrix");
  if (w.G.rows() == 0) return completes(Mat(fxE.rows(), fxE.cols()), fxE);
  return completes(multiply(w.D, w.G, f), fxE);
}

/// Corollary-style code for all-X off-diagonal blocks: zero pad each
/// encoding matrix to the longest and place them side by side.
inline Mat sum_code_extension(const std::vector<Mat>& codes) {
  std::size_t len = 0, cols = 0;
  for (const auto& c : codes) {
    len = std::max(len, c.rows());
    cols += c.cols();
  }
  Mat out(len, cols);
  std::size_t c0 = 0;
  for (const auto& c : codes) {
    for (std::size_t a = 0; a < c.rows(); ++a)
      for (std::size_t b = 0; b < c.cols(); ++b) out(a, c0 + b) = c(a, b);
    c0 += c.cols();
  }
  return out;
}

/// u copies of base on the diagonal, base with ONE -> X off the diagonal.
inline PartialMatrix observation1_pattern(const PartialMatrix& base, std::size_t u) {
  PartialMatrix off = base.ones_to_x();
  std::vector<std::vector<PartialMatrix>> g(u, std::vector<PartialMatrix>(u, off));
  for (std::size_t i = 0; i < u; ++i) g[i][i] = base;
  return assemble(g);
}

/// True iff `pattern` has X wherever `base` is not ZERO (and matches its shape).
inline bool covers_support(const PartialMatrix& pattern, const PartialMatrix& base) {
  if (pattern.rows() != base.rows() || pattern.cols() != base.cols()) return false;
  for (std::size_t a = 0; a < base.rows(); ++a)
    for (std::size_t b = 0; b < base.cols(); ++b)
      if (base(a, b) != Cell::Zero && pattern(a, b) != Cell::X) return false;
  return true;
}

/// minrank(extended) == minrank(base); nullopt when either search is out of budget.
inline std::optional<bool> rank_invariant_check(const PartialMatrix& base, const PartialMatrix& extended,
                                                const Field& f, const Budget& b = {}) {
  auto rb = minrank_search(base, f, b);
  auto re = minrank_search(extended, f, b);
  if (!rb.exact || !re.exact) return std::nullopt;
  return rb.upper == re.upper;
}

// ---------------------------------------------------------------------------
// Recognition

/// Blocks plus the directed pairs whose induced block must fit a pattern.
struct JointProblem {
  struct Condition {
    std::size_t i, j;          ///< 0-based block indices
    PartialMatrix pattern;     ///< n_i x m_j
  };
  std::vector<PartialMatrix> diag;
  std::vector<Condition> conditions;
};

struct RecognizeOptions {
  std::size_t completion_cap = 512;        ///< completions kept per block and rank
  std::size_t candidate_cap = 20000;       ///< witnesses kept per block
  std::uint64_t max_steps = 4'000'000;     ///< pair checks during backtracking
  bool min_rank_only = false;              ///< skip the higher-rank second phase
  std::vector<std::optional<CompletionWitness>> pinned;  ///< fixed witness per block
  /// Per-block rank range for the second phase; empty means [mrk_i, max mrk].
  std::vector<std::pair<std::size_t, std::size_t>> rank_range;
};

enum class RecognizeStatus { Found, NotFound, Unknown };

struct RecognizeResult {
  RecognizeStatus status = RecognizeStatus::NotFound;
  std::vector<CompletionWitness> witnesses;
  std::vector<std::size_t> minranks;
  std::string note;
};

namespace detail {

/// Every normalized witness of F: ordered tuples of independent rows first.
inline void witnesses_of(const Mat& F, std::size_t r, const Field& f, std::size_t cap,
                         std::vector<CompletionWitness>& out, bool& truncated) {
  const std::size_t n = F.rows();
  std::vector<std::size_t> tuple;
  std::vector<bool> used(n, false);
  std::function<void(const Mat&)> rec = [&](const Mat& lead) {
    if (truncated) return;
    if (tuple.size() == r) {
      CompletionWitness w;
      w.F = F;
      w.r = r;
      w.row_perm.clear();
      for (auto t : tuple) w.row_perm.push_back(t + 1);
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) rest.push_back(i);
      for (auto i : rest) w.row_perm.push_back(i + 1);
      Mat tail(rest.size(), F.cols());
      for (std::size_t k = 0; k < rest.size(); ++k)
        std::copy(F.row(rest[k]).begin(), F.row(rest[k]).end(), tail.row(k).begin());
      auto p = solve_left(lead, tail, f);
      if (!p) return;
      w.P = rest.empty() ? Mat(0, r) : *p;
      if (out.size() >= cap) {
        truncated = true;
        return;
      }
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      Mat next = vstack(lead, row_range(F, i + 1, i + 1));
      if (rank(next, f) != tuple.size() + 1) continue;
      used[i] = true;
      tuple.push_back(i);
      rec(next);
      tuple.pop_back();
      used[i] = false;
    }
  };
  rec(Mat(0, F.cols()));
}

inline std::vector<CompletionWitness> candidates_for(const PartialMatrix& fx, std::size_t lo, std::size_t hi,
                                                     const Field& f, const Budget& b, const RecognizeOptions& opt,
                                                     bool& truncated) {
  std::vector<CompletionWitness> out;
  if (fx.rows() == 0) {
    CompletionWitness w;
    w.F = Mat(0, fx.cols());
    w.P = Mat(0, 0);
    out.push_back(w);
    return out;
  }
  for (std::size_t r = lo; r <= hi && !truncated; ++r) {
    std::size_t kept = 0;
    bool aborted = false;
    for_each_completion(
        fx, f, r, b,
        [&](const Mat& F) {
          if (rank(F, f) != r) return true;
          if (++kept > opt.completion_cap) {
            truncated = true;
            return false;
          }
          witnesses_of(F, r, f, opt.candidate_cap, out, truncated);
          return !truncated;
        },
        &aborted);
    if (aborted) truncated = true;
  }
  return out;
}

}  // namespace detail

/// Searches witnesses for every block such that every listed condition holds.
inline RecognizeResult recognize_joint(const JointProblem& prob, const Field& f, const Budget& b = {},
                                       const RecognizeOptions& opt = {}) {
  RecognizeResult res;
  const std::size_t u = prob.diag.size();
  for (const auto& d : prob.diag) {
    auto mr = minrank_search(d, f, b);
    if (!mr.exact) {
      res.status = RecognizeStatus::Unknown;
      res.note = "minrank out of budget";
      return res;
    }
    res.minranks.push_back(mr.upper);
  }
  std::size_t top = 0;
  for (auto r : res.minranks) top = std::max(top, r);

  // conditions indexed by the later block of the pair in assignment order
  std::vector<std::vector<const JointProblem::Condition*>> checks(u);
  for (const auto& c : prob.conditions) checks[std::max(c.i, c.j)].push_back(&c);

  bool truncated = false;
  std::uint64_t steps = 0;
  bool out_of_steps = false;

  auto attempt = [&](bool phase2) -> bool {
    std::vector<std::vector<CompletionWitness>> cand(u);
    for (std::size_t i = 0; i < u; ++i) {
      if (i < opt.pinned.size() && opt.pinned[i]) {
        cand[i] = {*opt.pinned[i]};
        continue;
      }
      std::size_t lo = res.minranks[i], hi = res.minranks[i];
      if (phase2) {
        if (i < opt.rank_range.size()) {
          lo = opt.rank_range[i].first;
          hi = opt.rank_range[i].second;
        } else {
          hi = top;
        }
      }
      cand[i] = detail::candidates_for(prob.diag[i], lo, hi, f, b, opt, truncated);
    }
    std::vector<const CompletionWitness*> pick(u, nullptr);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == u) return true;
      for (const auto& w : cand[i]) {
        pick[i] = &w;
        bool ok = true;
        for (const auto* c : checks[i]) {
          if (++steps > opt.max_steps) {
            out_of_steps = true;
            return false;
          }
          if (!pair_compatible(*pick[c->i], *pick[c->j], c->pattern, f)) {
            ok = false;
            break;
          }
        }
        if (ok && rec(i + 1)) return true;
        if (out_of_steps) return false;
      }
      return false;
    };
    if (rec(0)) {
      res.witnesses.clear();
      for (auto* p : pick) res.witnesses.push_back(*p);
      return true;
    }
    return false;
  };

  if (attempt(false)) {
    res.status = RecognizeStatus::Found;
    return res;
  }
  if (!opt.min_rank_only && !out_of_steps) {
    if (attempt(true)) {
      res.status = RecognizeStatus::Found;
      res.note = "used completions above minimum rank";
      return res;
    }
  }
  res.status = (truncated || out_of_steps) ? RecognizeStatus::Unknown : RecognizeStatus::NotFound;
  if (res.status == RecognizeStatus::Unknown) res.note = "search limits reached";
  return res;
}

struct ExtensionRecognition {
  RecognizeStatus status = RecognizeStatus::NotFound;
  std::optional<ExtensionSpec> spec;
  std::optional<ExtensionWitness> witness;
  std::string note;
};

/// Is fxE (split by bs) a joint extension admitting the G_E construction?
inline ExtensionRecognition recognize(const PartialMatrix& fxE, const BlockStructure& bs, const Field& f,
                                      const Budget& b = {}, const RecognizeOptions& opt = {}) {
  ExtensionSpec spec = ExtensionSpec::from_matrix(fxE, bs);
  for (std::size_t i = 0; i < bs.u(); ++i)
    for (std::size_t j = 0; j < bs.u(); ++j)
      if (i != j && spec.B[i][j].any(Cell::One))
        throw ValidationError("off-diagonal block contains a ONE");
  JointProblem prob;
  prob.diag = spec.sub;
  for (std::size_t i = 0; i < bs.u(); ++i)
    for (std::size_t j = 0; j < bs.u(); ++j)
      if (i != j) prob.conditions.push_back({i, j, spec.B[i][j]});
  RecognizeResult rr = recognize_joint(prob, f, b, opt);
  ExtensionRecognition out;
  out.status = rr.status;
  out.note = rr.note;
  if (rr.status == RecognizeStatus::Found) {
    spec.witness = rr.witnesses;
    spec.minranks = rr.minranks;
    out.witness = build_extension(spec, f);
    out.spec = std::move(spec);
  }
  return out;
}

}  // namespace tgic
