#pragma once
// Minimum rank over completions of a partial matrix.
//
// The main search grows a row space S. A row that can be completed inside S
// is settled and costs nothing. Otherwise the search branches on the row with
// the fewest completion classes modulo S, adding one dimension per branch.
// Any optimal row space contains one of the branches, so the search is exact.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/model.hpp"

namespace tgic {

struct Budget {
  std::size_t max_x = 24;                       ///< X cells allowed for the span search
  std::uint64_t max_subspaces = 1ull << 24;     ///< subspaces the rank-targeted search may visit
  std::uint64_t max_nodes = 50'000'000;         ///< search nodes per call
  std::uint64_t max_completions = 1ull << 22;   ///< leaves visited by completion enumeration
};

enum class Strategy { Auto, SpanSearch, RankTargeted };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::SpanSearch: return "span-search";
    case Strategy::RankTargeted: return "rank-targeted";
    default: return "auto";
  }
}

struct MinrankResult {
  bool exact = false;
  std::size_t lower = 0;
  std::size_t upper = 0;   ///< rank of `completion`
  Mat completion;          ///< best completion found
  Strategy used = Strategy::Auto;

  std::size_t value() const {
    if (!exact) throw BudgetExceeded("minrank unknown: bounds [" + std::to_string(lower) + ", " +
                                     std::to_string(upper) + "]");
    return upper;
  }
};

/// A completion with its first r rows (after row_perm) spanning its row space.
struct CompletionWitness {
  Mat F;                               ///< completion, original row order
  std::size_t r = 0;
  std::vector<std::size_t> row_perm;   ///< position k holds original row row_perm[k] (1-based)
  Mat P;                               ///< (n-r) x r, remaining rows = P * leading rows

  Mat permuted() const {
    Mat out(F.rows(), F.cols());
    for (std::size_t k = 0; k < row_perm.size(); ++k)
      std::copy(F.row(row_perm[k] - 1).begin(), F.row(row_perm[k] - 1).end(), out.row(k).begin());
    return out;
  }
  Mat leading() const { return row_range(permuted(), 1, r); }
  bool identity_perm() const {
    for (std::size_t k = 0; k < row_perm.size(); ++k)
      if (row_perm[k] != k + 1) return false;
    return true;
  }
};

/// Normalizes a completion: earliest independent rows go first, the rest
/// keep ascending order.
inline CompletionWitness make_witness(const Mat& F, const Field& f) {
  CompletionWitness w;
  w.F = F;
  Mat lead(0, F.cols());
  std::vector<std::size_t> rest;
  std::size_t rk = 0;
  for (std::size_t i = 0; i < F.rows(); ++i) {
    Mat trial = vstack(lead, row_range(F, i + 1, i + 1));
    std::size_t nr = rank(trial, f);
    if (nr > rk) {
      lead = std::move(trial);
      rk = nr;
      w.row_perm.push_back(i + 1);
    } else {
      rest.push_back(i + 1);
    }
  }
  w.r = rk;
  w.row_perm.insert(w.row_perm.end(), rest.begin(), rest.end());
  Mat tail(rest.size(), F.cols());
  for (std::size_t k = 0; k < rest.size(); ++k)
    std::copy(F.row(rest[k] - 1).begin(), F.row(rest[k] - 1).end(), tail.row(k).begin());
  auto p = solve_left(lead.rows() ? lead : Mat(0, F.cols()), tail, f);
  if (!p) throw Error("make_witness: dependent rows not in span of leading rows");
  w.P = rest.empty() ? Mat(0, rk) : *p;
  return w;
}

/// Rechecks every witness identity: completion, rank, leading span, P.
inline bool check_witness(const CompletionWitness& w, const PartialMatrix& fx, const Field& f) {
  if (w.F.rows() != fx.rows() || w.F.cols() != fx.cols()) return false;
  if (!completes(w.F, fx)) return false;
  if (rank(w.F, f) != w.r) return false;
  std::vector<std::size_t> sorted = w.row_perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != detail::iota1(fx.rows())) return false;
  Mat perm = w.permuted();
  Mat lead = row_range(perm, 1, w.r);
  if (rank(lead, f) != w.r) return false;
  Mat tail = row_range(perm, w.r + 1, perm.rows());
  if (w.P.rows() != tail.rows() || (tail.rows() && w.P.cols() != w.r)) return false;
  if (tail.rows() == 0) return true;
  if (w.r == 0) return tail.is_zero();
  return multiply(w.P, lead, f) == tail;
}

namespace detail {

struct RowPattern {
  std::vector<Elem> fixed;       ///< ONE cells as 1, everything else 0
  std::vector<std::size_t> xs;   ///< 0-based X columns
};

inline std::vector<RowPattern> row_patterns(const PartialMatrix& fx) {
  std::vector<RowPattern> rows(fx.rows());
  for (std::size_t i = 0; i < fx.rows(); ++i) {
    rows[i].fixed.assign(fx.cols(), 0);
    for (std::size_t j = 0; j < fx.cols(); ++j) {
      if (fx(i, j) == Cell::One) rows[i].fixed[j] = 1;
      else if (fx(i, j) == Cell::X) rows[i].xs.push_back(j);
    }
  }
  return rows;
}

/// For each row, some completion inside span(basis). Rows that do not fit
/// make the function return nullopt.
inline std::optional<Mat> complete_in_span(const PartialMatrix& fx, const Mat& basis, const Field& f) {
  Mat out(fx.rows(), fx.cols());
  for (std::size_t i = 0; i < fx.rows(); ++i) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < fx.cols(); ++j)
      if (fx(i, j) != Cell::X) keep.push_back(j + 1);
    Mat target(1, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) target(0, k) = fx(i, keep[k] - 1) == Cell::One ? 1 : 0;
    if (target.is_zero() || keep.empty()) continue;  // the zero row completes it
    if (basis.rows() == 0) return std::nullopt;
    Mat proj = submatrix(basis, iota1(basis.rows()), keep);
    auto c = solve_left(proj, target, f);
    if (!c) return std::nullopt;
    Mat v = multiply(*c, basis, f);
    std::copy(v.row(0).begin(), v.row(0).end(), out.row(i).begin());
  }
  return out;
}

template <class Space>
class SpanSearch {
 public:
  using Vec = typename Space::Vec;

  SpanSearch(const PartialMatrix& fx, const Field& f, const Budget& b)
      : fx_(fx), f_(f), budget_(b), space_(f, fx.cols()), rows_(row_patterns(fx)) {
    for (auto& r : rows_) fixed_.push_back(to_vec(space_, r.fixed));
  }

  /// Looks for a span of dimension below `upper`; false when out of budget.
  bool run(std::size_t upper) {
    best_dim_ = upper;
    EchelonBasis<Space> s(space_);
    std::vector<bool> settled(rows_.size(), false);
    dfs(s, settled);
    return !aborted_;
  }

  bool found() const { return have_best_; }
  std::size_t best_dim() const { return best_dim_; }
  Mat best_basis() const {
    Mat m(best_.size(), fx_.cols());
    for (std::size_t k = 0; k < best_.size(); ++k) store_vec(space_, best_[k], m.row(k));
    return m;
  }

 private:
  void dfs(const EchelonBasis<Space>& s, std::vector<bool>& settled) {
    if (aborted_) return;
    if (++nodes_ > budget_.max_nodes) {
      aborted_ = true;
      return;
    }
    // Settle rows that fit; pick the unsettled row with fewest classes.
    std::vector<std::size_t> newly;
    int pick = -1;
    std::size_t pick_k = 0;
    EchelonBasis<Space> pick_dirs(space_);
    Vec pick_a{};
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (settled[i]) continue;
      EchelonBasis<Space> dirs(space_);
      for (auto j : rows_[i].xs) dirs.insert(s.reduce(space_.unit(j)));
      Vec a = s.reduce(fixed_[i]);
      if (dirs.contains(a)) {
        settled[i] = true;
        newly.push_back(i);
        continue;
      }
      if (pick < 0 || dirs.dim() < pick_k) {
        pick = static_cast<int>(i);
        pick_k = dirs.dim();
        pick_dirs = dirs;
        pick_a = a;
      }
    }
    if (pick < 0) {
      if (s.dim() < best_dim_) {
        best_dim_ = s.dim();
        best_ = s.vectors();
        have_best_ = true;
      }
    } else if (s.dim() + 1 < best_dim_) {
      const auto& dv = pick_dirs.vectors();
      std::vector<Elem> coef(dv.size(), 0);
      const Elem q = f_.order();
      while (true) {
        Vec v = pick_a;
        for (std::size_t t = 0; t < dv.size(); ++t) space_.axpy(v, coef[t], dv[t]);
        EchelonBasis<Space> next = s;
        next.insert(v);
        dfs(next, settled);
        if (aborted_) break;
        if (!(s.dim() + 1 < best_dim_)) break;
        std::size_t pos = coef.size();
        while (pos > 0 && ++coef[pos - 1] == q) coef[--pos] = 0;
        if (pos == 0) break;
      }
    }
    for (auto i : newly) settled[i] = false;
  }

  const PartialMatrix& fx_;
  const Field& f_;
  Budget budget_;
  Space space_;
  std::vector<RowPattern> rows_;
  std::vector<Vec> fixed_;
  std::vector<Vec> best_;
  std::size_t best_dim_ = 0;
  bool have_best_ = false;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
};

/// Rank-targeted feasibility: smallest r such that some r-dimensional space
/// admits a completion of every row.
template <class Space>
std::optional<Mat> rank_targeted_space(const PartialMatrix& fx, const Field& f, std::size_t r, std::uint64_t& visited,
                                       std::uint64_t limit, bool& aborted) {
  Space s(f, fx.cols());
  auto rows = row_patterns(fx);
  std::vector<typename Space::Vec> fixed;
  for (auto& rp : rows) fixed.push_back(to_vec(s, rp.fixed));
  std::optional<Mat> hit;
  for_each_rref_space(s, f, r, fx.cols(), [&](const std::vector<typename Space::Vec>& basis) {
    if (++visited > limit) {
      aborted = true;
      return false;
    }
    EchelonBasis<Space> b(s);
    for (const auto& v : basis) b.insert(v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EchelonBasis<Space> dirs(s);
      for (auto j : rows[i].xs) dirs.insert(b.reduce(s.unit(j)));
      if (!dirs.contains(b.reduce(fixed[i]))) return true;
    }
    Mat m(r, fx.cols());
    for (std::size_t k = 0; k < r; ++k) store_vec(s, basis[k], m.row(k));
    hit = std::move(m);
    return false;
  });
  return hit;
}

inline std::size_t trivial_lower(const PartialMatrix& fx) {
  // Some row with a ONE needs a nonzero completion.
  return fx.any(Cell::One) ? 1 : 0;
}

template <class Space>
MinrankResult span_search(const PartialMatrix& fx, const Field& f, const Budget& b) {
  MinrankResult res;
  res.used = Strategy::SpanSearch;
  Mat zero = fx.zero_completion();
  std::size_t start = rank(zero, f);
  SpanSearch<Space> search(fx, f, b);
  bool done = search.run(start);
  if (search.found() && search.best_dim() < start) {
    auto c = complete_in_span(fx, search.best_basis(), f);
    if (!c) throw Error("minrank: span search produced an infeasible span");
    res.completion = *c;
  } else {
    res.completion = zero;
  }
  res.upper = rank(res.completion, f);
  res.exact = done;
  res.lower = done ? res.upper : std::min(res.upper, trivial_lower(fx));
  return res;
}

template <class Space>
MinrankResult rank_targeted(const PartialMatrix& fx, const Field& f, const Budget& b) {
  MinrankResult res;
  res.used = Strategy::RankTargeted;
  res.completion = fx.zero_completion();
  res.upper = rank(res.completion, f);
  std::uint64_t visited = 0;
  bool aborted = false;
  std::size_t r = trivial_lower(fx);
  res.lower = r;
  for (; r < res.upper; ++r) {
    auto hit = rank_targeted_space<Space>(fx, f, r, visited, b.max_subspaces, aborted);
    if (aborted) return res;
    if (hit) {
      auto c = complete_in_span(fx, *hit, f);
      if (!c) throw Error("minrank: rank-targeted space failed to complete");
      res.completion = *c;
      res.upper = rank(*c, f);
      break;
    }
    res.lower = r + 1;
  }
  res.lower = res.upper;
  res.exact = true;
  return res;
}

template <class Fn>
MinrankResult with_space(const PartialMatrix& fx, const Field& f, Fn&& fn) {
  if (f.binary() && fx.cols() <= 64) return fn(Gf2Rows(f, fx.cols()));
  return fn(PrimeRows(f, fx.cols()));
}

}  // namespace detail

inline std::uint64_t subspace_count_upto(std::size_t m, std::size_t r, std::uint64_t q) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= r && k <= m; ++k) {
    std::uint64_t g = gaussian_binomial(m, k, q);
    total = total + g < total ? UINT64_MAX : total + g;
  }
  return total;
}

/// Exact minrank when the budget allows; otherwise bounds with exact=false.
inline MinrankResult minrank_search(const PartialMatrix& fx, const Field& f, const Budget& b = {},
                                    Strategy strategy = Strategy::Auto) {
  if (fx.rows() == 0 || fx.cols() == 0) {
    MinrankResult r;
    r.exact = true;
    r.completion = Mat(fx.rows(), fx.cols());
    r.used = strategy;
    return r;
  }
  if (strategy == Strategy::Auto) {
    if (fx.x_count() <= b.max_x) {
      strategy = Strategy::SpanSearch;
    } else if (subspace_count_upto(fx.cols(), std::min(fx.rows(), fx.cols()), f.order()) <= b.max_subspaces) {
      strategy = Strategy::RankTargeted;
    } else {
      MinrankResult r;
      r.completion = fx.zero_completion();
      r.upper = rank(r.completion, f);
      r.lower = std::min(r.upper, detail::trivial_lower(fx));
      r.exact = r.lower == r.upper;
      return r;
    }
  }
  if (strategy == Strategy::SpanSearch)
    return detail::with_space(fx, f, [&](auto s) { return detail::span_search<decltype(s)>(fx, f, b); });
  return detail::with_space(fx, f, [&](auto s) { return detail::rank_targeted<decltype(s)>(fx, f, b); });
}

/// mrk_q(fx); throws BudgetExceeded when the search cannot finish.
inline std::size_t minrank(const PartialMatrix& fx, const Field& f, const Budget& b = {}) {
  return minrank_search(fx, f, b).value();
}

inline CompletionWitness minrank_witness(const PartialMatrix& fx, const Field& f, const Budget& b = {}) {
  MinrankResult r = minrank_search(fx, f, b);
  r.value();
  return make_witness(r.completion, f);
}

/// Calls fn(F) for each completion of fx with rank <= max_rank, in
/// lexicographic order of the X assignment (cells in row-major order).
/// Returns false if fn stopped or the budget ran out; `aborted` tells which.
template <class Fn>
bool for_each_completion(const PartialMatrix& fx, const Field& f, std::size_t max_rank, const Budget& b, Fn&& fn,
                         bool* aborted = nullptr) {
  const std::size_t n = fx.rows(), m = fx.cols();
  Mat cur = fx.zero_completion();
  std::vector<std::pair<std::size_t, std::size_t>> xs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (fx(i, j) == Cell::X) xs.emplace_back(i, j);
  // row_done[k]: X positions before xs[k] complete rows < xs[k].first
  std::uint64_t leaves = 0;
  bool stop = false, out_of_budget = false;
  const Elem q = f.order();
  auto prefix_rank = [&](std::size_t rows) { return rank(row_range(cur, 1, rows), f); };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == xs.size()) {
      if (++leaves > b.max_completions) {
        stop = out_of_budget = true;
        return;
      }
      if (rank(cur, f) <= max_rank && !fn(static_cast<const Mat&>(cur))) stop = true;
      return;
    }
    auto [i, j] = xs[k];
    for (Elem v = 0; v < q && !stop; ++v) {
      cur(i, j) = v;
      // When the next X starts a later row, rows up to i are final.
      std::size_t next_row = k + 1 < xs.size() ? xs[k + 1].first : n;
      if (next_row > i && prefix_rank(next_row) > max_rank) continue;
      rec(k + 1);
    }
    cur(i, j) = 0;
  };
  if (xs.empty() || prefix_rank(xs[0].first) <= max_rank) rec(0);
  if (aborted) *aborted = out_of_budget;
  return !stop;
}

/// Distinct minimum-rank completions in lexicographic X order, at most `cap`.
inline std::vector<CompletionWitness> all_min_completions(const PartialMatrix& fx, const Field& f, const Budget& b,
                                                          std::size_t cap) {
  std::size_t r = minrank(fx, f, b);
  std::vector<CompletionWitness> out;
  bool aborted = false;
  for_each_completion(
      fx, f, r, b,
      [&](const Mat& F) {
        out.push_back(make_witness(F, f));
        return out.size() < cap;
      },
      &aborted);
  if (aborted) throw BudgetExceeded("all_min_completions: completion budget exhausted");
  return out;
}

/// Lemma-style sum over the diagonal blocks of a block upper triangular matrix.
inline std::size_t block_triangular_minrank(const std::vector<PartialMatrix>& blocks, const Field& f,
                                            const Budget& b = {}) {
  std::size_t total = 0;
  for (const auto& blk : blocks) total += minrank(blk, f, b);
  return total;
}

}  // namespace tgic
