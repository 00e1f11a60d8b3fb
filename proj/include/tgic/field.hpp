#pragma once
// Exact arithmetic and dense linear algebra over prime fields GF(q).
//
// Index sets (row/column selections, pivots, embed positions) are 1-based;
// element access through Mat::operator() is 0-based like any container.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgic/error.hpp"

namespace tgic {

using Elem = std::uint32_t;

class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 65521;

  explicit Field(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw ValidationError("field order " + std::to_string(q) + " is not prime");
    if (q > kMaxOrder) throw ValidationError("field order " + std::to_string(q) + " is too large");
    inv_.assign(q, 0);
    for (Elem a = 1; a < q; ++a) inv_[a] = pow(a, q - 2);
  }

  static constexpr bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t order() const noexcept { return q_; }
  bool binary() const noexcept { return q_ == 2; }

  Elem add(Elem a, Elem b) const noexcept { Elem s = a + b; return s >= q_ ? s - q_ : s; }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Elem inv(Elem a) const {
    if (a == 0 || a >= q_) throw DimensionError("no inverse for " + std::to_string(a));
    return inv_[a];
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1 % q_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  bool operator==(const Field& o) const noexcept { return q_ == o.q_; }

 private:
  std::uint32_t q_;
  std::vector<Elem> inv_;
};

/// Dense row-major matrix with entries in [0, q).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Mat(std::initializer_list<std::initializer_list<Elem>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Elem> v) {
    if (rows_ == 0 && data_.empty()) cols_ = v.size();
    if (v.size() != cols_) throw DimensionError("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
  }

  bool operator==(const Mat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline void check_entries(const Mat& m, const Field& f) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (Elem e : m.row(r))
      if (e >= f.order()) throw ValidationError("matrix entry " + std::to_string(e) + " not in field");
}

namespace detail {

// Vector-space policies used by the hot loops. Both represent a row vector
// of length <= 64 for Gf2Rows; PrimeRows has no length limit. Column j maps
// to bit j, so the lowest set bit is the leftmost nonzero column.

struct Gf2Rows {
  using Vec = std::uint64_t;
  std::size_t n = 0;

  explicit Gf2Rows(const Field&, std::size_t len) : n(len) { assert(len <= 64); }
  Vec zero() const noexcept { return 0; }
  Vec unit(std::size_t j) const noexcept { return Vec{1} << j; }
  Elem get(Vec v, std::size_t j) const noexcept { return static_cast<Elem>((v >> j) & 1u); }
  void set(Vec& v, std::size_t j, Elem x) const noexcept {
    v = (v & ~(Vec{1} << j)) | (Vec{x & 1u} << j);
  }
  void axpy(Vec& v, Elem c, Vec w) const noexcept { if (c) v ^= w; }  // v += c*w
  void scale(Vec&, Elem) const noexcept {}
  bool is_zero(Vec v) const noexcept { return v == 0; }
  int lead(Vec v) const noexcept { return v ? std::countr_zero(v) : -1; }
  Vec keep(Vec v, std::uint64_t mask) const noexcept { return v & mask; }
  Elem inv(Elem) const noexcept { return 1; }
  Elem neg(Elem c) const noexcept { return c; }
};

struct PrimeRows {
  using Vec = std::vector<Elem>;
  const Field* f;
  std::size_t n = 0;

  explicit PrimeRows(const Field& field, std::size_t len) : f(&field), n(len) {}
  Vec zero() const { return Vec(n, 0); }
  Vec unit(std::size_t j) const { Vec v(n, 0); v[j] = 1; return v; }
  Elem get(const Vec& v, std::size_t j) const noexcept { return v[j]; }
  void set(Vec& v, std::size_t j, Elem x) const noexcept { v[j] = x; }
  void axpy(Vec& v, Elem c, const Vec& w) const noexcept {
    if (c == 0) return;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j]) v[j] = f->add(v[j], f->mul(c, w[j]));
  }
  void scale(Vec& v, Elem c) const noexcept { for (auto& e : v) e = f->mul(e, c); }
  bool is_zero(const Vec& v) const noexcept {
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
  }
  int lead(const Vec& v) const noexcept {
    for (std::size_t j = 0; j < n; ++j)
      if (v[j]) return static_cast<int>(j);
    return -1;
  }
  Vec keep(Vec v, std::uint64_t mask) const noexcept {
    for (std::size_t j = 0; j < n; ++j)
      if (j >= 64 || !((mask >> j) & 1u)) v[j] = 0;
    return v;
  }
  Elem inv(Elem c) const { return f->inv(c); }
  Elem neg(Elem c) const noexcept { return f->neg(c); }
};

template <class Space>
typename Space::Vec to_vec(const Space& s, std::span<const Elem> row) {
  auto v = s.zero();
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) s.set(v, j, row[j]);
  return v;
}

template <class Space>
void store_vec(const Space& s, const typename Space::Vec& v, std::span<Elem> out) {
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = s.get(v, j);
}

/// Basis kept in fully reduced row echelon form (pivot entries 1, pivot
/// columns cleared in every other basis vector).
template <class Space>
class EchelonBasis {
 public:
  using Vec = typename Space::Vec;

  explicit EchelonBasis(const Space& s) : s_(&s) {}

  std::size_t dim() const noexcept { return vecs_.size(); }
  const std::vector<Vec>& vectors() const noexcept { return vecs_; }
  const std::vector<int>& pivots() const noexcept { return piv_; }

  Vec reduce(Vec v) const {
    for (std::size_t k = 0; k < vecs_.size(); ++k) {
      Elem c = s_->get(v, static_cast<std::size_t>(piv_[k]));
      if (c) s_->axpy(v, s_->neg(c), vecs_[k]);
    }
    return v;
  }

  bool contains(const Vec& v) const { return s_->is_zero(reduce(v)); }

  /// Inserts v; returns false (and leaves the basis unchanged) if v is dependent.
  bool insert(Vec v) {
    v = reduce(v);
    int p = s_->lead(v);
    if (p < 0) return false;
    s_->scale(v, s_->inv(s_->get(v, static_cast<std::size_t>(p))));
    for (auto& b : vecs_) {
      Elem c = s_->get(b, static_cast<std::size_t>(p));
      if (c) s_->axpy(b, s_->neg(c), v);
    }
    vecs_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

 private:
  const Space* s_;
  std::vector<Vec> vecs_;
  std::vector<int> piv_;
};

/// True iff `target` lies in the span of `basis` after masking every vector to `mask`.
template <class Space>
bool in_masked_span(const Space& s, const std::vector<typename Space::Vec>& basis, std::uint64_t mask,
                    const typename Space::Vec& target) {
  EchelonBasis<Space> b(s);
  for (const auto& v : basis) b.insert(s.keep(v, mask));
  return b.contains(s.keep(target, mask));
}

/// Calls fn(rows) for every r x c matrix in RREF with no zero rows over the
/// field, i.e. once per r-dimensional subspace of F_q^c. Pivot patterns are
/// visited in lexicographic order, free entries by odometer. fn returns false
/// to stop; the function returns false iff stopped early.
template <class Space, class Fn>
bool for_each_rref_space(const Space& s, const Field& f, std::size_t r, std::size_t c, Fn&& fn) {
  using Vec = typename Space::Vec;
  if (r > c) return true;
  std::vector<std::size_t> piv(r);
  for (std::size_t k = 0; k < r; ++k) piv[k] = k;
  std::vector<Vec> rows(r, s.zero());
  const Elem q = f.order();
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
    {
      std::vector<bool> is_piv(c, false);
      for (auto p : piv) is_piv[p] = true;
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = piv[k] + 1; j < c; ++j)
          if (!is_piv[j]) free.emplace_back(k, j);
    }
    for (std::size_t k = 0; k < r; ++k) rows[k] = s.unit(piv[k]);
    std::vector<Elem> val(free.size(), 0);
    bool more = true;
    while (more) {
      if (!fn(static_cast<const std::vector<Vec>&>(rows))) return false;
      // odometer, last free entry fastest
      more = false;
      for (std::size_t pos = free.size(); pos-- > 0;) {
        auto [k, j] = free[pos];
        if (++val[pos] < q) {
          s.set(rows[k], j, val[pos]);
          more = true;
          break;
        }
        val[pos] = 0;
        s.set(rows[k], j, 0);
      }
    }
    // next pivot combination
    std::size_t k = r;
    while (k > 0 && piv[k - 1] == c - r + (k - 1)) --k;
    if (k == 0) return true;
    ++piv[k - 1];
    for (std::size_t t = k; t < r; ++t) piv[t] = piv[t - 1] + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dense operations

inline Mat transpose(const Mat& m) {
  Mat t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

inline Mat multiply(const Mat& a, const Mat& b, const Field& f) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

inline Mat add(const Mat& a, const Mat& b, const Field& f) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shapes differ");
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

inline Mat negate(const Mat& a, const Field& f) {
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.neg(a(i, j));
  return c;
}

inline Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  Mat c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), c.row(i).begin());
    std::copy(b.row(i).begin(), b.row(i).end(), c.row(i).begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return c;
}

inline Mat vstack(const Mat& a, const Mat& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
  Mat c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy(a.row(i).begin(), a.row(i).end(), c.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), c.row(a.rows() + i).begin());
  return c;
}

namespace detail {
inline void check_index_set(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 1 || idx[k] > bound)
      throw DimensionError(std::string(what) + ": index " + std::to_string(idx[k]) + " out of range");
    if (k && idx[k] <= idx[k - 1]) throw DimensionError(std::string(what) + ": indices not strictly increasing");
  }
}
inline std::vector<std::size_t> iota1(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}
}  // namespace detail

/// Rows and columns selected by 1-based, strictly increasing index sets.
inline Mat submatrix(const Mat& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  detail::check_index_set(rows, m.rows(), "submatrix rows");
  detail::check_index_set(cols, m.cols(), "submatrix cols");
  Mat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i] - 1, cols[j] - 1);
  return s;
}

/// Rows `first..last` (1-based, inclusive); empty when last < first.
inline Mat row_range(const Mat& m, std::size_t first, std::size_t last) {
  Mat s(last >= first ? last - first + 1 : 0, m.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    std::copy(m.row(first - 1 + i).begin(), m.row(first - 1 + i).end(), s.row(i).begin());
  return s;
}

/// Places the columns of m at the given 1-based positions of a `total`-column matrix.
inline Mat embed(const Mat& m, std::size_t total, std::span<const std::size_t> positions) {
  if (positions.size() != m.cols()) throw DimensionError("embed: one position per column required");
  detail::check_index_set(positions, total, "embed");
  Mat e(m.rows(), total);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, positions[j] - 1) = m(i, j);
  return e;
}

/// m with `extra` zero rows appended.
inline Mat pad_rows(const Mat& m, std::size_t total_rows) {
  if (total_rows < m.rows()) throw DimensionError("pad_rows: target smaller than matrix");
  Mat p(total_rows, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) std::copy(m.row(i).begin(), m.row(i).end(), p.row(i).begin());
  return p;
}

// ---------------------------------------------------------------------------
// Rank, RREF, row spaces

struct Rref {
  Mat reduced;                      ///< same shape as the input; zero rows at the bottom
  std::vector<std::size_t> pivots;  ///< 1-based pivot columns, strictly increasing
};

/// Textbook Gauss-Jordan over any prime field.
inline Rref rref(const Mat& m, const Field& f) {
  Rref out{m, {}};
  Mat& a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Elem inv = f.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Elem factor = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    out.pivots.push_back(c + 1);
    ++r;
  }
  return out;
}

namespace detail {
inline std::size_t rank_generic(const Mat& m, const Field& f) { return rref(m, f).pivots.size(); }

inline std::size_t rank_gf2_packed(const Mat& m) {
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) & 1u) rows[i] |= std::uint64_t{1} << j;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t v = rows[i];
    if (!v) continue;
    std::uint64_t low = v & (~v + 1);
    for (std::size_t k = i + 1; k < rows.size(); ++k)
      if (rows[k] & low) rows[k] ^= v;
    ++rank;
  }
  return rank;
}
}  // namespace detail

/// rk_q(m); GF(2) matrices with at most 64 columns take a bit-packed path.
inline std::size_t rank(const Mat& m, const Field& f) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (f.binary() && m.cols() <= 64) return detail::rank_gf2_packed(m);
  return detail::rank_generic(m, f);
}

/// True iff v lies in the row space of m.
inline bool in_rowspace(const Mat& m, std::span<const Elem> v, const Field& f) {
  if (v.size() != m.cols() && !(m.rows() == 0))
    throw DimensionError("in_rowspace: vector length differs from column count");
  if (std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; })) return true;
  if (m.rows() == 0) return false;
  Mat one(1, v.size());
  std::copy(v.begin(), v.end(), one.row(0).begin());
  return rank(vstack(m, one), f) == rank(m, f);
}

/// Some P with P * a = b, or nullopt when a row of b is outside the row space of a.
inline std::optional<Mat> solve_left(const Mat& a, const Mat& b, const Field& f) {
  if (b.rows() == 0) return Mat(0, a.rows());
  if (a.cols() != b.cols()) throw DimensionError("solve_left: column counts differ");
  // Reduce [a | I]; the right block T satisfies T*a = R (the RREF of a).
  Mat aug = hstack(a, Mat::identity(a.rows()));
  Rref red = rref(a, f);
  Rref full = rref(aug, f);
  const std::size_t rk = red.pivots.size();
  // The first rk rows of full, restricted to a's columns, are R's nonzero rows;
  // pivots of a's part coincide because elimination is column-ordered.
  Mat p(b.rows(), a.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::vector<Elem> residual(b.row(i).begin(), b.row(i).end());
    std::vector<Elem> coeff(a.rows(), 0);
    for (std::size_t k = 0; k < rk; ++k) {
      std::size_t pc = red.pivots[k] - 1;
      Elem c = residual[pc];
      if (!c) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) residual[j] = f.sub(residual[j], f.mul(c, full.reduced(k, j)));
      for (std::size_t t = 0; t < a.rows(); ++t)
        coeff[t] = f.add(coeff[t], f.mul(c, full.reduced(k, a.cols() + t)));
    }
    if (!std::all_of(residual.begin(), residual.end(), [](Elem e) { return e == 0; })) return std::nullopt;
    std::copy(coeff.begin(), coeff.end(), p.row(i).begin());
  }
  return p;
}

/// Number of k-dimensional subspaces of F_q^n.
inline std::uint64_t gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  // Build Pascal-style: [n,k] = [n-1,k-1] + q^k [n-1,k]
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    t[i][0] = 1;
    std::uint64_t qk = 1;
    for (std::size_t j = 1; j <= i; ++j) {
      qk *= q;
      t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? qk * t[i - 1][j] : 0);
    }
  }
  return t[n][k];
}

/// Calls fn(const Mat&) once per `rows`-dimensional subspace of F_q^cols,
/// represented by its RREF basis. Returns false iff fn stopped the walk.
template <class Fn>
bool for_each_rref(std::size_t rows, std::size_t cols, const Field& f, Fn&& fn) {
  detail::PrimeRows s(f, cols);
  Mat m(rows, cols);
  return detail::for_each_rref_space(s, f, rows, cols, [&](const std::vector<std::vector<Elem>>& basis) {
    for (std::size_t k = 0; k < rows; ++k) std::copy(basis[k].begin(), basis[k].end(), m.row(k).begin());
    return fn(static_cast<const Mat&>(m));
  });
}

inline std::vector<Mat> enumerate_rref(std::size_t rows, std::size_t cols, const Field& f) {
  std::vector<Mat> out;
  for_each_rref(rows, cols, f, [&](const Mat& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace tgic
