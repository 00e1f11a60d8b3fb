#pragma once
// Problem instances, fitting matrices and the three-way partition.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"

namespace tgic {

enum class Cell : std::uint8_t { Zero, One, X };

inline char cell_char(Cell c) { return c == Cell::Zero ? '0' : c == Cell::One ? '1' : 'x'; }

/// Matrix over {0, 1, x}. Element access is 0-based.
class PartialMatrix {
 public:
  PartialMatrix() = default;
  PartialMatrix(std::size_t rows, std::size_t cols, Cell fill = Cell::Zero)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  /// Rows written as strings over "01x"; spaces are ignored.
  static PartialMatrix from_rows(std::initializer_list<std::string_view> rows) {
    return from_rows(std::vector<std::string_view>(rows));
  }
  static PartialMatrix from_rows(const std::vector<std::string_view>& rows) {
    PartialMatrix p;
    p.rows_ = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t len = 0;
      for (char ch : rows[i]) {
        if (ch == ' ' || ch == '|') continue;
        if (ch == '0') p.cells_.push_back(Cell::Zero);
        else if (ch == '1') p.cells_.push_back(Cell::One);
        else if (ch == 'x' || ch == 'X') p.cells_.push_back(Cell::X);
        else throw ValidationError(std::string("bad cell character '") + ch + "'", i + 1);
        ++len;
      }
      if (i == 0) p.cols_ = len;
      else if (len != p.cols_) throw ValidationError("ragged partial matrix", i + 1);
    }
    return p;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Cell& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  Cell operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

  std::size_t count(Cell c) const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), c));
  }
  std::size_t x_count() const { return count(Cell::X); }
  bool all(Cell c) const {
    return std::all_of(cells_.begin(), cells_.end(), [c](Cell e) { return e == c; });
  }
  bool any(Cell c) const {
    return std::any_of(cells_.begin(), cells_.end(), [c](Cell e) { return e == c; });
  }

  /// Copy with every ONE replaced by X.
  PartialMatrix ones_to_x() const {
    PartialMatrix p = *this;
    for (auto& e : p.cells_)
      if (e == Cell::One) e = Cell::X;
    return p;
  }

  /// Completion with every X set to 0.
  Mat zero_completion() const {
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j) == Cell::One ? 1 : 0;
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ' ';
        s += cell_char((*this)(i, j));
      }
      s += '\n';
    }
    return s;
  }

  bool operator==(const PartialMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cell> cells_;
};

inline PartialMatrix submatrix(const PartialMatrix& p, std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols) {
  detail::check_index_set(rows, p.rows(), "submatrix rows");
  detail::check_index_set(cols, p.cols(), "submatrix cols");
  PartialMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = p(rows[i] - 1, cols[j] - 1);
  return s;
}

/// Block matrix from a row-major grid of blocks with consistent sizes.
inline PartialMatrix assemble(const std::vector<std::vector<PartialMatrix>>& grid) {
  std::size_t rows = 0, cols = 0;
  for (const auto& br : grid) rows += br.empty() ? 0 : br[0].rows();
  if (!grid.empty())
    for (const auto& b : grid[0]) cols += b.cols();
  PartialMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& br : grid) {
    std::size_t c0 = 0;
    const std::size_t h = br.empty() ? 0 : br[0].rows();
    for (const auto& b : br) {
      if (b.rows() != h) throw DimensionError("assemble: block heights differ in a block row");
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
      c0 += b.cols();
    }
    if (c0 != cols) throw DimensionError("assemble: block widths differ between block rows");
    r0 += h;
  }
  return out;
}

/// True iff f agrees with fx on every ZERO and ONE cell.
inline bool completes(const Mat& f, const PartialMatrix& fx) {
  if (f.rows() != fx.rows() || f.cols() != fx.cols()) throw DimensionError("completes: shapes differ");
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      Cell c = fx(i, j);
      if (c == Cell::Zero && f(i, j) != 0) return false;
      if (c == Cell::One && f(i, j) != 1) return false;
    }
  return true;
}

/// One receiver; message indices are 1-based.
struct Receiver {
  std::size_t demand = 0;
  std::vector<std::size_t> side;  ///< ascending

  bool operator==(const Receiver&) const = default;
};

struct TgicpInstance {
  std::uint32_t q = 2;
  std::size_t m = 0;
  std::vector<std::size_t> M1;  ///< ascending, 1-based
  std::vector<std::size_t> M2;
  std::vector<Receiver> receivers;

  std::size_t n() const noexcept { return receivers.size(); }

  /// Throws ValidationError; the line is the 1-based receiver index where applicable.
  void validate() const {
    if (!Field::is_prime(q)) throw ValidationError("field order " + std::to_string(q) + " is not prime");
    if (q > Field::kMaxOrder) throw ValidationError("field order too large");
    auto check_set = [&](const std::vector<std::size_t>& s, const std::string& what, std::size_t line) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > m)
          throw ValidationError(what + ": message " + std::to_string(s[k]) + " out of range", line);
        if (k && s[k] <= s[k - 1]) throw ValidationError(what + ": indices must be strictly increasing", line);
      }
    };
    check_set(M1, "M1", 0);
    check_set(M2, "M2", 0);
    std::vector<bool> covered(m + 1, false);
    for (auto j : M1) covered[j] = true;
    for (auto j : M2) covered[j] = true;
    for (std::size_t j = 1; j <= m; ++j)
      if (!covered[j]) throw ValidationError("message " + std::to_string(j) + " held by neither sender");
    for (std::size_t i = 0; i < receivers.size(); ++i) {
      const auto& r = receivers[i];
      if (r.demand < 1 || r.demand > m)
        throw ValidationError("demand " + std::to_string(r.demand) + " out of range", i + 1);
      check_set(r.side, "side information", i + 1);
      if (std::binary_search(r.side.begin(), r.side.end(), r.demand))
        throw ValidationError("receiver already knows its demand", i + 1);
    }
  }

  bool operator==(const TgicpInstance&) const = default;
};

inline std::vector<std::size_t> iota_set(std::size_t n) { return detail::iota1(n); }

inline PartialMatrix fitting_matrix(const TgicpInstance& inst) {
  inst.validate();
  PartialMatrix f(inst.n(), inst.m);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto& r = inst.receivers[i];
    f(i, r.demand - 1) = Cell::One;
    for (auto j : r.side) f(i, j - 1) = Cell::X;
  }
  return f;
}

/// Inverse of fitting_matrix; every row needs exactly one ONE.
inline TgicpInstance instance_from_fitting(const PartialMatrix& f, std::uint32_t q, std::vector<std::size_t> M1,
                                           std::vector<std::size_t> M2) {
  TgicpInstance inst;
  inst.q = q;
  inst.m = f.cols();
  inst.M1 = std::move(M1);
  inst.M2 = std::move(M2);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    Receiver r;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (f(i, j) == Cell::One) {
        if (r.demand) throw ValidationError("row has more than one ONE", i + 1);
        r.demand = j + 1;
      } else if (f(i, j) == Cell::X) {
        r.side.push_back(j + 1);
      }
    }
    if (!r.demand) throw ValidationError("row has no ONE", i + 1);
    inst.receivers.push_back(std::move(r));
  }
  inst.validate();
  return inst;
}

/// Single-sender view: M1 = [m], M2 = {}.
inline TgicpInstance sgicp_instance(const PartialMatrix& f, std::uint32_t q) {
  return instance_from_fitting(f, q, iota_set(f.cols()), {});
}

// ---------------------------------------------------------------------------
// Partition into sub-problems

enum class Part : std::uint8_t { One = 0, Two = 1, Joint = 2 };
inline constexpr std::array<Part, 3> kParts{Part::One, Part::Two, Part::Joint};

inline std::size_t idx(Part p) { return static_cast<std::size_t>(p); }
inline const char* part_name(Part p) { return p == Part::One ? "1" : p == Part::Two ? "2" : "J"; }

struct PartitionedFitting {
  std::uint32_t q = 2;
  /// blocks[a][b]: receivers of part a against messages of part b.
  std::array<std::array<PartialMatrix, 3>, 3> blocks;
  /// Original 1-based message indices of each part, ascending.
  std::array<std::vector<std::size_t>, 3> messages;
  /// Original 1-based receiver indices of each part, in instance order.
  std::array<std::vector<std::size_t>, 3> receivers;

  std::size_t m_of(Part a) const { return messages[idx(a)].size(); }
  std::size_t n_of(Part a) const { return receivers[idx(a)].size(); }
  const PartialMatrix& diag(Part a) const { return blocks[idx(a)][idx(a)]; }
  const PartialMatrix& cross(Part a, Part b) const { return blocks[idx(a)][idx(b)]; }

  /// Layout position (0-based) to original 1-based message index.
  std::vector<std::size_t> column_order() const {
    std::vector<std::size_t> v;
    for (Part a : kParts) v.insert(v.end(), messages[idx(a)].begin(), messages[idx(a)].end());
    return v;
  }
  std::vector<std::size_t> row_order() const {
    std::vector<std::size_t> v;
    for (Part a : kParts) v.insert(v.end(), receivers[idx(a)].begin(), receivers[idx(a)].end());
    return v;
  }

  /// The full fitting matrix in partitioned layout.
  PartialMatrix assembled() const {
    std::vector<std::vector<PartialMatrix>> g(3);
    for (Part a : kParts)
      for (Part b : kParts) g[idx(a)].push_back(blocks[idx(a)][idx(b)]);
    return assemble(g);
  }

  /// The two-part block [[F_a, A(a,b)], [A(b,a), F_b]].
  PartialMatrix pair_block(Part a, Part b) const {
    return assemble({{diag(a), cross(a, b)}, {cross(b, a), diag(b)}});
  }

  /// The full fitting matrix in original row/column order.
  PartialMatrix original() const {
    PartialMatrix lay = assembled();
    auto rows = row_order();
    auto cols = column_order();
    PartialMatrix out(lay.rows(), lay.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(rows[i] - 1, cols[j] - 1) = lay(i, j);
    return out;
  }
};

inline Part message_part(const TgicpInstance& inst, std::size_t j) {
  bool in1 = std::binary_search(inst.M1.begin(), inst.M1.end(), j);
  bool in2 = std::binary_search(inst.M2.begin(), inst.M2.end(), j);
  return in1 && in2 ? Part::Joint : in1 ? Part::One : Part::Two;
}

inline PartitionedFitting partition(const TgicpInstance& inst) {
  PartialMatrix f = fitting_matrix(inst);
  PartitionedFitting p;
  p.q = inst.q;
  std::vector<Part> col_part(inst.m + 1);
  for (std::size_t j = 1; j <= inst.m; ++j) {
    col_part[j] = message_part(inst, j);
    p.messages[idx(col_part[j])].push_back(j);
  }
  for (std::size_t i = 1; i <= inst.n(); ++i)
    p.receivers[idx(col_part[inst.receivers[i - 1].demand])].push_back(i);
  for (Part a : kParts)
    for (Part b : kParts) p.blocks[idx(a)][idx(b)] = submatrix(f, p.receivers[idx(a)], p.messages[idx(b)]);
  return p;
}

/// The sub-problem of part `a` as a single-sender instance (possibly empty).
inline TgicpInstance subproblem_instance(const PartitionedFitting& p, Part a) {
  const PartialMatrix& d = p.diag(a);
  if (d.rows() == 0) {
    TgicpInstance e;
    e.q = p.q;
    return e;
  }
  return sgicp_instance(d, p.q);
}

}  // namespace tgic
