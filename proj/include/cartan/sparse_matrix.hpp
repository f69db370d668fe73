#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cartan/field.hpp"

namespace cartan {

struct Entry {
  std::uint32_t index;
  Residue value;
  bool operator==(const Entry&) const = default;
};

/// Sorted by index, no explicit zeros.
using SparseVector = std::vector<Entry>;

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  Residue value;
};

/// Immutable row-compressed matrix over F_p.
class SparseMatrix {
 public:
  SparseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);

  /// Duplicate positions are summed; zero results are dropped.
  static SparseMatrix from_triplets(const PrimeField& field, std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix from_dense(const PrimeField& field, const std::vector<std::vector<Residue>>& dense);
  static SparseMatrix identity(const PrimeField& field, std::size_t n);
  /// Rows given as sparse vectors; each must already be sorted and zero-free.
  static SparseMatrix from_rows(const PrimeField& field, std::size_t cols, std::vector<SparseVector> rows);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const Entry> row(std::size_t r) const {
    return {entries_.data() + offsets_[r], entries_.data() + offsets_[r + 1]};
  }
  Residue at(std::size_t r, std::size_t c) const;

  SparseMatrix transpose() const;
  std::vector<Residue> multiply(std::span<const Residue> x) const;
  SparseVector multiply(const SparseVector& x) const;
  std::vector<std::vector<Residue>> to_dense() const;
  std::vector<Triplet> triplets() const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// Outcome of sparse Gaussian elimination on a private copy of a matrix.
///
/// Pivots are chosen Markowitz-style: the candidate columns are the (at most
/// kMarkowitzColumns) active columns with the fewest nonzeros, ties broken by
/// column index; among their entries the one minimising
/// row_count * col_count wins, ties broken by lowest (row, col). The result is
/// a deterministic function of the matrix.
struct Elimination {
  std::size_t rank = 0;
  std::vector<std::uint32_t> pivot_rows;  // original row ids, in pivot order
  std::vector<std::uint32_t> pivot_cols;  // pivot columns, in pivot order
  /// Row content at the moment it became a pivot (only when requested).
  /// Such a row has no entries in earlier pivot columns.
  std::vector<SparseVector> pivot_row_values;
};

inline constexpr std::size_t kMarkowitzColumns = 4;

Elimination eliminate(const SparseMatrix& m, bool keep_pivot_rows);

std::size_t rank(const SparseMatrix& m);
/// Basis of {v : M v = 0}; size is cols - rank.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);
/// Some x with M x = b, or nullopt when b is not in the column space.
/// Throws std::domain_error when b.size() != rows.
std::optional<std::vector<Residue>> solve_in_image(const SparseMatrix& m, std::span<const Residue> b);

/// Incrementally built row-echelon basis of a subspace of F_p^dim.
///
/// Each stored vector has a distinct leading column. With tracking enabled,
/// every stored vector remembers its expression as a combination of the
/// inserted inputs (numbered by insertion order).
class EchelonBasis {
 public:
  EchelonBasis(const PrimeField& field, std::size_t dim, bool track = false);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t inputs() const noexcept { return inputs_; }

  /// Returns true when v was independent of the current span (and was added).
  bool insert(const SparseVector& v);
  /// Residual of v after elimination against the basis.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  /// When v is in the span and tracking is on: coefficients c with
  /// v = sum_i c_i * input_i.
  std::optional<SparseVector> express(const SparseVector& v) const;

 private:
  SparseVector reduce_impl(const SparseVector& v, SparseVector* combo) const;

  PrimeField field_;
  std::size_t dim_;
  bool track_;
  std::size_t inputs_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<SparseVector> combos_;
  std::vector<std::int64_t> pivot_of_col_;  // -1 when none
  // scratch space reused by reduce()
  mutable std::vector<Residue> acc_;
  mutable std::vector<Residue> combo_acc_;
};

/// Helpers on sparse vectors.
SparseVector sparse_axpy(const PrimeField& f, const SparseVector& x, Residue a, const SparseVector& y);  // x + a*y
SparseVector sparse_scale(const PrimeField& f, const SparseVector& x, Residue a);
SparseVector to_sparse(std::span<const Residue> dense);
std::vector<Residue> to_dense(const SparseVector& v, std::size_t dim);

}  // namespace cartan
