#include "cartan/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

SparseMatrix::SparseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), offsets_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(const PrimeField& field, std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("SparseMatrix: triplet outside shape");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  SparseMatrix m(field, rows, cols);
  m.entries_.reserve(triplets.size());
  std::size_t i = 0;
  std::vector<std::size_t> counts(rows, 0);
  while (i < triplets.size()) {
    std::size_t j = i;
    Residue sum = 0;
    while (j < triplets.size() && triplets[j].row == triplets[i].row && triplets[j].col == triplets[i].col) {
      sum = field.add(sum, field.reduce(triplets[j].value));
      ++j;
    }
    if (sum != 0) {
      m.entries_.push_back({triplets[i].col, sum});
      ++counts[triplets[i].row];
    }
    i = j;
  }
  for (std::size_t r = 0; r < rows; ++r) m.offsets_[r + 1] = m.offsets_[r] + counts[r];
  return m;
}

SparseMatrix SparseMatrix::from_rows(const PrimeField& field, std::size_t cols, std::vector<SparseVector> rows) {
  SparseMatrix m(field, rows.size(), cols);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  m.entries_.reserve(total);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : rows[r]) {
      if (e.index >= cols) throw std::out_of_range("SparseMatrix: row entry outside shape");
      m.entries_.push_back(e);
    }
    m.offsets_[r + 1] = m.entries_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const PrimeField& field, const std::vector<std::vector<Residue>>& dense) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  std::vector<SparseVector> rows;
  rows.reserve(dense.size());
  for (const auto& r : dense) {
    if (r.size() != cols) throw std::invalid_argument("SparseMatrix: ragged dense input");
    SparseVector v;
    for (std::size_t c = 0; c < cols; ++c) {
      Residue x = field.reduce(r[c]);
      if (x) v.push_back({static_cast<std::uint32_t>(c), x});
    }
    rows.push_back(std::move(v));
  }
  return from_rows(field, cols, std::move(rows));
}

SparseMatrix SparseMatrix::identity(const PrimeField& field, std::size_t n) {
  std::vector<SparseVector> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back({static_cast<std::uint32_t>(i), 1});
  return from_rows(field, n, std::move(rows));
}

Residue SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto rw = row(r);
  auto it = std::lower_bound(rw.begin(), rw.end(), c, [](const Entry& e, std::size_t col) { return e.index < col; });
  return it != rw.end() && it->index == c ? it->value : 0;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows_);
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (const auto& e : entries_) ++counts[e.index + 1];
  for (std::size_t c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
  t.offsets_ = counts;
  t.entries_.resize(entries_.size());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : row(r)) t.entries_[cursor[e.index]++] = {static_cast<std::uint32_t>(r), e.value};
  return t;
}

std::vector<Residue> SparseMatrix::multiply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw std::domain_error("SparseMatrix::multiply: dimension mismatch");
  std::vector<Residue> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (const auto& e : row(r)) {
      acc += static_cast<std::uint64_t>(e.value) * x[e.index] % field_.modulus();
      if (acc >= (1ull << 62)) acc %= field_.modulus();
    }
    y[r] = static_cast<Residue>(acc % field_.modulus());
  }
  return y;
}

SparseVector SparseMatrix::multiply(const SparseVector& x) const {
  std::vector<Residue> dense(cols_, 0);
  for (const auto& e : x) {
    if (e.index >= cols_) throw std::domain_error("SparseMatrix::multiply: index outside shape");
    dense[e.index] = e.value;
  }
  return to_sparse(multiply(std::span<const Residue>(dense)));
}

std::vector<std::vector<Residue>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Residue>> d(rows_, std::vector<Residue>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : row(r)) d[r][e.index] = e.value;
  return d;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : row(r)) out.push_back({static_cast<std::uint32_t>(r), e.index, e.value});
  return out;
}

SparseVector sparse_axpy(const PrimeField& f, const SparseVector& x, Residue a, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->index < j->index)) {
      out.push_back(*i++);
    } else if (i == x.end() || j->index < i->index) {
      Residue v = f.mul(a, j->value);
      if (v) out.push_back({j->index, v});
      ++j;
    } else {
      Residue v = f.mul_add(a, j->value, i->value);
      if (v) out.push_back({i->index, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector sparse_scale(const PrimeField& f, const SparseVector& x, Residue a) {
  if (a == 0) return {};
  SparseVector out(x);
  for (auto& e : out) e.value = f.mul(e.value, a);
  return out;
}

SparseVector to_sparse(std::span<const Residue> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) v.push_back({static_cast<std::uint32_t>(i), dense[i]});
  return v;
}

std::vector<Residue> to_dense(const SparseVector& v, std::size_t dim) {
  std::vector<Residue> d(dim, 0);
  for (const auto& e : v) d.at(e.index) = e.value;
  return d;
}

}  // namespace cartan
