#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "cartan/sparse_matrix.hpp"

namespace cartan {

namespace {

const Entry* find_entry(const SparseVector& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const Entry& e, std::uint32_t c) { return e.index < c; });
  return it != row.end() && it->index == col ? &*it : nullptr;
}

class MarkowitzEliminator {
 public:
  explicit MarkowitzEliminator(const SparseMatrix& m)
      : f_(m.field()),
        rows_(m.rows()),
        row_active_(m.rows(), 1),
        col_rows_(m.cols()),
        col_count_(m.cols(), 0),
        col_done_(m.cols(), 0) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto src = m.row(r);
      rows_[r].assign(src.begin(), src.end());
      for (const auto& e : src) {
        col_rows_[e.index].push_back(static_cast<std::uint32_t>(r));
        ++col_count_[e.index];
      }
    }
    for (std::uint32_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c]) heap_.push({col_count_[c], c});
  }

  Elimination run(bool keep_rows) {
    Elimination out;
    std::vector<std::uint32_t> candidates;
    candidates.reserve(kMarkowitzColumns);
    while (true) {
      candidates.clear();
      while (candidates.size() < kMarkowitzColumns && !heap_.empty()) {
        auto [count, c] = heap_.top();
        heap_.pop();
        if (col_done_[c] || col_count_[c] != count || count == 0) continue;
        if (std::find(candidates.begin(), candidates.end(), c) != candidates.end()) continue;
        candidates.push_back(c);
      }
      if (candidates.empty()) break;

      std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
      std::uint32_t best_row = 0, best_col = 0;
      for (auto c : candidates) {
        compact_column(c);
        for (auto r : col_rows_[c]) {
          std::uint64_t cost = static_cast<std::uint64_t>(rows_[r].size()) * col_count_[c];
          if (cost < best_cost || (cost == best_cost && (r < best_row || (r == best_row && c < best_col)))) {
            best_cost = cost;
            best_row = r;
            best_col = c;
          }
        }
      }
      for (auto c : candidates)
        if (c != best_col) heap_.push({col_count_[c], c});

      pivot(best_row, best_col);
      out.pivot_rows.push_back(best_row);
      out.pivot_cols.push_back(best_col);
      if (keep_rows) out.pivot_row_values.push_back(std::move(rows_[best_row]));
      SparseVector().swap(rows_[best_row]);
    }
    out.rank = out.pivot_cols.size();
    return out;
  }

 private:
  using HeapItem = std::pair<std::uint32_t, std::uint32_t>;  // (count, col)

  void compact_column(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t r) { return !row_active_[r] || !find_entry(rows_[r], c); }),
               list.end());
  }

  void bump(std::uint32_t c) { heap_.push({col_count_[c], c}); }

  void pivot(std::uint32_t pr, std::uint32_t pc) {
    const SparseVector& prow = rows_[pr];
    Residue inv_pivot = f_.inv(find_entry(prow, pc)->value);
    row_active_[pr] = 0;
    for (auto r : col_rows_[pc]) {
      if (r == pr) continue;
      const Entry* e = find_entry(rows_[r], pc);
      Residue factor = f_.neg(f_.mul(e->value, inv_pivot));
      eliminate_into(r, factor, prow, pc);
    }
    for (const auto& e : prow) {
      if (e.index == pc) continue;
      --col_count_[e.index];
      bump(e.index);
    }
    col_done_[pc] = 1;
    col_count_[pc] = 0;
    std::vector<std::uint32_t>().swap(col_rows_[pc]);
  }

  // rows_[r] += factor * prow, dropping column pc, keeping column counts exact.
  void eliminate_into(std::uint32_t r, Residue factor, const SparseVector& prow, std::uint32_t pc) {
    const SparseVector& x = rows_[r];
    scratch_.clear();
    scratch_.reserve(x.size() + prow.size());
    auto i = x.begin();
    auto j = prow.begin();
    while (i != x.end() || j != prow.end()) {
      if (j == prow.end() || (i != x.end() && i->index < j->index)) {
        scratch_.push_back(*i++);
      } else if (i == x.end() || j->index < i->index) {
        if (j->index != pc) {
          scratch_.push_back({j->index, f_.mul(factor, j->value)});
          ++col_count_[j->index];
          col_rows_[j->index].push_back(r);
          bump(j->index);
        }
        ++j;
      } else {
        if (i->index != pc) {
          Residue v = f_.mul_add(factor, j->value, i->value);
          if (v) {
            scratch_.push_back({i->index, v});
          } else {
            --col_count_[i->index];
            bump(i->index);
          }
        }
        ++i;
        ++j;
      }
    }
    rows_[r].assign(scratch_.begin(), scratch_.end());
  }

  PrimeField f_;
  std::vector<SparseVector> rows_;
  std::vector<std::uint8_t> row_active_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::uint8_t> col_done_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
  SparseVector scratch_;
};

}  // namespace

Elimination eliminate(const SparseMatrix& m, bool keep_pivot_rows) {
  return MarkowitzEliminator(m).run(keep_pivot_rows);
}

std::size_t rank(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) return 0;
  return eliminate(m, false).rank;
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  const auto& f = m.field();
  Elimination el = eliminate(m, true);
  std::vector<std::uint8_t> is_pivot(m.cols(), 0);
  for (auto c : el.pivot_cols) is_pivot[c] = 1;
  std::vector<Residue> lead_inv(el.rank);
  for (std::size_t k = 0; k < el.rank; ++k)
    lead_inv[k] = f.inv(find_entry(el.pivot_row_values[k], el.pivot_cols[k])->value);

  std::vector<SparseVector> basis;
  basis.reserve(m.cols() - el.rank);
  std::vector<Residue> x(m.cols(), 0);
  for (std::uint32_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(x.begin(), x.end(), 0);
    x[free] = 1;
    for (std::size_t k = el.rank; k-- > 0;) {
      const auto pc = el.pivot_cols[k];
      std::uint64_t s = 0;
      for (const auto& e : el.pivot_row_values[k]) {
        if (e.index == pc || x[e.index] == 0) continue;
        s += static_cast<std::uint64_t>(e.value) * x[e.index] % f.modulus();
      }
      x[pc] = f.neg(f.mul(f.reduce(static_cast<std::int64_t>(s % f.modulus())), lead_inv[k]));
    }
    basis.push_back(to_sparse(x));
  }
  return basis;
}

std::optional<std::vector<Residue>> solve_in_image(const SparseMatrix& m, std::span<const Residue> b) {
  if (b.size() != m.rows()) throw std::domain_error("solve_in_image: right-hand side has wrong length");
  const auto& f = m.field();
  SparseVector rhs;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (f.reduce(b[i])) rhs.push_back({static_cast<std::uint32_t>(i), f.reduce(b[i])});
  if (rhs.empty()) return std::vector<Residue>(m.cols(), 0);
  SparseMatrix t = m.transpose();
  EchelonBasis basis(f, m.rows(), true);
  for (std::size_t c = 0; c < t.rows(); ++c) {
    auto r = t.row(c);
    basis.insert(SparseVector(r.begin(), r.end()));
  }
  auto combo = basis.express(rhs);
  if (!combo) return std::nullopt;
  return to_dense(*combo, m.cols());
}

EchelonBasis::EchelonBasis(const PrimeField& field, std::size_t dim, bool track)
    : field_(field), dim_(dim), track_(track), pivot_of_col_(dim, -1), acc_(dim, 0) {}

SparseVector EchelonBasis::reduce_impl(const SparseVector& v, SparseVector* combo) const {
  const auto& f = field_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  std::vector<std::uint32_t> combo_touched;
  if (combo) combo_acc_.assign(inputs_ + 1, 0);
  for (const auto& e : v) {
    if (e.index >= dim_) throw std::domain_error("EchelonBasis: vector index outside dimension");
    acc_[e.index] = f.reduce(e.value);
    heap.push(e.index);
  }
  SparseVector residual;
  std::uint32_t last = std::numeric_limits<std::uint32_t>::max();
  while (!heap.empty()) {
    std::uint32_t c = heap.top();
    heap.pop();
    if (c == last) continue;
    last = c;
    Residue a = acc_[c];
    if (a == 0) continue;
    std::int64_t k = pivot_of_col_[c];
    if (k < 0) {
      residual.push_back({c, a});
      acc_[c] = 0;
      continue;
    }
    Residue factor = f.neg(a);  // stored rows have leading coefficient 1
    for (const auto& e : rows_[k]) {
      Residue old = acc_[e.index];
      acc_[e.index] = f.mul_add(factor, e.value, old);
      if (e.index != c && old == 0) heap.push(e.index);
    }
    acc_[c] = 0;
    if (combo) {
      for (const auto& e : combos_[k]) {
        if (combo_acc_[e.index] == 0) combo_touched.push_back(e.index);
        combo_acc_[e.index] = f.mul_add(factor, e.value, combo_acc_[e.index]);
      }
    }
  }
  if (combo) {
    std::sort(combo_touched.begin(), combo_touched.end());
    combo_touched.erase(std::unique(combo_touched.begin(), combo_touched.end()), combo_touched.end());
    combo->clear();
    for (auto i : combo_touched)
      if (combo_acc_[i]) combo->push_back({i, combo_acc_[i]});
  }
  return residual;
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const { return reduce_impl(v, nullptr); }

bool EchelonBasis::insert(const SparseVector& v) {
  SparseVector combo;
  SparseVector r = reduce_impl(v, track_ ? &combo : nullptr);
  std::uint32_t id = static_cast<std::uint32_t>(inputs_++);
  if (r.empty()) return false;
  Residue scale = field_.inv(r.front().value);
  for (auto& e : r) e.value = field_.mul(e.value, scale);
  pivot_of_col_[r.front().index] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(r));
  if (track_) {
    // residual = input_id + combo (in terms of earlier inputs)
    combo.push_back({id, 1});
    combos_.push_back(sparse_scale(field_, combo, scale));
  }
  return true;
}

std::optional<SparseVector> EchelonBasis::express(const SparseVector& v) const {
  if (!track_) throw std::logic_error("EchelonBasis::express requires tracking");
  SparseVector combo;
  SparseVector r = reduce_impl(v, &combo);
  if (!r.empty()) return std::nullopt;
  for (auto& e : combo) e.value = field_.neg(e.value);
  return combo;
}

}  // namespace cartan
