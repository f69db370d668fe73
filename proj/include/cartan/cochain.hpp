#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cartan/module.hpp"

namespace cartan {

inline constexpr std::size_t kMaxArity = 4;

/// Strictly increasing tuple of basis indices (the arguments of an
/// elementary alternating cochain).
struct Tuple {
  std::array<std::uint32_t, kMaxArity> items{};
  std::uint8_t size = 0;

  std::uint32_t operator[](std::size_t i) const { return items[i]; }
  std::span<const std::uint32_t> view() const { return {items.data(), size}; }
  bool operator==(const Tuple& o) const {
    return size == o.size && std::equal(items.begin(), items.begin() + size, o.items.begin());
  }
  auto operator<=>(const Tuple& o) const {
    if (size != o.size) return size <=> o.size;
    for (std::size_t i = 0; i < size; ++i)
      if (items[i] != o.items[i]) return items[i] <=> o.items[i];
    return std::strong_ordering::equal;
  }
};

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ t.size;
    for (std::size_t i = 0; i < t.size; ++i) h = (h ^ t.items[i]) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

/// Sorts args into a Tuple. Returns the sign of the sorting permutation
/// (+1/-1), or 0 when an argument repeats.
int sort_tuple(std::span<const std::uint32_t> args, Tuple& out);

/// Sparse alternating k-cochain on a model with values in a module: stores
/// one module vector per increasing argument tuple.
class Cochain {
 public:
  Cochain(ModelPtr model, ModulePtr module, std::size_t arity);

  const ModelPtr& model() const noexcept { return model_; }
  const ModulePtr& module() const noexcept { return module_; }
  std::size_t arity() const noexcept { return arity_; }
  const PrimeField& field() const noexcept { return model_->field(); }

  /// Adds c * value at the given arguments (any order, sign applied).
  void add(std::span<const std::uint32_t> args, std::uint32_t value, Residue c);
  void add(std::span<const std::uint32_t> args, const SparseVector& value, Residue c = 1);
  void add_sorted(const Tuple& t, std::uint32_t value, Residue c);

  /// Value on the given arguments (any order).
  SparseVector evaluate(std::span<const std::uint32_t> args) const;
  SparseVector evaluate_sorted(const Tuple& t) const;

  bool is_zero() const noexcept { return values_.empty(); }
  /// Number of nonzero (tuple, module basis) coordinates.
  std::size_t nnz() const;
  std::size_t support_size() const noexcept { return values_.size(); }
  /// Support in increasing tuple order.
  std::vector<std::pair<Tuple, SparseVector>> sorted_terms() const;
  const std::unordered_map<Tuple, SparseVector, TupleHash>& terms() const noexcept { return values_; }

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(Residue c) const;
  bool operator==(const Cochain& o) const;

  /// Same values re-expressed in another module over the same model, matching
  /// module basis vectors by monomial label. Throws std::domain_error when a
  /// value has no counterpart.
  Cochain in_module(const ModulePtr& target) const;

  /// Human-readable listing, e.g. "(x1, x2) -> x1^4*x2^4".
  std::string to_string(std::size_t max_terms = 20) const;

 private:
  void require_compatible(const Cochain& o) const;

  ModelPtr model_;
  ModulePtr module_;
  std::size_t arity_;
  std::unordered_map<Tuple, SparseVector, TupleHash> values_;
};

/// Evaluator of a cochain on an argument list (any order, alternating).
using CochainEvaluator = std::function<SparseVector(std::span<const std::uint32_t>)>;

/// (dc)(t_0..t_k) for a single (k+1)-tuple, computed from the defining formula
///   sum_i (-1)^i t_i . c(.. t_i omitted ..)
///   + sum_{i<j} (-1)^{i+j} c([t_i, t_j], .. t_i, t_j omitted ..).
SparseVector differential_at(const LieAlgebraModel& g, const CoefficientModule& m, const CochainEvaluator& c,
                             std::span<const std::uint32_t> args);

/// dc for a stored cochain, computed by scattering every elementary term of c
/// into the tuples it reaches. Exact on the whole complex.
Cochain apply_differential(const Cochain& c);

/// The cochain dc is zero, or the first tuple (in increasing order) where it
/// is not.
struct CocycleCheck {
  bool is_cocycle = true;
  std::optional<Tuple> witness;
  SparseVector witness_value;
  std::size_t terms_checked = 0;
};
CocycleCheck check_cocycle(const Cochain& c);

/// Alternation check of an evaluator on every ordering of each given tuple.
struct AlternationCheck {
  bool alternating = true;
  std::vector<std::uint32_t> witness;  // an argument order breaking alternation
  std::size_t tuples_checked = 0;
};
AlternationCheck check_alternating(const CochainEvaluator& c, const PrimeField& field,
                                   std::span<const Tuple> tuples);

}  // namespace cartan
