#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/field.hpp"
#include "cartan/multiindex.hpp"
#include "cartan/polynomial.hpp"
#include "cartan/sparse_matrix.hpp"

namespace cartan {

enum class Family { Kprime, K, Hprime, H };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
inline bool is_contact(Family f) { return f == Family::Kprime || f == Family::K; }

inline constexpr std::size_t kMaxWeightComponents = kMaxVariables / 2 + 1;

/// Eigenvalues of the canonical maximal torus: (a_{i+m} - a_i mod p) for each
/// symplectic pair, followed (contact family only) by deg(x^a) mod p.
struct Weight {
  std::vector<Residue> components;
  auto operator<=>(const Weight&) const = default;
  bool is_zero() const;
};
std::string to_string(const Weight& w);

/// Fixed-size weight used in hot loops; unused components stay zero.
using WeightVec = std::array<std::uint16_t, kMaxWeightComponents>;

/// One term c * x^e of a bracket computed in the ambient algebra.
struct MonomialTerm {
  MultiIndex exponent;
  Residue coeff;
};

/// At most m + 1 terms come out of a monomial bracket.
struct MonomialTerms {
  std::array<MonomialTerm, kMaxWeightComponents> items;
  std::size_t count = 0;
  void push(const MultiIndex& e, Residue c) { items[count++] = {e, c}; }
  const MonomialTerm* begin() const { return items.data(); }
  const MonomialTerm* end() const { return items.data() + count; }
};

/// Dense pair-indexed structure constants: bracket of basis elements i and j.
class BracketTable {
 public:
  BracketTable(std::size_t dim, std::vector<std::size_t> offsets, std::vector<Entry> entries)
      : dim_(dim), offsets_(std::move(offsets)), entries_(std::move(entries)) {}
  std::span<const Entry> get(std::uint32_t i, std::uint32_t j) const {
    std::size_t k = static_cast<std::size_t>(i) * dim_ + j;
    return {entries_.data() + offsets_[k], entries_.data() + offsets_[k + 1]};
  }
  std::size_t nnz() const noexcept { return entries_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// For each basis element u, every pair x < y whose bracket has a nonzero
/// u-component, with that component.
struct BracketPreimage {
  std::uint32_t x;
  std::uint32_t y;
  Residue coeff;
};
class InverseBracketIndex {
 public:
  InverseBracketIndex(std::vector<std::size_t> offsets, std::vector<BracketPreimage> items)
      : offsets_(std::move(offsets)), items_(std::move(items)) {}
  std::span<const BracketPreimage> pairs_hitting(std::uint32_t u) const {
    return {items_.data() + offsets_[u], items_.data() + offsets_[u + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<BracketPreimage> items_;
};

struct CommutatorSpan {
  int left_degree;
  int right_degree;
  std::size_t span_dim;
  std::size_t component_dim;  // dimension of the target graded component
  bool within_component;      // every bracket landed in degree left + right
  bool fills_component() const { return within_component && span_dim == component_dim; }
};

/// One of the graded Lie algebras K'(n), K(n), H'(n), H(n) over F_p, realised
/// on monomials of A(n), optionally cut down to the subalgebra of elements of
/// degree >= min_degree.
///
/// Elements are sparse vectors over the model's basis. Monomials outside the
/// model are projected away at bracket time: the constant 1 dies in H'(n) and
/// H(n), and anything else leaving the model is a closure violation
/// (std::logic_error).
class LieAlgebraModel {
 public:
  LieAlgebraModel(Family family, std::uint32_t p, std::size_t n, std::optional<int> min_degree = std::nullopt);
  ~LieAlgebraModel();
  LieAlgebraModel(const LieAlgebraModel&) = delete;
  LieAlgebraModel& operator=(const LieAlgebraModel&) = delete;

  static std::shared_ptr<const LieAlgebraModel> make(Family family, std::uint32_t p, std::size_t n,
                                                     std::optional<int> min_degree = std::nullopt) {
    return std::make_shared<const LieAlgebraModel>(family, p, n, min_degree);
  }
  /// The subalgebra of degree >= d of the same family.
  std::shared_ptr<const LieAlgebraModel> truncated(int d) const { return make(family_, p(), n(), d); }

  Family family() const noexcept { return family_; }
  bool contact() const noexcept { return is_contact(family_); }
  const AlgebraContext& context() const noexcept { return ctx_; }
  const PrimeField& field() const noexcept { return ctx_.field; }
  std::uint32_t p() const noexcept { return ctx_.p(); }
  std::size_t n() const noexcept { return ctx_.n; }
  std::size_t pairs() const noexcept { return ctx_.pairs; }
  std::optional<int> min_degree() const noexcept { return min_degree_; }
  std::string name() const;

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const noexcept { return basis_; }
  const MultiIndex& element(std::uint32_t i) const { return basis_.at(i); }
  std::optional<std::uint32_t> index_of(const MultiIndex& a) const;

  /// Special multi-indices: tau = (p-1,...,p-1); sigma = (p-1,...,p-1,0) for
  /// the contact family and (p-1,...,p-1) for the Hamiltonian family.
  MultiIndex tau() const { return MultiIndex::filled(n(), static_cast<int>(p()) - 1); }
  MultiIndex sigma() const;
  /// sigma^i = sigma - (p-1)(eps_i + eps_i'), Hamiltonian family, 0-based i < m.
  MultiIndex sigma_pair(std::size_t i) const;

  /// Graded degree: |a| + a_n - 2 (contact) or |a| - 2 (Hamiltonian).
  int degree(const MultiIndex& a) const;
  int degree_of(std::uint32_t i) const { return degrees_.at(i); }
  int lowest_degree() const noexcept { return lowest_degree_; }
  int highest_degree() const noexcept { return highest_degree_; }

  Weight weight(const MultiIndex& a) const;
  const WeightVec& weight_vec_of(std::uint32_t i) const { return weights_.at(i); }
  std::size_t weight_components() const noexcept { return pairs() + (contact() ? 1 : 0); }
  Weight to_weight(const WeightVec& w) const;

  /// [x^a, x^b] in the ambient algebra (K'(n) or A(n)), no projection.
  MonomialTerms ambient_bracket(const MultiIndex& a, const MultiIndex& b) const;
  /// [e_i, e_j] in the model basis.
  SparseVector bracket(std::uint32_t i, std::uint32_t j) const;
  /// Bilinear extension.
  SparseVector bracket(const SparseVector& x, const SparseVector& y) const;
  /// Projects ambient terms onto the model basis (with the closure check).
  SparseVector project(const MonomialTerms& terms) const;

  Polynomial to_polynomial(const SparseVector& v) const;
  /// Throws std::domain_error when a monomial is not a basis element.
  SparseVector from_polynomial(const Polynomial& f) const;

  /// Lazily built caches; safe to request from several threads.
  const BracketTable* table() const;
  const InverseBracketIndex& inverse_index() const;

  std::vector<std::uint32_t> graded_component(int d) const;
  std::map<Weight, std::size_t> cartan_decomposition() const;
  CommutatorSpan commutator_span(int left_degree, int right_degree) const;
  /// dim [g, g].
  std::size_t derived_dim() const;

 private:
  SparseVector compute_bracket(std::uint32_t i, std::uint32_t j) const;

  Family family_;
  AlgebraContext ctx_;
  std::optional<int> min_degree_;
  std::vector<MultiIndex> basis_;
  std::vector<std::int32_t> index_by_code_;
  std::vector<int> degrees_;
  std::vector<WeightVec> weights_;
  int lowest_degree_ = 0;
  int highest_degree_ = 0;

  struct Caches;
  std::unique_ptr<Caches> caches_;
};

using ModelPtr = std::shared_ptr<const LieAlgebraModel>;

/// Largest dimension for which the dense pair table is materialised.
inline constexpr std::size_t kMaxTableDim = 3200;

}  // namespace cartan
