#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/lie_algebra.hpp"

namespace cartan {

enum class ModuleKind {
  Adjoint,               // g acting on itself
  Ambient,               // K'(n) over K(n), H'(n) over H(n)
  TruncatedPolynomials,  // A(n) over H(n) through D_H
  Trivial,               // F with zero action
  TrivialTop,            // the line spanned by x^sigma (H) or x^tau (K), zero action
  Character,             // F_{lambda - sigma} over K(n)_{>=0}: x_n acts as -2
};

std::string_view module_name(ModuleKind k);
ModuleKind parse_module(std::string_view name);

/// Finite-dimensional g-module with a monomial-like basis. Every basis vector
/// carries a torus weight and a degree so that cochain spaces can be split
/// into homogeneous blocks.
class CoefficientModule {
 public:
  CoefficientModule(ModelPtr model, ModuleKind kind);

  static std::shared_ptr<const CoefficientModule> make(ModelPtr model, ModuleKind kind) {
    return std::make_shared<const CoefficientModule>(std::move(model), kind);
  }

  ModuleKind kind() const noexcept { return kind_; }
  const ModelPtr& model() const noexcept { return model_; }
  std::size_t dim() const noexcept { return weights_.size(); }
  /// True when every basis element acts as zero.
  bool acts_trivially() const noexcept { return kind_ == ModuleKind::Trivial || kind_ == ModuleKind::TrivialTop; }

  /// Monomial labelling basis vector v (the unit monomial for 1-dimensional modules).
  const MultiIndex& label(std::uint32_t v) const { return labels_.at(v); }
  std::optional<std::uint32_t> index_of(const MultiIndex& a) const;
  std::string describe(std::uint32_t v) const;

  const WeightVec& weight_of(std::uint32_t v) const { return weights_[v]; }
  int degree_of(std::uint32_t v) const { return degrees_[v]; }

  /// Calls f(index, coeff) for every nonzero coefficient of x . v, where x is
  /// a basis index of the model.
  template <class F>
  void act_each(std::uint32_t x, std::uint32_t v, F&& f) const;
  SparseVector act(std::uint32_t x, std::uint32_t v) const;
  SparseVector act(std::uint32_t x, const SparseVector& v) const;

  Polynomial to_polynomial(const SparseVector& v) const;
  SparseVector from_polynomial(const Polynomial& f) const;

 private:
  void add_basis(const MultiIndex& label, const WeightVec& w, int degree);

  ModelPtr model_;
  ModuleKind kind_;
  std::vector<MultiIndex> labels_;
  std::vector<WeightVec> weights_;
  std::vector<int> degrees_;
  std::vector<std::int32_t> index_by_code_;
  std::optional<std::uint32_t> character_element_;  // basis index of x_n
};

using ModulePtr = std::shared_ptr<const CoefficientModule>;

template <class F>
void CoefficientModule::act_each(std::uint32_t x, std::uint32_t v, F&& f) const {
  switch (kind_) {
    case ModuleKind::Trivial:
    case ModuleKind::TrivialTop:
      return;
    case ModuleKind::Character:
      if (character_element_ && x == *character_element_) f(0u, model_->field().reduce(-2));
      return;
    case ModuleKind::Adjoint:
      if (const BracketTable* t = model_->table()) {
        for (const auto& e : t->get(x, v)) f(e.index, e.value);
      } else {
        for (const auto& e : model_->bracket(x, v)) f(e.index, e.value);
      }
      return;
    case ModuleKind::Ambient:
    case ModuleKind::TruncatedPolynomials:
      for (const auto& t : model_->ambient_bracket(model_->element(x), labels_[v])) {
        auto idx = index_of(t.exponent);
        if (idx) {
          f(*idx, t.coeff);
        } else if (!t.exponent.is_zero()) {
          throw std::logic_error("module action left the module");
        }
      }
      return;
  }
}

}  // namespace cartan
