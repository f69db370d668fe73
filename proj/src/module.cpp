#include "cartan/module.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

std::string_view module_name(ModuleKind k) {
  switch (k) {
    case ModuleKind::Adjoint: return "adjoint";
    case ModuleKind::Ambient: return "ambient";
    case ModuleKind::TruncatedPolynomials: return "polynomials";
    case ModuleKind::Trivial: return "trivial";
    case ModuleKind::TrivialTop: return "top";
    case ModuleKind::Character: return "character";
  }
  return "?";
}

ModuleKind parse_module(std::string_view name) {
  if (name == "adjoint") return ModuleKind::Adjoint;
  if (name == "ambient") return ModuleKind::Ambient;
  if (name == "polynomials" || name == "A") return ModuleKind::TruncatedPolynomials;
  if (name == "trivial" || name == "F") return ModuleKind::Trivial;
  if (name == "top") return ModuleKind::TrivialTop;
  if (name == "character") return ModuleKind::Character;
  throw std::invalid_argument("unknown coefficient module '" + std::string(name) +
                              "' (expected adjoint, ambient, polynomials, trivial, top or character)");
}

CoefficientModule::CoefficientModule(ModelPtr model, ModuleKind kind) : model_(std::move(model)), kind_(kind) {
  if (!model_) throw std::invalid_argument("module needs a model");
  const auto& g = *model_;
  const std::size_t n = g.n();
  const std::uint32_t p = g.p();
  auto weight_vec = [&](const MultiIndex& a) {
    WeightVec w{};
    Weight full = g.weight(a);
    for (std::size_t k = 0; k < full.components.size(); ++k) w[k] = static_cast<std::uint16_t>(full.components[k]);
    return w;
  };
  switch (kind) {
    case ModuleKind::Adjoint:
      for (std::uint32_t i = 0; i < g.dim(); ++i) add_basis(g.element(i), g.weight_vec_of(i), g.degree_of(i));
      break;
    case ModuleKind::Ambient:
    case ModuleKind::TruncatedPolynomials: {
      if (g.min_degree()) throw std::domain_error("monomial modules need the full algebra, not a truncated subalgebra");
      if (kind == ModuleKind::TruncatedPolynomials && g.contact())
        throw std::domain_error("A(n) coefficients are defined over the Hamiltonian family");
      std::uint64_t box = 1;
      for (std::size_t i = 0; i < n; ++i) box *= p;
      index_by_code_.assign(box, -1);
      for (std::uint64_t code = 0; code < box; ++code) {
        MultiIndex a = decode(code, p, n);
        if (kind == ModuleKind::Ambient && !g.contact() && a.is_zero()) continue;
        index_by_code_[code] = static_cast<std::int32_t>(labels_.size());
        add_basis(a, weight_vec(a), g.degree(a));
      }
      break;
    }
    case ModuleKind::Trivial:
      add_basis(MultiIndex(n), WeightVec{}, 0);
      break;
    case ModuleKind::TrivialTop: {
      MultiIndex top = g.contact() ? g.tau() : g.sigma();
      add_basis(top, WeightVec{}, g.degree(top));
      break;
    }
    case ModuleKind::Character: {
      if (!g.contact()) throw std::domain_error("the character module is defined over the contact family");
      if (!g.min_degree() || *g.min_degree() < 0)
        throw std::domain_error("the character module is defined over K(n)_{>=0}; build the model with min degree 0");
      character_element_ = g.index_of(MultiIndex::unit(n, n - 1));
      WeightVec w{};
      w[g.pairs()] = static_cast<std::uint16_t>(g.field().reduce(-2));
      add_basis(MultiIndex(n), w, -2);
      break;
    }
  }
}

void CoefficientModule::add_basis(const MultiIndex& label, const WeightVec& w, int degree) {
  labels_.push_back(label);
  weights_.push_back(w);
  degrees_.push_back(degree);
}

std::optional<std::uint32_t> CoefficientModule::index_of(const MultiIndex& a) const {
  if (kind_ == ModuleKind::Adjoint) return model_->index_of(a);
  if (!index_by_code_.empty()) {
    if (a.size() != model_->n() || !a.in_box(model_->p())) return std::nullopt;
    auto i = index_by_code_[encode(a, model_->p())];
    if (i < 0) return std::nullopt;
    return static_cast<std::uint32_t>(i);
  }
  if (a == labels_[0]) return 0u;
  return std::nullopt;
}

std::string CoefficientModule::describe(std::uint32_t v) const {
  switch (kind_) {
    case ModuleKind::Trivial: return "1";
    case ModuleKind::Character: return "1_chi";
    default: break;
  }
  Polynomial f = Polynomial::monomial(model_->context(), labels_.at(v));
  return to_string(f);
}

SparseVector CoefficientModule::act(std::uint32_t x, std::uint32_t v) const {
  SparseVector out;
  act_each(x, v, [&](std::uint32_t i, Residue c) { out.push_back({i, c}); });
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  // ambient terms can repeat an index only when two pair terms coincide
  SparseVector merged;
  const auto& f = model_->field();
  for (const auto& e : out) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value = f.add(merged.back().value, e.value);
      if (merged.back().value == 0) merged.pop_back();
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

SparseVector CoefficientModule::act(std::uint32_t x, const SparseVector& v) const {
  const auto& f = model_->field();
  std::vector<Residue> acc(dim(), 0);
  for (const auto& e : v)
    act_each(x, e.index, [&](std::uint32_t i, Residue c) { acc[i] = f.mul_add(c, e.value, acc[i]); });
  return to_sparse(acc);
}

Polynomial CoefficientModule::to_polynomial(const SparseVector& v) const {
  Polynomial f(model_->context());
  for (const auto& e : v) f.add_term(labels_.at(e.index), e.value);
  return f;
}

SparseVector CoefficientModule::from_polynomial(const Polynomial& f) const {
  SparseVector v;
  for (const auto& [a, c] : f.terms()) {
    auto idx = index_of(a);
    if (!idx) throw std::domain_error("monomial x^(" + to_string(a) + ") is not in the module");
    v.push_back({*idx, c});
  }
  std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
  return v;
}

}  // namespace cartan
