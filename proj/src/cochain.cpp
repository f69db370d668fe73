#include "cartan/cochain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cartan {

int sort_tuple(std::span<const std::uint32_t> args, Tuple& out) {
  if (args.size() > kMaxArity) throw std::domain_error("cochain arity above 4 is not supported");
  out = Tuple{};
  out.size = static_cast<std::uint8_t>(args.size());
  std::copy(args.begin(), args.end(), out.items.begin());
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < args.size(); ++i)
    for (std::size_t j = i; j > 0 && out.items[j - 1] >= out.items[j]; --j) {
      if (out.items[j - 1] == out.items[j]) return 0;
      std::swap(out.items[j - 1], out.items[j]);
      sign = -sign;
    }
  return sign;
}

namespace {

void accumulate(const PrimeField& f, SparseVector& v, std::uint32_t index, Residue c) {
  if (c == 0) return;
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, std::uint32_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) {
    it->value = f.add(it->value, c);
    if (it->value == 0) v.erase(it);
  } else {
    v.insert(it, {index, c});
  }
}

Residue signed_residue(const PrimeField& f, int sign, Residue c) { return sign > 0 ? c : f.neg(c); }

}  // namespace

Cochain::Cochain(ModelPtr model, ModulePtr module, std::size_t arity)
    : model_(std::move(model)), module_(std::move(module)), arity_(arity) {
  if (!model_ || !module_) throw std::invalid_argument("cochain needs a model and a module");
  if (module_->model().get() != model_.get() && !(module_->model()->context() == model_->context()))
    throw std::domain_error("cochain: module is over a different algebra");
  if (arity > kMaxArity) throw std::domain_error("cochain arity above 4 is not supported");
}

void Cochain::add_sorted(const Tuple& t, std::uint32_t value, Residue c) {
  if (c == 0) return;
  auto& v = values_[t];
  accumulate(field(), v, value, c);
  if (v.empty()) values_.erase(t);
}

void Cochain::add(std::span<const std::uint32_t> args, std::uint32_t value, Residue c) {
  if (args.size() != arity_) throw std::domain_error("cochain: wrong number of arguments");
  Tuple t;
  int s = sort_tuple(args, t);
  if (s == 0) return;
  add_sorted(t, value, signed_residue(field(), s, c));
}

void Cochain::add(std::span<const std::uint32_t> args, const SparseVector& value, Residue c) {
  if (args.size() != arity_) throw std::domain_error("cochain: wrong number of arguments");
  Tuple t;
  int s = sort_tuple(args, t);
  if (s == 0) return;
  Residue k = signed_residue(field(), s, c);
  for (const auto& e : value) add_sorted(t, e.index, field().mul(e.value, k));
}

SparseVector Cochain::evaluate_sorted(const Tuple& t) const {
  auto it = values_.find(t);
  return it == values_.end() ? SparseVector{} : it->second;
}

SparseVector Cochain::evaluate(std::span<const std::uint32_t> args) const {
  if (args.size() != arity_) throw std::domain_error("cochain: wrong number of arguments");
  Tuple t;
  int s = sort_tuple(args, t);
  if (s == 0) return {};
  SparseVector v = evaluate_sorted(t);
  return s > 0 ? v : sparse_scale(field(), v, field().neg(1));
}

std::size_t Cochain::nnz() const {
  std::size_t n = 0;
  for (const auto& [t, v] : values_) n += v.size();
  return n;
}

std::vector<std::pair<Tuple, SparseVector>> Cochain::sorted_terms() const {
  std::vector<std::pair<Tuple, SparseVector>> out(values_.begin(), values_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void Cochain::require_compatible(const Cochain& o) const {
  if (arity_ != o.arity_ || model_->context() != o.model_->context() || model_->dim() != o.model_->dim() ||
      module_->kind() != o.module_->kind() || module_->dim() != o.module_->dim())
    throw std::domain_error("cochains live in different spaces");
}

Cochain Cochain::operator+(const Cochain& o) const {
  require_compatible(o);
  Cochain r(*this);
  for (const auto& [t, v] : o.values_)
    for (const auto& e : v) r.add_sorted(t, e.index, e.value);
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(field().neg(1)); }

Cochain Cochain::scaled(Residue c) const {
  Cochain r(model_, module_, arity_);
  c = field().reduce(c);
  if (c == 0) return r;
  for (const auto& [t, v] : values_) r.values_.emplace(t, sparse_scale(field(), v, c));
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  require_compatible(o);
  return values_ == o.values_;
}

Cochain Cochain::in_module(const ModulePtr& target) const {
  if (target->model()->context() != model_->context()) throw std::domain_error("in_module: different algebra");
  Cochain r(model_, target, arity_);
  for (const auto& [t, v] : values_)
    for (const auto& e : v) {
      auto idx = target->index_of(module_->label(e.index));
      if (!idx) throw std::domain_error("in_module: value " + module_->describe(e.index) + " has no counterpart");
      r.add_sorted(t, *idx, e.value);
    }
  return r;
}

std::string Cochain::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  auto terms = sorted_terms();
  if (terms.empty()) return "0";
  std::size_t shown = 0;
  for (const auto& [t, v] : terms) {
    if (shown++ == max_terms) {
      os << "... (" << terms.size() << " tuples)";
      break;
    }
    os << '(';
    for (std::size_t i = 0; i < t.size; ++i) {
      if (i) os << ", ";
      os << cartan::to_string(Polynomial::monomial(model_->context(), model_->element(t[i])));
    }
    os << ") -> " << cartan::to_string(module_->to_polynomial(v)) << '\n';
  }
  return os.str();
}

SparseVector differential_at(const LieAlgebraModel& g, const CoefficientModule& m, const CochainEvaluator& c,
                             std::span<const std::uint32_t> args) {
  const auto& f = g.field();
  const std::size_t k1 = args.size();
  if (k1 == 0 || k1 > kMaxArity) throw std::domain_error("differential_at: bad arity");
  std::vector<Residue> acc(m.dim(), 0);
  std::array<std::uint32_t, kMaxArity> rest{};
  if (!m.acts_trivially()) {
    for (std::size_t i = 0; i < k1; ++i) {
      std::size_t r = 0;
      for (std::size_t j = 0; j < k1; ++j)
        if (j != i) rest[r++] = args[j];
      SparseVector v = c(std::span<const std::uint32_t>(rest.data(), k1 - 1));
      Residue sign = (i % 2) ? f.neg(1) : 1;
      for (const auto& e : v)
        m.act_each(args[i], e.index,
                   [&](std::uint32_t idx, Residue a) { acc[idx] = f.mul_add(f.mul(a, e.value), sign, acc[idx]); });
    }
  }
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = i + 1; j < k1; ++j) {
      SparseVector br = g.bracket(args[i], args[j]);
      if (br.empty()) continue;
      std::size_t r = 1;
      for (std::size_t l = 0; l < k1; ++l)
        if (l != i && l != j) rest[r++] = args[l];
      Residue sign = ((i + j) % 2) ? f.neg(1) : 1;
      for (const auto& b : br) {
        rest[0] = b.index;
        SparseVector v = c(std::span<const std::uint32_t>(rest.data(), k1 - 1));
        Residue k = f.mul(sign, b.value);
        for (const auto& e : v) acc[e.index] = f.mul_add(e.value, k, acc[e.index]);
      }
    }
  return to_sparse(acc);
}

Cochain apply_differential(const Cochain& c) {
  const auto& g = *c.model();
  const auto& m = *c.module();
  const auto& f = g.field();
  const std::size_t k = c.arity();
  if (k + 1 > kMaxArity) throw std::domain_error("apply_differential: arity too large");
  if (g.dim() > kMaxTableDim)
    throw std::domain_error("apply_differential: " + g.name() + " is too large for the scatter differential, use filters");
  Cochain out(c.model(), c.module(), k + 1);
  const auto& inverse = g.inverse_index();
  std::vector<bool> in_u(g.dim(), false);
  std::array<std::uint32_t, kMaxArity> buf{};
  for (const auto& [u_tuple, w] : c.terms()) {
    for (std::size_t q = 0; q < k; ++q) in_u[u_tuple[q]] = true;
    // action terms: x . c(U) lands on U + {x} with sign (-1)^{position of x}
    if (!m.acts_trivially()) {
      for (std::uint32_t x = 0; x < g.dim(); ++x) {
        if (in_u[x]) continue;
        std::size_t pos = 0;
        while (pos < k && u_tuple[pos] < x) ++pos;
        std::size_t r = 0;
        for (std::size_t q = 0; q < k; ++q) {
          if (q == pos) buf[r++] = x;
          buf[r++] = u_tuple[q];
        }
        if (pos == k) buf[r++] = x;
        Tuple t;
        sort_tuple(std::span<const std::uint32_t>(buf.data(), k + 1), t);
        Residue sign = (pos % 2) ? f.neg(1) : 1;
        for (const auto& e : w)
          m.act_each(x, e.index, [&](std::uint32_t idx, Residue a) {
            out.add_sorted(t, idx, f.mul(f.mul(a, e.value), sign));
          });
      }
    }
    // bracket terms: c([x, y], rest) with u = U[q] a component of [x, y]
    for (std::size_t q = 0; q < k; ++q) {
      const std::uint32_t u = u_tuple[q];
      for (const auto& pre : inverse.pairs_hitting(u)) {
        if ((in_u[pre.x] && pre.x != u) || (in_u[pre.y] && pre.y != u)) continue;
        std::size_t r = 0;
        for (std::size_t l = 0; l < k; ++l)
          if (l != q) buf[r++] = u_tuple[l];
        buf[r++] = pre.x;
        buf[r++] = pre.y;
        Tuple t;
        if (sort_tuple(std::span<const std::uint32_t>(buf.data(), k + 1), t) == 0) continue;
        std::size_t i = 0, j = 0;
        for (std::size_t l = 0; l <= k; ++l) {
          if (t[l] == pre.x) i = l;
          if (t[l] == pre.y) j = l;
        }
        int sign = ((i + j + q) % 2) ? -1 : 1;
        Residue coeff = sign > 0 ? pre.coeff : f.neg(pre.coeff);
        for (const auto& e : w) out.add_sorted(t, e.index, f.mul(coeff, e.value));
      }
    }
    for (std::size_t q = 0; q < k; ++q) in_u[u_tuple[q]] = false;
  }
  return out;
}

CocycleCheck check_cocycle(const Cochain& c) {
  CocycleCheck result;
  Cochain d = apply_differential(c);
  result.terms_checked = c.support_size();
  if (d.is_zero()) return result;
  auto terms = d.sorted_terms();
  result.is_cocycle = false;
  result.witness = terms.front().first;
  result.witness_value = terms.front().second;
  return result;
}

AlternationCheck check_alternating(const CochainEvaluator& c, const PrimeField& field, std::span<const Tuple> tuples) {
  AlternationCheck result;
  for (const auto& t : tuples) {
    ++result.tuples_checked;
    std::vector<std::uint32_t> args(t.view().begin(), t.view().end());
    SparseVector base = c(args);
    std::vector<std::size_t> perm(args.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> permuted(args.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
      int sign = 1;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
          if (perm[a] > perm[b]) sign = -sign;
      for (std::size_t a = 0; a < perm.size(); ++a) permuted[a] = args[perm[a]];
      SparseVector v = c(permuted);
      SparseVector expected = sign > 0 ? base : sparse_scale(field, base, field.neg(1));
      if (v != expected) {
        result.alternating = false;
        result.witness = permuted;
        return result;
      }
    }
    for (std::size_t a = 0; a + 1 < args.size(); ++a) {
      permuted = args;
      permuted[a + 1] = permuted[a];
      if (!c(permuted).empty()) {
        result.alternating = false;
        result.witness = permuted;
        return result;
      }
    }
  }
  return result;
}

}  // namespace cartan
