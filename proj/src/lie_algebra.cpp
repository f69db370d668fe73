#include "cartan/lie_algebra.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cartan {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Kprime: return "Kprime";
    case Family::K: return "K";
    case Family::Hprime: return "Hprime";
    case Family::H: return "H";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "K") return Family::K;
  if (name == "H") return Family::H;
  if (name == "Kprime" || name == "K'") return Family::Kprime;
  if (name == "Hprime" || name == "H'") return Family::Hprime;
  throw std::invalid_argument("unknown family '" + std::string(name) + "' (expected K, Kprime, H or Hprime)");
}

bool Weight::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](Residue r) { return r == 0; });
}

std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.components.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w.components[i]);
  }
  return s + ")";
}

struct LieAlgebraModel::Caches {
  std::once_flag table_once;
  std::unique_ptr<BracketTable> table;
  std::once_flag inverse_once;
  std::unique_ptr<InverseBracketIndex> inverse;
};

LieAlgebraModel::~LieAlgebraModel() = default;

namespace {

AlgebraContext make_context(Family family, std::uint32_t p, std::size_t n) {
  if (is_contact(family)) {
    if (n < 3 || n % 2 == 0)
      throw std::domain_error("contact family needs odd n = 2m+1 >= 3, got n = " + std::to_string(n));
    return AlgebraContext::contact(p, n);
  }
  if (n < 2 || n % 2)
    throw std::domain_error("Hamiltonian family needs even n = 2m >= 2, got n = " + std::to_string(n));
  return AlgebraContext::hamiltonian(p, n);
}

}  // namespace

LieAlgebraModel::LieAlgebraModel(Family family, std::uint32_t p, std::size_t n, std::optional<int> min_degree)
    : family_(family), ctx_(make_context(family, p, n)), min_degree_(min_degree), caches_(std::make_unique<Caches>()) {
  if (n > kMaxVariables) throw std::domain_error("too many variables");
  if (p >= (1u << 14)) throw std::domain_error("models need p < 2^14");
  std::uint64_t box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    box *= p;
    if (box > (1ull << 27)) throw std::domain_error("p^n too large to enumerate a monomial basis");
  }
  {
    // weight codes must fit in 16-bit components
    if (p > 65535) throw std::domain_error("p too large for weights");
  }
  const MultiIndex tau_index = tau();
  const MultiIndex sigma_index = sigma();
  const bool drop_tau = family == Family::K && (pairs() + 2) % p == 0;
  index_by_code_.assign(box, -1);
  for (std::uint64_t code = 0; code < box; ++code) {
    MultiIndex a = decode(code, p, n);
    switch (family) {
      case Family::Kprime: break;
      case Family::K:
        if (drop_tau && a == tau_index) continue;
        break;
      case Family::Hprime:
        if (a.is_zero()) continue;
        break;
      case Family::H:
        if (a.is_zero() || a == sigma_index) continue;
        break;
    }
    int d = degree(a);
    if (min_degree && d < *min_degree) continue;
    index_by_code_[code] = static_cast<std::int32_t>(basis_.size());
    basis_.push_back(a);
    degrees_.push_back(d);
    WeightVec w{};
    Weight full = weight(a);
    for (std::size_t k = 0; k < full.components.size(); ++k) w[k] = static_cast<std::uint16_t>(full.components[k]);
    weights_.push_back(w);
  }
  if (!basis_.empty()) {
    lowest_degree_ = *std::min_element(degrees_.begin(), degrees_.end());
    highest_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
  }
}

std::string LieAlgebraModel::name() const {
  std::string s;
  switch (family_) {
    case Family::Kprime: s = "K'"; break;
    case Family::K: s = "K"; break;
    case Family::Hprime: s = "H'"; break;
    case Family::H: s = "H"; break;
  }
  s += "(" + std::to_string(n()) + ")";
  if (min_degree_) s += "_{>=" + std::to_string(*min_degree_) + "}";
  return s + "@p=" + std::to_string(p());
}

std::optional<std::uint32_t> LieAlgebraModel::index_of(const MultiIndex& a) const {
  if (a.size() != n() || !a.in_box(p())) return std::nullopt;
  auto i = index_by_code_[encode(a, p())];
  if (i < 0) return std::nullopt;
  return static_cast<std::uint32_t>(i);
}

MultiIndex LieAlgebraModel::sigma() const {
  MultiIndex s = tau();
  if (contact()) s.set(n() - 1, 0);
  return s;
}

MultiIndex LieAlgebraModel::sigma_pair(std::size_t i) const {
  if (contact()) throw std::domain_error("sigma^i is only defined for the Hamiltonian family");
  if (i >= pairs()) throw std::domain_error("sigma^i: pair index out of range");
  MultiIndex s = sigma();
  s.set(i, 0);
  s.set(conjugate_index(i, pairs()), 0);
  return s;
}

int LieAlgebraModel::degree(const MultiIndex& a) const {
  if (contact()) return a.degree() + a[n() - 1] - 2;
  return a.degree() - 2;
}

Weight LieAlgebraModel::weight(const MultiIndex& a) const {
  Weight w;
  const auto& f = field();
  for (std::size_t i = 0; i < pairs(); ++i) w.components.push_back(f.reduce(a[i + pairs()] - a[i]));
  if (contact()) w.components.push_back(f.reduce(degree(a)));
  return w;
}

Weight LieAlgebraModel::to_weight(const WeightVec& v) const {
  Weight w;
  for (std::size_t k = 0; k < weight_components(); ++k) w.components.push_back(v[k]);
  return w;
}

MonomialTerms LieAlgebraModel::ambient_bracket(const MultiIndex& a, const MultiIndex& b) const {
  MonomialTerms out;
  const auto& f = field();
  const std::size_t m = pairs();
  const int top = static_cast<int>(p()) - 1;
  // D_H part: pairing the j and j' summands gives (a_i b_i' - a_i' b_i) x^{a+b-eps_i-eps_i'}
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t ic = i + m;
    std::int64_t c = static_cast<std::int64_t>(a[i]) * b[ic] - static_cast<std::int64_t>(a[ic]) * b[i];
    Residue r = f.reduce(c);
    if (r == 0) continue;
    MultiIndex e = a + b;
    e.add_at(i, -1);
    e.add_at(ic, -1);
    bool ok = true;
    for (std::size_t k = 0; k < n(); ++k)
      if (e[k] > top) {
        ok = false;
        break;
      }
    if (ok) out.push(e, r);
  }
  if (contact()) {
    const std::size_t last = n() - 1;
    std::int64_t c = static_cast<std::int64_t>(a[last]) * degree(b) - static_cast<std::int64_t>(b[last]) * degree(a);
    Residue r = f.reduce(c);
    if (r != 0) {
      MultiIndex e = a + b;
      e.add_at(last, -1);
      bool ok = true;
      for (std::size_t k = 0; k < n(); ++k)
        if (e[k] > top) {
          ok = false;
          break;
        }
      if (ok) out.push(e, r);
    }
  }
  return out;
}

SparseVector LieAlgebraModel::project(const MonomialTerms& terms) const {
  SparseVector v;
  for (const auto& t : terms) {
    auto idx = index_of(t.exponent);
    if (idx) {
      v.push_back({*idx, t.coeff});
      continue;
    }
    if (!contact() && t.exponent.is_zero()) continue;  // constants vanish in H'(n)
    throw std::logic_error("closure violated in " + name() + ": bracket produced x^(" + to_string(t.exponent) + ")");
  }
  std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
  return v;
}

SparseVector LieAlgebraModel::compute_bracket(std::uint32_t i, std::uint32_t j) const {
  return project(ambient_bracket(basis_.at(i), basis_.at(j)));
}

const BracketTable* LieAlgebraModel::table() const {
  if (dim() > kMaxTableDim) return nullptr;
  std::call_once(caches_->table_once, [this] {
    const std::size_t d = dim();
    std::vector<std::size_t> offsets(d * d + 1, 0);
    std::vector<Entry> entries;
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = 0; j < d; ++j) {
        auto v = compute_bracket(i, j);
        entries.insert(entries.end(), v.begin(), v.end());
        offsets[static_cast<std::size_t>(i) * d + j + 1] = entries.size();
      }
    caches_->table = std::make_unique<BracketTable>(d, std::move(offsets), std::move(entries));
  });
  return caches_->table.get();
}

const InverseBracketIndex& LieAlgebraModel::inverse_index() const {
  std::call_once(caches_->inverse_once, [this] {
    const std::size_t d = dim();
    std::vector<std::vector<BracketPreimage>> lists(d);
    for (std::uint32_t x = 0; x < d; ++x)
      for (std::uint32_t y = x + 1; y < d; ++y)
        for (const auto& e : bracket(x, y)) lists[e.index].push_back({x, y, e.value});
    std::vector<std::size_t> offsets(d + 1, 0);
    std::vector<BracketPreimage> items;
    for (std::size_t u = 0; u < d; ++u) {
      items.insert(items.end(), lists[u].begin(), lists[u].end());
      offsets[u + 1] = items.size();
    }
    caches_->inverse = std::make_unique<InverseBracketIndex>(std::move(offsets), std::move(items));
  });
  return *caches_->inverse;
}

SparseVector LieAlgebraModel::bracket(std::uint32_t i, std::uint32_t j) const {
  if (i >= dim() || j >= dim()) throw std::domain_error("bracket: basis index out of range");
  if (const BracketTable* t = table()) {
    auto s = t->get(i, j);
    return SparseVector(s.begin(), s.end());
  }
  return compute_bracket(i, j);
}

SparseVector LieAlgebraModel::bracket(const SparseVector& x, const SparseVector& y) const {
  const auto& f = field();
  std::vector<Residue> acc(dim(), 0);
  for (const auto& ex : x)
    for (const auto& ey : y)
      for (const auto& e : bracket(ex.index, ey.index))
        acc[e.index] = f.mul_add(f.mul(ex.value, ey.value), e.value, acc[e.index]);
  return to_sparse(acc);
}

Polynomial LieAlgebraModel::to_polynomial(const SparseVector& v) const {
  Polynomial f(ctx_);
  for (const auto& e : v) f.add_term(basis_.at(e.index), e.value);
  return f;
}

SparseVector LieAlgebraModel::from_polynomial(const Polynomial& f) const {
  if (!(f.context() == ctx_)) throw std::domain_error("from_polynomial: context mismatch");
  SparseVector v;
  for (const auto& [a, c] : f.terms()) {
    auto idx = index_of(a);
    if (!idx) throw std::domain_error("x^(" + to_string(a) + ") is not a basis element of " + name());
    v.push_back({*idx, c});
  }
  std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
  return v;
}

std::vector<std::uint32_t> LieAlgebraModel::graded_component(int d) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < dim(); ++i)
    if (degrees_[i] == d) out.push_back(i);
  return out;
}

std::map<Weight, std::size_t> LieAlgebraModel::cartan_decomposition() const {
  std::map<Weight, std::size_t> out;
  for (const auto& a : basis_) ++out[weight(a)];
  return out;
}

CommutatorSpan LieAlgebraModel::commutator_span(int left_degree, int right_degree) const {
  CommutatorSpan result{left_degree, right_degree, 0, 0, true};
  const int target = left_degree + right_degree;
  auto target_component = graded_component(target);
  result.component_dim = target_component.size();
  EchelonBasis span(field(), dim());
  for (auto x : graded_component(left_degree))
    for (auto y : graded_component(right_degree)) {
      auto v = bracket(x, y);
      for (const auto& e : v)
        if (degrees_[e.index] != target) result.within_component = false;
      if (span.rank() < result.component_dim || !result.within_component) span.insert(v);
    }
  result.span_dim = span.rank();
  return result;
}

std::size_t LieAlgebraModel::derived_dim() const {
  EchelonBasis span(field(), dim());
  for (std::uint32_t x = 0; x < dim() && span.rank() < dim(); ++x)
    for (std::uint32_t y = x + 1; y < dim() && span.rank() < dim(); ++y) span.insert(bracket(x, y));
  return span.rank();
}

}  // namespace cartan
