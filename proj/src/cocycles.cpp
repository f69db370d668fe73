#include "cartan/cocycles.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cartan {

SparseVector monomial_value(const CoefficientModule& m, const MultiIndex& e, Residue c) {
  const auto& g = *m.model();
  c = g.field().reduce(c);
  if (c == 0 || !e.in_box(g.p())) return {};
  if (auto idx = m.index_of(e)) return {{*idx, c}};
  if (e.is_zero()) return {};  // constants die in H'(n)
  throw std::logic_error("value x^(" + to_string(e) + ") lies outside the coefficient module");
}

namespace {

SparseVector merge(const PrimeField& f, SparseVector v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  for (const auto& e : v) {
    if (!out.empty() && out.back().index == e.index) {
      out.back().value = f.add(out.back().value, e.value);
      if (out.back().value == 0) out.pop_back();
    } else if (e.value != 0) {
      out.push_back(e);
    }
  }
  return out;
}

void append(SparseVector& out, const SparseVector& v) { out.insert(out.end(), v.begin(), v.end()); }

void require_hamiltonian(const LieAlgebraModel& g, std::string_view what) {
  if (g.contact() || g.min_degree())
    throw std::domain_error(std::string(what) + " is defined on H(n) or H'(n) only");
}

/// 1-based symplectic index -> 0-based coordinate, checked against 2m.
std::size_t coordinate(const LieAlgebraModel& g, std::size_t i, std::string_view what) {
  if (i < 1 || i > 2 * g.pairs())
    throw std::domain_error(std::string(what) + ": index " + std::to_string(i) + " outside 1.." +
                            std::to_string(2 * g.pairs()));
  return i - 1;
}

std::uint32_t arg_index(std::span<const std::uint32_t> args, std::size_t k) { return args[k]; }

/// Calls f(a, b) for every ordered split target = a + b with a in the p^n box
/// and b a sum of `rest_parts` box exponents.
template <class F>
void for_each_split(const MultiIndex& target, std::uint32_t p, F&& f, int rest_parts = 1) {
  const std::size_t n = target.size();
  const int top = static_cast<int>(p) - 1;
  for (std::size_t i = 0; i < n; ++i)
    if (target[i] < 0 || target[i] > (rest_parts + 1) * top) return;
  MultiIndex a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, std::max(0, target[i] - rest_parts * top));
  const MultiIndex lo = a;
  while (true) {
    f(a, target - a);
    std::size_t i = n;
    while (i-- > 0) {
      int hi = std::min(target[i], static_cast<int>(p) - 1);
      if (a[i] < hi) {
        a.add_at(i, 1);
        break;
      }
      a.set(i, lo[i]);
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

/// Sorted index pairs whose exponents sum to target.
void pairs_with_sum(const LieAlgebraModel& g, const MultiIndex& target, const TupleSink& sink) {
  for_each_split(target, g.p(), [&](const MultiIndex& a, const MultiIndex& b) {
    auto x = g.index_of(a);
    auto y = g.index_of(b);
    if (x && y && *x < *y) {
      Tuple t;
      t.size = 2;
      t.items[0] = *x;
      t.items[1] = *y;
      sink(t);
    }
  });
}

/// Sorted index triples whose exponents sum to target.
void triples_with_sum(const LieAlgebraModel& g, const MultiIndex& target, const TupleSink& sink) {
  for_each_split(target, g.p(), [&](const MultiIndex& a, const MultiIndex& rest) {
    auto x = g.index_of(a);
    if (!x) return;
    for_each_split(rest, g.p(), [&](const MultiIndex& b, const MultiIndex& c) {
      auto y = g.index_of(b);
      if (!y || *y <= *x) return;
      auto z = g.index_of(c);
      if (!z || *z <= *y) return;
      Tuple t;
      t.size = 3;
      t.items = {*x, *y, *z, 0};
      sink(t);
    });
  }, 2);
}

ModulePtr adjoint(const ModelPtr& g) { return CoefficientModule::make(g, ModuleKind::Adjoint); }
ModulePtr ambient(const ModelPtr& g) { return CoefficientModule::make(g, ModuleKind::Ambient); }
ModulePtr trivial(const ModelPtr& g) { return CoefficientModule::make(g, ModuleKind::Trivial); }

SparseVector scalar(const PrimeField& f, std::int64_t v) {
  Residue r = f.reduce(v);
  return r ? SparseVector{{0, r}} : SparseVector{};
}

}  // namespace

Cochain tabulate(const NamedCochain& c) {
  Cochain out(c.model, c.module, c.arity);
  auto record = [&](const Tuple& t) {
    SparseVector v = c.evaluate(t.view());
    if (!v.empty()) out.add(t.view(), v);
  };
  if (c.support) {
    c.support(record);
    return out;
  }
  const std::uint32_t d = static_cast<std::uint32_t>(c.model->dim());
  Tuple t;
  t.size = static_cast<std::uint8_t>(c.arity);
  switch (c.arity) {
    case 0:
      record(t);
      break;
    case 1:
      for (std::uint32_t x = 0; x < d; ++x) {
        t.items[0] = x;
        record(t);
      }
      break;
    case 2:
      for (std::uint32_t x = 0; x < d; ++x)
        for (std::uint32_t y = x + 1; y < d; ++y) {
          t.items[0] = x;
          t.items[1] = y;
          record(t);
        }
      break;
    case 3:
      for (std::uint32_t x = 0; x < d; ++x)
        for (std::uint32_t y = x + 1; y < d; ++y)
          for (std::uint32_t z = y + 1; z < d; ++z) {
            t.items = {x, y, z, 0};
            record(t);
          }
      break;
    default:
      throw std::domain_error("tabulate: unsupported arity");
  }
  return out;
}

NamedCochain squaring(ModelPtr g, const SparseVector& gamma, std::string label) {
  const auto& f = g->field();
  const std::uint32_t p = g->p();
  // ad(gamma)^j (x) for every basis x and 1 <= j <= p-1
  auto chains = std::make_shared<std::vector<std::vector<SparseVector>>>(g->dim());
  for (std::uint32_t x = 0; x < g->dim(); ++x) {
    auto& chain = (*chains)[x];
    chain.resize(p);
    chain[0] = {{x, 1}};
    for (std::uint32_t j = 1; j < p; ++j) chain[j] = g->bracket(gamma, chain[j - 1]);
  }
  std::vector<Residue> weights(p, 0);
  for (std::uint32_t i = 1; i < p; ++i) {
    Residue fact_i = 1, fact_pi = 1;
    for (std::uint32_t k = 2; k <= i; ++k) fact_i = f.mul(fact_i, k);
    for (std::uint32_t k = 2; k <= p - i; ++k) fact_pi = f.mul(fact_pi, k);
    weights[i] = f.inv(f.mul(fact_i, fact_pi));
  }
  NamedCochain c;
  c.name = "Sq(" + label + ")";
  c.arity = 2;
  c.module = adjoint(g);
  c.model = g;
  c.evaluate = [g, chains, weights](std::span<const std::uint32_t> args) {
    const auto& f = g->field();
    const std::uint32_t p = g->p();
    if (args.size() != 2) throw std::domain_error("Sq takes two arguments");
    const auto& cx = (*chains)[args[0]];
    const auto& cy = (*chains)[args[1]];
    std::vector<Residue> acc(g->dim(), 0);
    bool any = false;
    for (std::uint32_t i = 1; i < p; ++i) {
      if (cx[i].empty() || cy[p - i].empty()) continue;
      for (const auto& a : cx[i])
        for (const auto& b : cy[p - i]) {
          Residue k = f.mul(f.mul(a.value, b.value), weights[i]);
          for (const auto& e : g->bracket(a.index, b.index)) {
            acc[e.index] = f.mul_add(e.value, k, acc[e.index]);
            any = true;
          }
        }
    }
    return any ? to_sparse(acc) : SparseVector{};
  };
  return c;
}

NamedCochain squaring(ModelPtr g, const MultiIndex& a) {
  auto idx = g->index_of(a);
  if (!idx) throw std::domain_error("Sq: x^(" + to_string(a) + ") is not a basis element of " + g->name());
  std::string label = to_string(Polynomial::monomial(g->context(), a));
  return squaring(std::move(g), SparseVector{{*idx, 1}}, label);
}

NamedCochain pi_ij(ModelPtr g, std::size_t i1, std::size_t j1) {
  require_hamiltonian(*g, "Pi_ij");
  const std::size_t m = g->pairs();
  std::size_t i = coordinate(*g, i1, "Pi_ij"), j = coordinate(*g, j1, "Pi_ij");
  if (j == i || j == conjugate_index(i, m))
    throw std::domain_error("Pi_ij needs j different from i and i' (use PiC for the conjugate pair)");
  NamedCochain c;
  c.name = "Pi_" + std::to_string(i1) + "," + std::to_string(j1);
  c.model = g;
  c.module = adjoint(g);
  const std::size_t ic = conjugate_index(i, m), jc = conjugate_index(j, m);
  c.evaluate = [g, module = c.module, i, j, ic, jc](std::span<const std::uint32_t> args) {
    const auto& a = g->element(arg_index(args, 0));
    const auto& b = g->element(arg_index(args, 1));
    std::int64_t coeff = static_cast<std::int64_t>(a[i]) * b[j] - static_cast<std::int64_t>(a[j]) * b[i];
    if (g->field().reduce(coeff) == 0) return SparseVector{};
    MultiIndex e = a + b;
    e.add_at(i, -1);
    e.add_at(j, -1);
    const int top = static_cast<int>(g->p()) - 1;
    e.add_at(ic, top);
    e.add_at(jc, top);
    return monomial_value(*module, e, g->field().reduce(coeff));
  };
  return c;
}

namespace {

/// x^c = x_i x^a and x^d = x_i' x^b with a, b vanishing at i and i'; returns a + b.
std::optional<MultiIndex> conjugate_split(const MultiIndex& c, const MultiIndex& d, std::size_t i, std::size_t ic) {
  if (c[i] != 1 || c[ic] != 0 || d[i] != 0 || d[ic] != 1) return std::nullopt;
  MultiIndex s = c + d;
  s.add_at(i, -1);
  s.add_at(ic, -1);
  return s;
}

}  // namespace

NamedCochain pi_conjugate(ModelPtr g, std::size_t i1) {
  require_hamiltonian(*g, "PiC");
  const std::size_t m = g->pairs();
  std::size_t i = coordinate(*g, i1, "PiC");
  if (i >= m) i -= m;
  const std::size_t ic = i + m;
  NamedCochain c;
  c.name = "PiC_" + std::to_string(i + 1);
  c.model = g;
  c.module = ambient(g);
  c.note = "values in H'(n)";
  c.evaluate = [g, module = c.module, i, ic](std::span<const std::uint32_t> args) {
    const auto& x = g->element(arg_index(args, 0));
    const auto& y = g->element(arg_index(args, 1));
    const int top = static_cast<int>(g->p()) - 1;
    const MultiIndex bound = g->sigma_pair(i);
    auto value = [&](const MultiIndex& c1, const MultiIndex& d1) -> std::optional<MultiIndex> {
      auto s = conjugate_split(c1, d1, i, ic);
      if (!s || !leq(*s, bound)) return std::nullopt;
      s->add_at(i, top);
      s->add_at(ic, top);
      return s;
    };
    if (auto e = value(x, y)) return monomial_value(*module, *e, 1);
    if (auto e = value(y, x)) return monomial_value(*module, *e, g->field().neg(1));
    return SparseVector{};
  };
  return c;
}

NamedCochain pi_i(ModelPtr g, std::size_t i1) {
  require_hamiltonian(*g, "Pi_i");
  const std::size_t m = g->pairs();
  if (g->n() < 4) throw std::domain_error("Pi_i is only defined for n >= 4");
  std::size_t i = coordinate(*g, i1, "Pi_i");
  if (i >= m) throw std::domain_error("Pi_i: i must be at most m");
  const std::size_t ic = i + m;
  NamedCochain c;
  c.name = "Pi_" + std::to_string(i1);
  c.model = g;
  c.module = adjoint(g);
  c.evaluate = [g, module = c.module, i, ic, m](std::span<const std::uint32_t> args) {
    const auto& x = g->element(arg_index(args, 0));
    const auto& y = g->element(arg_index(args, 1));
    const auto& f = g->field();
    const int top = static_cast<int>(g->p()) - 1;
    const MultiIndex bound = g->sigma_pair(i);
    auto generic = [&](const MultiIndex& c1, const MultiIndex& d1) -> std::optional<MultiIndex> {
      auto s = conjugate_split(c1, d1, i, ic);
      if (!s || !leq(*s, bound) || *s == bound) return std::nullopt;
      s->add_at(i, top);
      s->add_at(ic, top);
      return s;
    };
    // Pi_i(x_k, x^{sigma^i}) = -sigma(k) x^{sigma - eps_k'}
    auto boundary = [&](const MultiIndex& c1, const MultiIndex& d1) -> SparseVector {
      if (d1 != bound || c1.degree() != 1) return {};
      std::size_t k = 0;
      while (c1[k] == 0) ++k;
      MultiIndex e = g->sigma();
      e.add_at(conjugate_index(k, m), -1);
      return monomial_value(*module, e, f.reduce(-index_sign(k, m)));
    };
    SparseVector out;
    if (auto e = generic(x, y)) append(out, monomial_value(*module, *e, 1));
    if (auto e = generic(y, x)) append(out, monomial_value(*module, *e, f.neg(1)));
    append(out, boundary(x, y));
    append(out, sparse_scale(f, boundary(y, x), f.neg(1)));
    return merge(f, std::move(out));
  };
  return c;
}

NamedCochain coboundary_g(ModelPtr g, std::size_t i1) {
  require_hamiltonian(*g, "g_i");
  if (g->n() < 4) throw std::domain_error("g_i is only defined for n >= 4");
  std::size_t i = coordinate(*g, i1, "g_i");
  if (i >= g->pairs()) throw std::domain_error("g_i: i must be at most m");
  NamedCochain c;
  c.name = "g_" + std::to_string(i1);
  c.arity = 1;
  c.model = g;
  c.module = ambient(g);
  auto source = g->index_of(g->sigma_pair(i));
  if (!source) throw std::logic_error("x^{sigma^i} missing from the basis");
  c.evaluate = [module = c.module, src = *source, sigma = g->sigma()](std::span<const std::uint32_t> args) {
    if (args[0] != src) return SparseVector{};
    return monomial_value(*module, sigma, 1);
  };
  return c;
}

std::string_view phi_exponent_name(PhiExponent e) {
  return e == PhiExponent::Printed ? "a+conj(b)-delta-conj(delta)" : "a+b-delta-conj(delta)";
}

NamedCochain phi(ModelPtr g, PhiExponent exponent) {
  require_hamiltonian(*g, "Phi");
  NamedCochain c;
  c.name = exponent == PhiExponent::Printed ? "Phi[printed]" : "Phi";
  c.model = g;
  c.module = ambient(g);
  c.note = std::string("exponent ") + std::string(phi_exponent_name(exponent));
  c.evaluate = [g, module = c.module, exponent](std::span<const std::uint32_t> args) {
    const auto& a = g->element(arg_index(args, 0));
    const auto& b = g->element(arg_index(args, 1));
    const auto& f = g->field();
    const std::size_t n = g->n(), m = g->pairs();
    const MultiIndex bhat = conjugate(b, m);
    MultiIndex cap(n);
    int room = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cap.set(k, std::min(a[k], bhat[k]));
      room += cap[k];
    }
    if (room < 3) return SparseVector{};
    SparseVector out;
    MultiIndex delta(n);
    // every delta <= cap with |delta| = 3
    auto visit = [&](auto&& self, std::size_t k, int left) -> void {
      if (k == n) {
        if (left != 0) return;
        const MultiIndex dhat = conjugate(delta, m);
        Residue coeff = f.mul(f.mul(binom(a, delta, f), binom(b, dhat, f)), f.mul(sign_of(delta, f), factorial(delta, f)));
        if (coeff == 0) return;
        MultiIndex e = (exponent == PhiExponent::Printed ? a + bhat : a + b) - delta - dhat;
        for (std::size_t q = 0; q < n; ++q)
          if (e[q] < 0) return;
        append(out, monomial_value(*module, e, coeff));
        return;
      }
      for (int v = 0; v <= std::min(left, cap[k]); ++v) {
        delta.set(k, v);
        self(self, k + 1, left - v);
      }
      delta.set(k, 0);
    };
    visit(visit, 0, 3);
    return merge(f, std::move(out));
  };
  return c;
}

std::string PhiSelection::summary() const {
  std::string s = "printed exponent a+conj(b)-delta-conj(delta): ";
  s += printed_is_cocycle ? "cocycle" : "not a cocycle";
  s += "; exponent a+b-delta-conj(delta): ";
  s += sum_is_cocycle ? "cocycle" : "not a cocycle";
  s += selected ? "; selected " + std::string(phi_exponent_name(*selected)) : "; none selected";
  return s;
}

PhiSelection select_phi(const ModelPtr& g) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::size_t>, PhiSelection> cache;
  const auto key = std::make_pair(g->p(), g->n());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  PhiSelection sel;
  auto printed = check_cocycle(tabulate(phi(g, PhiExponent::Printed)));
  auto sum = check_cocycle(tabulate(phi(g, PhiExponent::Sum)));
  sel.printed_is_cocycle = printed.is_cocycle;
  sel.printed_witness = printed.witness;
  sel.sum_is_cocycle = sum.is_cocycle;
  sel.sum_witness = sum.witness;
  if (sel.printed_is_cocycle)
    sel.selected = PhiExponent::Printed;
  else if (sel.sum_is_cocycle)
    sel.selected = PhiExponent::Sum;
  std::lock_guard lock(mutex);
  cache.emplace(key, sel);
  return sel;
}

NamedCochain omega(ModelPtr g, std::size_t i1) {
  require_hamiltonian(*g, "Omega_i");
  const std::size_t m = g->pairs();
  std::size_t i = coordinate(*g, i1, "Omega_i");
  MultiIndex target = g->sigma();
  target.add_at(i, 1);
  target.add_at(conjugate_index(i, m), -(static_cast<int>(g->p()) - 1));
  NamedCochain c;
  c.name = "Omega_" + std::to_string(i1);
  c.model = g;
  c.module = trivial(g);
  c.evaluate = [g, i, target](std::span<const std::uint32_t> args) {
    const auto& a = g->element(args[0]);
    const auto& b = g->element(args[1]);
    if (a + b != target) return SparseVector{};
    return scalar(g->field(), a[i]);
  };
  c.support = [g, target](const TupleSink& sink) { pairs_with_sum(*g, target, sink); };
  return c;
}

NamedCochain sigma_cochain(ModelPtr g) {
  require_hamiltonian(*g, "Sigma");
  const std::size_t m = g->pairs(), n = g->n();
  NamedCochain c;
  c.name = "Sigma";
  c.model = g;
  c.module = trivial(g);
  c.evaluate = [g, m, n](std::span<const std::uint32_t> args) {
    const auto& a = g->element(args[0]);
    const auto& b = g->element(args[1]);
    if (a.degree() != 1 || b.degree() != 1) return SparseVector{};
    std::size_t k = 0;
    while (k < n && a[k] == 0) ++k;
    if (b[conjugate_index(k, m)] != 1) return SparseVector{};
    return scalar(g->field(), index_sign(k, m));
  };
  c.support = [g, m](const TupleSink& sink) {
    for (std::size_t k = 0; k < m; ++k) {
      MultiIndex target = MultiIndex::unit(g->n(), k) + MultiIndex::unit(g->n(), k + m);
      pairs_with_sum(*g, target, sink);
    }
  };
  return c;
}

NamedCochain delta_cochain(ModelPtr g) {
  require_hamiltonian(*g, "Delta");
  NamedCochain c;
  c.name = "Delta";
  c.model = g;
  c.module = trivial(g);
  const MultiIndex target = g->sigma();
  c.evaluate = [g, target](std::span<const std::uint32_t> args) {
    const auto& a = g->element(args[0]);
    const auto& b = g->element(args[1]);
    if (a + b != target) return SparseVector{};
    return scalar(g->field(), g->degree(a));
  };
  c.support = [g, target](const TupleSink& sink) { pairs_with_sum(*g, target, sink); };
  std::int64_t n = static_cast<std::int64_t>(g->n());
  if (g->field().reduce(n + 4) != 0) c.note = "not alternating: n != -4 mod p";
  return c;
}

NamedCochain gamma_ij(ModelPtr g, std::size_t i1, std::size_t j1) {
  require_hamiltonian(*g, "Gamma_ij");
  const std::size_t m = g->pairs();
  if (g->n() < 4) throw std::domain_error("Gamma_ij needs n >= 4");
  std::size_t i = coordinate(*g, i1, "Gamma_ij"), j = coordinate(*g, j1, "Gamma_ij");
  if (j == i || j == conjugate_index(i, m)) throw std::domain_error("Gamma_ij needs j different from i and i'");
  const int top = static_cast<int>(g->p()) - 1;
  MultiIndex target = g->sigma();
  target.add_at(conjugate_index(i, m), -top);
  target.add_at(conjugate_index(j, m), -top);
  target.add_at(i, 1);
  target.add_at(j, 1);
  NamedCochain c;
  c.name = "Gamma_" + std::to_string(i1) + "," + std::to_string(j1);
  c.arity = 3;
  c.model = g;
  c.module = trivial(g);
  c.evaluate = [g, i, j, target](std::span<const std::uint32_t> args) {
    const auto& a = g->element(args[0]);
    const auto& b = g->element(args[1]);
    const auto& cc = g->element(args[2]);
    if (a + b + cc != target) return SparseVector{};
    return scalar(g->field(), static_cast<std::int64_t>(a[i]) * b[j] - static_cast<std::int64_t>(a[j]) * b[i]);
  };
  c.support = [g, target](const TupleSink& sink) { triples_with_sum(*g, target, sink); };
  return c;
}

namespace {

NamedCochain xi_like(ModelPtr g, std::string name, std::optional<std::size_t> shifted) {
  const std::size_t m = g->pairs(), n = g->n();
  std::vector<std::pair<std::size_t, MultiIndex>> targets;
  for (std::size_t k = 0; k < m; ++k) {
    MultiIndex t = g->sigma();
    t.add_at(k, 1);
    t.add_at(k + m, 1);
    if (shifted) t.add_at(*shifted, static_cast<int>(g->p()));
    targets.emplace_back(k, t);
  }
  NamedCochain c;
  c.name = std::move(name);
  c.arity = 3;
  c.model = g;
  c.module = trivial(g);
  c.evaluate = [g, targets, m, n](std::span<const std::uint32_t> args) {
    const auto& a = g->element(args[0]);
    const auto& b = g->element(args[1]);
    const MultiIndex s = a + b + g->element(args[2]);
    for (const auto& [k, t] : targets)
      if (s == t) {
        std::int64_t v = static_cast<std::int64_t>(a[k]) * b[k + m] - static_cast<std::int64_t>(a[k + m]) * b[k];
        return scalar(g->field(), index_sign(k, m) * v);
      }
    (void)n;
    return SparseVector{};
  };
  c.support = [g, targets](const TupleSink& sink) {
    for (const auto& [k, t] : targets) triples_with_sum(*g, t, sink);
  };
  return c;
}

}  // namespace

NamedCochain xi(ModelPtr g) {
  require_hamiltonian(*g, "Xi");
  if (g->field().reduce(static_cast<std::int64_t>(g->n()) + 4) != 0)
    throw std::domain_error("Xi requires n = -4 mod p (got n = " + std::to_string(g->n()) +
                            ", p = " + std::to_string(g->p()) + ")");
  return xi_like(std::move(g), "Xi", std::nullopt);
}

NamedCochain upsilon(ModelPtr g, std::size_t i1) {
  require_hamiltonian(*g, "Upsilon_i");
  std::size_t i = coordinate(*g, i1, "Upsilon_i");
  auto c = xi_like(g, "Upsilon_" + std::to_string(i1), i);
  c.experimental = true;
  c.note = "experimental: cocycle property is reported, not asserted";
  return c;
}

namespace {

std::vector<std::size_t> parse_indices(std::string_view text, std::string_view name) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    auto part = text.substr(pos, end - pos);
    if (part.empty()) throw std::invalid_argument(std::string(name) + ": expected comma-separated indices");
    std::size_t v = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') throw std::invalid_argument(std::string(name) + ": bad index '" + std::string(part) + "'");
      v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

NamedCochain named_cochain(std::string_view spec, const ModelPtr& g, bool experimental) {
  auto colon = spec.find(':');
  std::string_view head = spec.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto indices = [&](std::size_t count) {
    auto v = parse_indices(arg, head);
    if (v.size() != count)
      throw std::invalid_argument(std::string(head) + " expects " + std::to_string(count) + " index(es)");
    return v;
  };
  if (head == "Sq") {
    if (arg.empty()) throw std::invalid_argument("Sq expects a monomial, e.g. Sq:x1 or Sq:1");
    Polynomial f = parse_polynomial(g->context(), arg);
    if (f.terms().size() == 1 && f.terms().begin()->second == 1) return squaring(g, f.terms().begin()->first);
    return squaring(g, g->from_polynomial(f), to_string(f));
  }
  if (head == "Pi") {
    auto v = indices(2);
    return pi_ij(g, v[0], v[1]);
  }
  if (head == "PiC") return pi_conjugate(g, indices(1)[0]);
  if (head == "PiI") return pi_i(g, indices(1)[0]);
  if (head == "g") return coboundary_g(g, indices(1)[0]);
  if (head == "Phi") {
    auto sel = select_phi(g);
    if (!sel.selected) throw std::runtime_error("neither Phi exponent gives a cocycle: " + sel.summary());
    auto c = phi(g, *sel.selected);
    c.note = sel.summary();
    return c;
  }
  if (head == "PhiPrinted") return phi(g, PhiExponent::Printed);
  if (head == "Omega") return omega(g, indices(1)[0]);
  if (head == "Sigma") return sigma_cochain(g);
  if (head == "Delta") return delta_cochain(g);
  if (head == "Gamma") {
    auto v = indices(2);
    return gamma_ij(g, v[0], v[1]);
  }
  if (head == "Xi") return xi(g);
  if (head == "Upsilon") {
    if (!experimental) throw std::invalid_argument("Upsilon is experimental; pass --experimental");
    return upsilon(g, indices(1)[0]);
  }
  throw std::invalid_argument("unknown cochain '" + std::string(spec) +
                              "' (expected Sq:<monomial>, Pi:<i>,<j>, PiC:<i>, PiI:<i>, g:<i>, Phi, Omega:<i>, "
                              "Sigma, Delta, Gamma:<i>,<j>, Xi or Upsilon:<i>)");
}

}  // namespace cartan
