#include <random>

#include "cartan/lie_algebra.hpp"
#include "cartan/module.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cartan;

namespace {

std::vector<int> exps(const MultiIndex& a) {
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i];
  return e;
}

oracle::Poly to_oracle(const Polynomial& f) {
  oracle::Poly out;
  for (const auto& [a, c] : f.terms()) out[exps(a)] = c;
  return out;
}

// the oracle bracket with the monomials absent from the model removed
oracle::Poly oracle_bracket(const LieAlgebraModel& g, std::uint32_t i, std::uint32_t j) {
  const auto a = exps(g.element(i)), b = exps(g.element(j));
  oracle::Poly r = g.contact() ? oracle::contact_bracket(a, b, g.p()) : oracle::hamiltonian(oracle::monomial(a), oracle::monomial(b), g.pairs(), g.p());
  if (!g.contact()) r.erase(std::vector<int>(g.n(), 0));
  return r;
}

SparseVector basis_vector(std::uint32_t i) { return {{i, 1}}; }

std::uint32_t idx(const LieAlgebraModel& g, std::initializer_list<int> a) {
  auto i = g.index_of(MultiIndex(a));
  REQUIRE(i);
  return *i;
}

}  // namespace

TEST_CASE("basis sizes") {
  CHECK(LieAlgebraModel(Family::K, 5, 3).dim() == 125);
  CHECK(LieAlgebraModel(Family::H, 5, 2).dim() == 23);
  CHECK(LieAlgebraModel(Family::K, 5, 7).dim() == 78124);
  CHECK(LieAlgebraModel(Family::Kprime, 5, 7).dim() == 78125);
  CHECK(LieAlgebraModel(Family::Hprime, 5, 2).dim() == 24);
  CHECK(LieAlgebraModel(Family::H, 7, 2).dim() == 47);
  CHECK_THROWS_AS(LieAlgebraModel(Family::K, 5, 4), std::domain_error);
  CHECK_THROWS_AS(LieAlgebraModel(Family::H, 5, 3), std::domain_error);
  CHECK_THROWS_AS(LieAlgebraModel(Family::K, 4, 3), std::domain_error);
  CHECK(LieAlgebraModel(Family::H, 5, 2).name() == "H(2)@p=5");
}

TEST_CASE("bracket examples") {
  auto k = LieAlgebraModel::make(Family::K, 5, 3);
  auto x3 = idx(*k, {0, 0, 1}), x1 = idx(*k, {1, 0, 0}), one = idx(*k, {0, 0, 0}), x1x3 = idx(*k, {1, 0, 1});
  CHECK(k->bracket(x3, x1) == SparseVector{{x1, 4}});
  CHECK(k->bracket(x1x3, one) == SparseVector{{x1, 3}});
  CHECK(k->bracket(one, one).empty());
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  CHECK(to_string(h->to_polynomial(h->bracket(idx(*h, {2, 0}), idx(*h, {0, 2})))) == "4*x1*x2");
  CHECK(h->bracket(idx(*h, {1, 0}), idx(*h, {0, 1})).empty());  // the constant dies
}

TEST_CASE("every bracket agrees with the polynomial oracle") {
  for (auto g : {LieAlgebraModel::make(Family::H, 5, 2), LieAlgebraModel::make(Family::K, 5, 3),
                 LieAlgebraModel::make(Family::H, 7, 2), LieAlgebraModel::make(Family::Hprime, 5, 2)}) {
    CAPTURE(g->name());
    std::size_t mismatches = 0;
    for (std::uint32_t i = 0; i < g->dim(); ++i)
      for (std::uint32_t j = 0; j < g->dim(); ++j)
        if (to_oracle(g->to_polynomial(g->bracket(i, j))) != oracle_bracket(*g, i, j)) ++mismatches;
    CHECK(mismatches == 0);
  }
}

TEST_CASE("structure laws hold on all basis triples") {
  for (auto g : {LieAlgebraModel::make(Family::H, 5, 2), LieAlgebraModel::make(Family::K, 5, 3)}) {
    CAPTURE(g->name());
    const auto& f = g->field();
    std::size_t bad_antisym = 0, bad_grading = 0, bad_weight = 0, bad_jacobi = 0;
    for (std::uint32_t i = 0; i < g->dim(); ++i)
      for (std::uint32_t j = 0; j < g->dim(); ++j) {
        auto v = g->bracket(i, j);
        if (v != sparse_scale(f, g->bracket(j, i), f.neg(1))) ++bad_antisym;
        for (const auto& e : v) {
          if (g->degree_of(e.index) != g->degree_of(i) + g->degree_of(j)) ++bad_grading;
          for (std::size_t c = 0; c < g->weight_components(); ++c)
            if (g->weight_vec_of(e.index)[c] != f.add(g->weight_vec_of(i)[c], g->weight_vec_of(j)[c])) ++bad_weight;
        }
      }
    for (std::uint32_t i = 0; i < g->dim(); ++i)
      for (std::uint32_t j = i + 1; j < g->dim(); ++j)
        for (std::uint32_t l = j + 1; l < g->dim(); ++l) {
          auto x = basis_vector(i), y = basis_vector(j), z = basis_vector(l);
          auto s = sparse_axpy(f, g->bracket(x, g->bracket(y, z)), 1, g->bracket(y, g->bracket(z, x)));
          s = sparse_axpy(f, s, 1, g->bracket(z, g->bracket(x, y)));
          if (!s.empty()) ++bad_jacobi;
        }
    CHECK(bad_antisym == 0);
    CHECK(bad_grading == 0);
    CHECK(bad_weight == 0);
    CHECK(bad_jacobi == 0);
  }
}

TEST_CASE("x^tau never appears in K(7) at p = 5") {
  // m + 2 = 5, so x^tau is not in K(7); probe pairs whose exponents sum to tau plus a unit of the bracket
  auto g = LieAlgebraModel::make(Family::K, 5, 7);
  REQUIRE_FALSE(g->index_of(g->tau()));
  std::mt19937_64 rng(99);
  const auto tau = g->tau();
  std::size_t probes = 0;
  for (std::size_t shift = 0; shift <= g->pairs(); ++shift) {
    MultiIndex target = tau;
    if (shift < g->pairs()) {
      target.add_at(shift, 1);
      target.add_at(shift + g->pairs(), 1);
    } else {
      target.add_at(g->n() - 1, 1);
    }
    for (int trial = 0; trial < 400; ++trial) {
      MultiIndex a(g->n());
      for (std::size_t c = 0; c < g->n(); ++c) {
        int lo = std::max(0, target[c] - 4), hi = std::min(4, target[c]);
        a.set(c, lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
      }
      MultiIndex b = target - a;
      auto i = g->index_of(a), j = g->index_of(b);
      if (!i || !j) continue;
      ++probes;
      CHECK_NOTHROW(g->bracket(*i, *j));
    }
  }
  CHECK(probes > 1000);
}

TEST_CASE("degrees and weights") {
  auto k = LieAlgebraModel::make(Family::K, 5, 3);
  CHECK(k->degree(MultiIndex(3)) == -2);
  CHECK(k->degree(k->tau()) == 14);
  CHECK(k->weight(MultiIndex({1, 1, 0})).is_zero());
  CHECK(k->weight(MultiIndex({0, 0, 1})).is_zero());
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  CHECK(h->degree(MultiIndex({1, 0})) == -1);
  CHECK(h->weight(MultiIndex({2, 0})).components == std::vector<Residue>{3});
  CHECK(h->lowest_degree() == -1);
  CHECK(h->highest_degree() == 5);
}

TEST_CASE("Cartan decomposition") {
  auto k = LieAlgebraModel::make(Family::K, 5, 3);
  auto dk = k->cartan_decomposition();
  CHECK(dk.at(Weight{{0, 0}}) == 5);
  for (const auto& [w, d] : dk) CHECK(d == 5);
  CHECK(dk.size() == 25);
  auto dh = LieAlgebraModel::make(Family::H, 5, 2)->cartan_decomposition();
  CHECK(dh.at(Weight{{0}}) == 3);
  for (const auto& [w, d] : dh)
    if (!w.is_zero()) CHECK(d == 5);
}

TEST_CASE("graded components") {
  auto k = LieAlgebraModel::make(Family::K, 5, 3);
  CHECK(k->graded_component(0).size() == 4);
  CHECK(k->graded_component(-2).size() == 1);
  CHECK(k->graded_component(-1).size() == 2);
  CHECK(LieAlgebraModel::make(Family::H, 5, 2)->graded_component(0).size() == 3);
  auto trunc = k->truncated(0);
  CHECK(trunc->dim() == 125 - 3);
  CHECK(trunc->lowest_degree() == 0);
}

TEST_CASE("commutator spans") {
  auto k = LieAlgebraModel::make(Family::K, 5, 3);
  auto s = k->commutator_span(1, -2);
  CHECK(s.span_dim == 2);
  CHECK(s.fills_component());
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  for (int d = -1; d < h->highest_degree(); ++d) {
    CAPTURE(d);
    CHECK(h->commutator_span(1, d).fills_component());
  }
  CHECK(k->derived_dim() == 125);
  CHECK(h->derived_dim() == 23);
}

TEST_CASE("module actions") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto a2 = CoefficientModule::make(h, ModuleKind::TruncatedPolynomials);
  CHECK(a2->dim() == 25);
  auto v = a2->index_of(MultiIndex({0, 2}));
  REQUIRE(v);
  CHECK(to_string(a2->to_polynomial(a2->act(idx(*h, {2, 0}), *v))) == "4*x1*x2");

  auto kp = LieAlgebraModel::make(Family::K, 5, 3)->truncated(0);
  auto ch = CoefficientModule::make(kp, ModuleKind::Character);
  CHECK(ch->act(idx(*kp, {0, 0, 1}), 0) == SparseVector{{0, 3}});
  CHECK(ch->act(idx(*kp, {1, 1, 0}), 0).empty());

  auto triv = CoefficientModule::make(h, ModuleKind::Trivial);
  CHECK(triv->dim() == 1);
  CHECK(triv->act(0, 0).empty());
  CHECK(CoefficientModule::make(h, ModuleKind::Ambient)->dim() == 24);
}

TEST_CASE("module actions respect brackets") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto kp = LieAlgebraModel::make(Family::K, 5, 3)->truncated(0);
  std::vector<ModulePtr> modules{CoefficientModule::make(h, ModuleKind::Adjoint),
                                 CoefficientModule::make(h, ModuleKind::Ambient),
                                 CoefficientModule::make(h, ModuleKind::TruncatedPolynomials),
                                 CoefficientModule::make(kp, ModuleKind::Character),
                                 CoefficientModule::make(LieAlgebraModel::make(Family::K, 5, 3), ModuleKind::Adjoint)};
  for (const auto& m : modules) {
    const auto& g = *m->model();
    const auto& f = g.field();
    CAPTURE(g.name());
    CAPTURE(module_name(m->kind()));
    std::size_t bad = 0;
    const std::uint32_t limit = static_cast<std::uint32_t>(std::min<std::size_t>(g.dim(), 40));
    for (std::uint32_t x = 0; x < limit; ++x)
      for (std::uint32_t y = 0; y < g.dim(); ++y)
        for (std::uint32_t v = 0; v < m->dim(); ++v) {
          SparseVector lhs;
          for (const auto& e : g.bracket(x, y)) lhs = sparse_axpy(f, lhs, e.value, m->act(e.index, v));
          auto rhs = sparse_axpy(f, m->act(x, m->act(y, v)), f.neg(1), m->act(y, m->act(x, v)));
          if (lhs != rhs) ++bad;
        }
    CHECK(bad == 0);
  }
}

TEST_CASE("polynomial conversion") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto f = parse_polynomial(h->context(), "2*x1^2 + x1*x2^3");
  CHECK(h->to_polynomial(h->from_polynomial(f)) == f);
  CHECK_THROWS_AS(h->from_polynomial(Polynomial::monomial(h->context(), h->sigma())), std::domain_error);
  CHECK_THROWS_AS(h->from_polynomial(Polynomial::constant(h->context(), 1)), std::domain_error);
  CHECK(h->sigma_pair(0) == MultiIndex({0, 0}));
  CHECK(family_name(parse_family("K")) == "K");
}
