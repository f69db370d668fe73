#include <cstdlib>
#include <functional>
#include <random>

#include "cartan/cocycles.hpp"
#include "cartan/cohomology.hpp"
#include "doctest.h"
#include "complex_oracle.hpp"

using namespace cartan;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

Cochain random_cochain(std::mt19937_64& rng, const CochainSpace& s, std::size_t terms) {
  SparseVector v;
  std::map<std::uint32_t, Residue> picked;
  const auto p = s.model()->p();
  for (std::size_t t = 0; t < terms; ++t)
    picked[static_cast<std::uint32_t>(rng() % s.dim())] = 1 + static_cast<Residue>(rng() % (p - 1));
  for (const auto& [i, c] : picked) v.push_back({i, c});
  return s.to_cochain(v);
}

CohomologyOptions with(CochainFilter f, Decomposition d) {
  CohomologyOptions o;
  o.filter = f;
  o.decomposition = d;
  o.representatives = false;
  return o;
}

}  // namespace

TEST_CASE("cochain space sizes") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  for (auto kind : {ModuleKind::Adjoint, ModuleKind::Trivial, ModuleKind::TruncatedPolynomials}) {
    auto m = CoefficientModule::make(h, kind);
    for (std::size_t k = 0; k <= 3; ++k) {
      CochainSpace s(h, m, k, CochainFilter::none());
      CHECK(s.dim() == binomial(h->dim(), k) * m->dim());
      CHECK(count_cochains(*h, *m, k, CochainFilter::none()) == s.dim());
    }
  }
}

TEST_CASE("filtered counts match a direct census") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto k3 = LieAlgebraModel::make(Family::K, 5, 3);
  auto check = [](const ModelPtr& g, const ModulePtr& m, std::size_t arity, const CochainFilter& f) {
    const auto& field = g->field();
    std::vector<int> all(g->dim());
    for (std::size_t i = 0; i < g->dim(); ++i) all[i] = static_cast<int>(i);
    std::uint64_t expected = 0;
    for (const auto& t : oracle::subsets(all, arity))
      for (std::uint32_t v = 0; v < m->dim(); ++v) {
        BlockKey b;
        b.weight = m->weight_of(v);
        b.degree = m->degree_of(v);
        for (int x : t) {
          for (std::size_t c = 0; c < g->weight_components(); ++c)
            b.weight[c] = static_cast<std::uint16_t>(field.sub(b.weight[c], g->weight_vec_of(x)[c]));
          b.degree -= g->degree_of(x);
        }
        bool ok = f.kind == CochainFilter::Kind::None ||
                  (std::all_of(b.weight.begin(), b.weight.end(), [](auto w) { return w == 0; }) &&
                   (f.kind != CochainFilter::Kind::WeightZeroDegree || b.degree == f.degree));
        expected += ok;
      }
    CHECK(count_cochains(*g, *m, arity, f) == expected);
    CHECK(CochainSpace(g, m, arity, f).dim() == expected);
  };
  check(h, CoefficientModule::make(h, ModuleKind::Adjoint), 2, CochainFilter::weight_zero());
  check(h, CoefficientModule::make(h, ModuleKind::Adjoint), 2, CochainFilter::weight_zero_degree(1));
  check(h, CoefficientModule::make(h, ModuleKind::Trivial), 3, CochainFilter::weight_zero());
  check(k3, CoefficientModule::make(k3, ModuleKind::Trivial), 3, CochainFilter::weight_zero());
  check(k3, CoefficientModule::make(k3, ModuleKind::Adjoint), 1, CochainFilter::weight_zero_degree(0));
  auto trunc = h->truncated(0);
  check(trunc, CoefficientModule::make(trunc, ModuleKind::Trivial), 2, CochainFilter::weight_zero());
}

TEST_CASE("low-degree differentials") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h, ModuleKind::Adjoint);
  auto d0 = differential_matrix(CochainSpace(h, adj, 0, CochainFilter::none()), CochainSpace(h, adj, 1, CochainFilter::none()));
  // the center, by dense elimination of the stacked ad maps
  oracle::Dense ad;
  for (std::uint32_t x = 0; x < h->dim(); ++x)
    for (std::uint32_t r = 0; r < h->dim(); ++r) {
      std::vector<std::int64_t> row(h->dim(), 0);
      for (std::uint32_t z = 0; z < h->dim(); ++z)
        for (const auto& e : h->bracket(x, z))
          if (e.index == r) row[z] = e.value;
      ad.push_back(row);
    }
  const std::size_t center = h->dim() - oracle::dense_rank(ad, 5);
  CHECK(center == 0);
  CHECK(rank(d0) == h->dim() - center);

  auto k3 = LieAlgebraModel::make(Family::K, 5, 3);
  auto triv = CoefficientModule::make(k3, ModuleKind::Trivial);
  auto d1 = differential_matrix(CochainSpace(k3, triv, 1, CochainFilter::none()), CochainSpace(k3, triv, 2, CochainFilter::none()));
  CHECK(kernel_basis(d1).empty());
}

TEST_CASE("d squares to zero") {
  std::mt19937_64 rng(12);
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  for (auto kind : {ModuleKind::Adjoint, ModuleKind::Trivial, ModuleKind::TruncatedPolynomials, ModuleKind::Ambient}) {
    auto m = CoefficientModule::make(h, kind);
    for (std::size_t k = 0; k <= 2; ++k) {
      CochainSpace s0(h, m, k, CochainFilter::none()), s1(h, m, k + 1, CochainFilter::none()), s2(h, m, k + 2, CochainFilter::none());
      auto a = differential_matrix(s0, s1), b = differential_matrix(s1, s2);
      for (int trial = 0; trial < 5; ++trial) {
        auto c = s0.coordinates(random_cochain(rng, s0, 6));
        CHECK(b.multiply(a.multiply(c)).empty());
      }
    }
  }
}

TEST_CASE("scatter and gather differentials agree") {
  std::mt19937_64 rng(21);
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  for (auto kind : {ModuleKind::Adjoint, ModuleKind::TruncatedPolynomials}) {
    auto m = CoefficientModule::make(h, kind);
    for (std::size_t k = 0; k <= 2; ++k) {
      CochainSpace s(h, m, k, CochainFilter::none()), t(h, m, k + 1, CochainFilter::none());
      auto dm = differential_matrix(s, t);
      for (int trial = 0; trial < 4; ++trial) {
        auto c = random_cochain(rng, s, 8);
        auto scattered = apply_differential(c);
        CHECK(t.coordinates(scattered) == dm.multiply(s.coordinates(c)));
        CochainEvaluator ev = [&](std::span<const std::uint32_t> args) { return c.evaluate(args); };
        std::size_t bad = 0;
        for (std::uint64_t key : t.keys()) {
          Tuple tu;
          std::uint32_t v;
          t.unpack(key, tu, v);
          if (v != 0) continue;
          if (differential_at(*h, *m, ev, tu.view()) != scattered.evaluate_sorted(tu)) ++bad;
        }
        CHECK(bad == 0);
      }
    }
  }
}

TEST_CASE("second cohomology examples") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  CHECK(cohomology(h, CoefficientModule::make(h, ModuleKind::Adjoint), 2).dimH == 3);
  CHECK(cohomology(h, CoefficientModule::make(h, ModuleKind::Trivial), 2).dimH == 3);
  CHECK(cohomology(h, CoefficientModule::make(h, ModuleKind::TruncatedPolynomials), 2).dimH == 6);
  auto t = h->truncated(0);
  CHECK(cohomology(t, CoefficientModule::make(t, ModuleKind::Trivial), 2).dimH == 5);
  auto k3 = LieAlgebraModel::make(Family::K, 5, 3);
  CHECK(cohomology(k3, CoefficientModule::make(k3, ModuleKind::Trivial), 1).dimH == 0);
}

TEST_CASE("trivial cohomology against dense elimination") {
  for (auto g : {LieAlgebraModel::make(Family::H, 5, 2), LieAlgebraModel::make(Family::H, 7, 2)}) {
    auto triv = CoefficientModule::make(g, ModuleKind::Trivial);
    for (std::size_t k = 0; k <= 3; ++k) {
      CAPTURE(g->name());
      CAPTURE(k);
      CHECK(cohomology(g, triv, k).dimH == oracle::trivial_cohomology(*g, k));
    }
  }
  // H^3 of H(2) at p = 5: two classes at exponent sums (5,10), (10,5) and one at (7,7)
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  MESSAGE("dim H^3(H(2), F) at p=5: " << cohomology(h, CoefficientModule::make(h, ModuleKind::Trivial), 3).dimH);
}

TEST_CASE("relative cohomology") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  CHECK(relative_cohomology(h, 0).dimH == 1);
  for (std::size_t k = 1; k <= 3; ++k) {
    CAPTURE(k);
    auto r = relative_cohomology(h, k);
    CHECK(r.dimH == oracle::relative_cohomology(*h, k));
    CHECK(r.dimZ >= r.dimB);
  }
  MESSAGE("dim H^3(H(2), H(2)_{-1}; F) at p=5: " << relative_cohomology(h, 3).dimH);
}

TEST_CASE("representatives are independent non-trivial cocycles") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  for (auto kind : {ModuleKind::Adjoint, ModuleKind::TruncatedPolynomials}) {
    auto r = cohomology(h, CoefficientModule::make(h, kind), 2);
    REQUIRE(r.representatives.size() == r.dimH);
    for (const auto& c : r.representatives) {
      CHECK(check_cocycle(c).is_cocycle);
      CHECK_FALSE(is_coboundary(c));
    }
    CHECK(classes_independent(r.representatives));
  }
}

TEST_CASE("coboundary preimages") {
  auto h2 = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h2, ModuleKind::Adjoint);
  auto zero = coboundary_preimage(Cochain(h2, adj, 2));
  REQUIRE(zero);
  CHECK(zero->is_zero());
  CHECK(check_cocycle(tabulate(squaring(h2, MultiIndex({1, 0})))).is_cocycle);
  CHECK_FALSE(is_coboundary(tabulate(squaring(h2, MultiIndex({1, 0})))));

  auto h4 = LieAlgebraModel::make(Family::H, 5, 4);
  auto g1 = tabulate(coboundary_g(h4, 1));
  auto dg = apply_differential(g1);
  auto pre = coboundary_preimage(dg);
  REQUIRE(pre);
  CHECK(apply_differential(*pre) == dg);

  // any coboundary is recognised
  std::mt19937_64 rng(2);
  CochainSpace s1(h2, adj, 1, CochainFilter::none());
  auto b = apply_differential(random_cochain(rng, s1, 10));
  CHECK(is_coboundary(b));

  auto k3 = LieAlgebraModel::make(Family::K, 5, 3);
  CHECK_FALSE(is_coboundary(tabulate(squaring(k3, MultiIndex(3)))));

  auto printed = tabulate(phi(h2, PhiExponent::Printed));
  CHECK_FALSE(check_cocycle(printed).is_cocycle);
  CHECK(check_cocycle(printed).witness.has_value());
  CHECK_THROWS_AS(coboundary_preimage(printed), std::domain_error);
}

TEST_CASE("class independence") {
  auto k3 = LieAlgebraModel::make(Family::K, 5, 3);
  std::vector<Cochain> ks{tabulate(squaring(k3, MultiIndex({1, 0, 0}))), tabulate(squaring(k3, MultiIndex({0, 1, 0}))),
                          tabulate(squaring(k3, MultiIndex(3)))};
  CHECK(classes_independent(ks));
  CHECK_FALSE(classes_independent({ks[0], ks[0]}));
  auto h2 = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h2, ModuleKind::Adjoint);
  std::vector<Cochain> hs{tabulate(squaring(h2, MultiIndex({1, 0}))), tabulate(squaring(h2, MultiIndex({0, 1}))),
                          tabulate(phi(h2, PhiExponent::Sum)).in_module(adj)};
  CHECK(classes_independent(hs));
  CHECK_THROWS_AS(classes_independent({hs[0], ks[0]}), std::domain_error);
}

TEST_CASE("filters and decompositions do not change the answer") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h, ModuleKind::Adjoint);
  auto full = cohomology(h, adj, 2, with(CochainFilter::none(), Decomposition::Monolithic));
  auto wz = cohomology(h, adj, 2, with(CochainFilter::weight_zero(), Decomposition::Monolithic));
  auto wzd = cohomology(h, adj, 2, with(CochainFilter::weight_zero(), Decomposition::ByDegree));
  auto blocks = cohomology(h, adj, 2, with(CochainFilter::none(), Decomposition::ByBlock));
  CHECK(full.dimH == 3);
  CHECK(wz.dimH == full.dimH);
  CHECK(wzd.dimH == full.dimH);
  CHECK(blocks.dimH == full.dimH);
  CHECK(blocks.dimC == full.dimC);
  std::size_t sum = 0;
  for (const auto& b : blocks.blocks) sum += b.dimH;
  CHECK(sum == full.dimH);

  auto triv = CoefficientModule::make(h, ModuleKind::Trivial);
  for (std::size_t k = 1; k <= 3; ++k) {
    auto a = cohomology(h, triv, k, with(CochainFilter::none(), Decomposition::Monolithic));
    auto b = cohomology(h, triv, k, with(CochainFilter::none(), Decomposition::ByDegree));
    CHECK(a.dimH == b.dimH);
    CHECK(a.dimZ == b.dimZ);
    CHECK(a.dimB == b.dimB);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h, ModuleKind::Adjoint);
  auto run = [&](std::size_t threads) {
    CohomologyOptions o;
    o.decomposition = Decomposition::ByBlock;
    o.limits.threads = threads;
    auto j = to_json(cohomology(h, adj, 2, o));
    j.erase("elapsed_ms");
    return j.dump();
  };
  CHECK(run(1) == run(3));
}

TEST_CASE("memory budget") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto adj = CoefficientModule::make(h, ModuleKind::Adjoint);
  CohomologyOptions o;
  o.limits.memory_budget = 1024;
  CHECK_THROWS_AS(cohomology(h, adj, 2, o), BudgetExceeded);
  CHECK(parse_memory_size("1G") == (1ull << 30));
  CHECK(parse_memory_size("512M") == 512ull << 20);
  CHECK(parse_memory_size("2KiB") == 2048);
  CHECK(parse_memory_size("1000") == 1000);
  CHECK_THROWS(parse_memory_size("lots"));
  ::setenv("CARTAN_MEMORY_BUDGET", "64M", 1);
  CHECK(default_memory_budget() == 64ull << 20);
  ::unsetenv("CARTAN_MEMORY_BUDGET");
  CHECK(default_memory_budget() == 1ull << 30);
}

TEST_CASE("report serialisation") {
  auto h = LieAlgebraModel::make(Family::H, 5, 2);
  auto r = cohomology(h, CoefficientModule::make(h, ModuleKind::Trivial), 2);
  auto j = to_json(r);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("dimH") == 3);
  CHECK(j.at("model") == "H(2)@p=5");
  CHECK(j.at("representatives").size() == 3);
}
