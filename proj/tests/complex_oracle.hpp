#pragma once

// Dense reference computations of Lie algebra cohomology with trivial
// coefficients. Only the model's bracket is used; cochain spaces,
// differentials and ranks are rebuilt here from the defining formulas.

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "cartan/lie_algebra.hpp"
#include "oracles.hpp"

namespace oracle {

using cartan::LieAlgebraModel;
using cartan::MultiIndex;

using Subset = std::vector<int>;

inline std::vector<Subset> subsets(const std::vector<int>& items, std::size_t k) {
  std::vector<Subset> out;
  Subset cur;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = s; i < items.size(); ++i) {
      cur.push_back(items[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// sorts in place; returns the permutation sign, 0 on a repeat
inline int sort_sign(Subset& a) {
  int s = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] == a[j]) return 0;
      if (a[i] > a[j]) {
        std::swap(a[i], a[j]);
        s = -s;
      }
    }
  return s;
}

// Dense matrix of d: C^k(q, F) -> C^{k+1}(q, F) for trivial coefficients,
// where q is a set of basis elements closed under brackets modulo the
// discarded ones: (dc)(t_0..t_k) = sum_{i<j} (-1)^{i+j} c([t_i,t_j], ...).
inline Dense trivial_d(const LieAlgebraModel& g, const std::vector<int>& keep, const std::vector<Subset>& src,
                        const std::vector<Subset>& dst) {
  std::map<Subset, std::size_t> col;
  for (std::size_t i = 0; i < src.size(); ++i) col[src[i]] = i;
  std::vector<bool> kept(g.dim(), false);
  for (int x : keep) kept[x] = true;
  const std::int64_t p = g.p();
  Dense d(dst.size(), std::vector<std::int64_t>(src.size(), 0));
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const auto& t = dst[r];
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        for (const auto& e : g.bracket(t[i], t[j])) {
          if (!kept[e.index]) continue;
          Subset a{static_cast<int>(e.index)};
          for (std::size_t l = 0; l < t.size(); ++l)
            if (l != i && l != j) a.push_back(t[l]);
          int s = sort_sign(a);
          if (!s) continue;
          auto it = col.find(a);
          if (it == col.end()) continue;
          auto& slot = d[r][it->second];
          slot = mod(slot + ((i + j) % 2 ? -1 : 1) * s * static_cast<std::int64_t>(e.value), p);
        }
  }
  return d;
}

inline std::size_t rank_of(const Dense& d, std::int64_t p) { return d.empty() || d[0].empty() ? 0 : dense_rank(d, p); }

// dim H^k(g, F) from dense matrices, one exponent-sum block at a time
// (one symplectic pair, so every bracket lowers the exponent sum by (1,1))
inline std::size_t trivial_cohomology(const LieAlgebraModel& g, std::size_t k) {
  if (g.pairs() != 1) throw std::invalid_argument("trivial_cohomology oracle needs one symplectic pair");
  std::vector<int> all(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) all[i] = static_cast<int>(i);
  auto key = [&](const Subset& t) {
    MultiIndex s(g.n());
    for (int x : t) s = s + g.element(x);
    for (std::size_t a = 0; a < g.pairs(); ++a) {
      s.add_at(a, -static_cast<int>(t.size()));
      s.add_at(a + g.pairs(), -static_cast<int>(t.size()));
    }
    return s;
  };
  auto blocks = [&](std::size_t arity) {
    std::map<MultiIndex, std::vector<Subset>> b;
    if (arity == 0) {
      b[key({})].push_back({});
      return b;
    }
    for (auto& t : subsets(all, arity)) b[key(t)].push_back(t);
    return b;
  };
  auto lower = k > 0 ? blocks(k - 1) : std::map<MultiIndex, std::vector<Subset>>{};
  auto mid = blocks(k), upper = blocks(k + 1);
  std::size_t h = 0;
  for (const auto& [s, src] : mid) {
    std::size_t rank_out = upper.count(s) ? rank_of(trivial_d(g, all, src, upper.at(s)), g.p()) : 0;
    std::size_t rank_in = lower.count(s) ? rank_of(trivial_d(g, all, lower.at(s), src), g.p()) : 0;
    h += src.size() - rank_out - rank_in;
  }
  return h;
}

// dim H^k(g, g_{-1}; F) by dense linear algebra: cochains on the degree >= 0
// part, invariant under g_{-1}
inline std::size_t relative_cohomology(const LieAlgebraModel& g, std::size_t k) {
  const std::int64_t p = g.p();
  std::vector<int> q, h;
  for (std::uint32_t i = 0; i < g.dim(); ++i) (g.degree_of(i) >= 0 ? q : h).push_back(static_cast<int>(i));
  auto invariance = [&](const std::vector<Subset>& ts) {
    std::map<Subset, std::size_t> col;
    for (std::size_t i = 0; i < ts.size(); ++i) col[ts[i]] = i;
    Dense rows;
    for (int x : h)
      for (const auto& s : ts) {
        std::vector<std::int64_t> row(ts.size(), 0);
        for (std::size_t i = 0; i < s.size(); ++i)
          for (const auto& e : g.bracket(x, s[i])) {
            Subset a = s;
            a[i] = static_cast<int>(e.index);
            int sg = sort_sign(a);
            auto it = col.find(a);
            if (!sg || it == col.end()) continue;
            row[it->second] = mod(row[it->second] - sg * static_cast<std::int64_t>(e.value), p);
          }
        rows.push_back(row);
      }
    return rows;
  };
  // Z^j = invariant cochains killed by d; B^j = d(invariant (j-1)-cochains)
  auto z_dim = [&](std::size_t j) {
    auto src = subsets(q, j);
    auto stacked = invariance(src);
    auto d = trivial_d(g, q, src, subsets(q, j + 1));
    stacked.insert(stacked.end(), d.begin(), d.end());
    return src.size() - rank_of(stacked, p);
  };
  auto inv_dim = [&](std::size_t j) {
    auto src = subsets(q, j);
    return src.size() - rank_of(invariance(src), p);
  };
  std::size_t z = z_dim(k);
  std::size_t b = k == 0 ? 0 : inv_dim(k - 1) - z_dim(k - 1);
  return z - b;
}

}  // namespace oracle
