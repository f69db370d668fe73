#include "cartan/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace cartan {

namespace {

constexpr std::uint64_t kBytesPerNonzero = 48;
constexpr std::uint64_t kBytesPerCoordinate = 16;

WeightVec weight_sub(const WeightVec& a, const WeightVec& b, std::uint32_t p, std::size_t comps) {
  WeightVec r{};
  for (std::size_t i = 0; i < comps; ++i) r[i] = static_cast<std::uint16_t>((a[i] + p - b[i]) % p);
  return r;
}

WeightVec weight_add(const WeightVec& a, const WeightVec& b, std::uint32_t p, std::size_t comps) {
  WeightVec r{};
  for (std::size_t i = 0; i < comps; ++i) r[i] = static_cast<std::uint16_t>((a[i] + b[i]) % p);
  return r;
}

/// Mixed-radix packing parameters shared by spaces and enumeration.
struct Packing {
  std::uint64_t dim_g;
  std::uint64_t dim_m;
  std::size_t arity;

  Packing(std::size_t g, std::size_t m, std::size_t k) : dim_g(g), dim_m(m), arity(k) {
    long double bound = static_cast<long double>(m);
    for (std::size_t i = 0; i < k; ++i) bound *= static_cast<long double>(g);
    if (bound >= 9.2e18L) throw BudgetExceeded("cochain space too large to index, use filters");
  }
  std::uint64_t pack(const std::uint32_t* t, std::uint32_t v) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < arity; ++i) key = key * dim_g + t[i];
    return key * dim_m + v;
  }
  void unpack(std::uint64_t key, Tuple& t, std::uint32_t& v) const {
    v = static_cast<std::uint32_t>(key % dim_m);
    key /= dim_m;
    t = Tuple{};
    t.size = static_cast<std::uint8_t>(arity);
    for (std::size_t i = arity; i-- > 0;) {
      t.items[i] = static_cast<std::uint32_t>(key % dim_g);
      key /= dim_g;
    }
  }
};

/// Module basis grouped by weight, ascending within each bucket.
struct ModuleBuckets {
  std::map<WeightVec, std::vector<std::uint32_t>> by_weight;
  std::vector<std::uint32_t> all;
  explicit ModuleBuckets(const CoefficientModule& m) {
    for (std::uint32_t v = 0; v < m.dim(); ++v) {
      by_weight[m.weight_of(v)].push_back(v);
      all.push_back(v);
    }
  }
};

template <class Leaf>
void walk_tuples(const LieAlgebraModel& g, std::size_t arity, Leaf&& leaf) {
  const std::uint32_t p = g.p();
  const std::size_t comps = g.weight_components();
  std::array<std::uint32_t, kMaxArity> t{};
  std::array<WeightVec, kMaxArity + 1> wsum{};
  std::array<int, kMaxArity + 1> dsum{};
  auto rec = [&](auto&& self, std::size_t depth, std::uint32_t start) -> void {
    if (depth == arity) {
      leaf(t.data(), wsum[depth], dsum[depth]);
      return;
    }
    for (std::uint32_t x = start; x < g.dim(); ++x) {
      t[depth] = x;
      wsum[depth + 1] = weight_add(wsum[depth], g.weight_vec_of(x), p, comps);
      dsum[depth + 1] = dsum[depth] + g.degree_of(x);
      self(self, depth + 1, x + 1);
    }
  };
  rec(rec, 0, 0);
}

template <class F>
void enumerate_impl(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity, const CochainFilter& filter,
                    F&& f) {
  if (arity > kMaxArity) throw std::domain_error("cochain arity above 4 is not supported");
  Packing pk(g.dim(), m.dim(), arity);
  ModuleBuckets buckets(m);
  const std::uint32_t p = g.p();
  const std::size_t comps = g.weight_components();
  auto fixed = filter.fixed_weight();
  walk_tuples(g, arity, [&](const std::uint32_t* t, const WeightVec& ws, int ds) {
    const std::vector<std::uint32_t>* candidates = &buckets.all;
    if (fixed) {
      auto it = buckets.by_weight.find(weight_add(*fixed, ws, p, comps));
      if (it == buckets.by_weight.end()) return;
      candidates = &it->second;
    }
    for (auto v : *candidates) {
      BlockKey b{weight_sub(m.weight_of(v), ws, p, comps), m.degree_of(v) - ds};
      if (filter.admits(b)) f(pk.pack(t, v), b);
    }
  });
}

std::size_t thread_count(std::size_t requested) {
  if (requested) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the
/// first exception.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& fn) {
  threads = std::min(thread_count(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

bool CochainFilter::admits(const BlockKey& b) const {
  switch (kind) {
    case Kind::None: return true;
    case Kind::WeightZero: return b.weight == WeightVec{};
    case Kind::WeightZeroDegree: return b.weight == WeightVec{} && b.degree == degree;
    case Kind::Block: return b.weight == weight && b.degree == degree;
  }
  return false;
}

std::optional<WeightVec> CochainFilter::fixed_weight() const {
  switch (kind) {
    case Kind::None: return std::nullopt;
    case Kind::WeightZero:
    case Kind::WeightZeroDegree: return WeightVec{};
    case Kind::Block: return weight;
  }
  return std::nullopt;
}

std::string CochainFilter::describe(const LieAlgebraModel& g) const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::WeightZero: return "weight-zero";
    case Kind::WeightZeroDegree: return "weight-zero,degree=" + std::to_string(degree);
    case Kind::Block: return "weight=" + to_string(g.to_weight(weight)) + ",degree=" + std::to_string(degree);
  }
  return "?";
}

void enumerate_cochains(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity,
                        const CochainFilter& filter, const std::function<void(std::uint64_t, const BlockKey&)>& f) {
  enumerate_impl(g, m, arity, filter, f);
}

std::uint64_t count_cochains(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity,
                             const CochainFilter& filter) {
  if (filter.kind == CochainFilter::Kind::None) {
    long double c = static_cast<long double>(m.dim());
    for (std::size_t i = 0; i < arity; ++i) c *= static_cast<long double>(g.dim() - i) / static_cast<long double>(i + 1);
    return static_cast<std::uint64_t>(c + 0.5L);
  }
  if (arity > kMaxArity) throw std::domain_error("cochain arity above 4 is not supported");
  const std::uint32_t p = g.p();
  const std::size_t comps = g.weight_components();
  std::size_t weights = 1;
  for (std::size_t i = 0; i < comps; ++i) weights *= p;
  const int lo = std::min(0, g.lowest_degree()) * static_cast<int>(arity);
  const int hi = std::max(0, g.highest_degree()) * static_cast<int>(arity);
  const std::size_t degrees = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t layer = weights * degrees;
  if (layer * (arity + 1) > 50'000'000) {
    std::uint64_t count = 0;
    enumerate_impl(g, m, arity, filter, [&](std::uint64_t, const BlockKey&) { ++count; });
    return count;
  }
  auto encode = [&](const WeightVec& w) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < comps; ++i) code = code * p + w[i];
    return code;
  };
  auto decode = [&](std::size_t code) {
    WeightVec w{};
    for (std::size_t i = comps; i-- > 0;) {
      w[i] = static_cast<std::uint16_t>(code % p);
      code /= p;
    }
    return w;
  };
  // dp[j][w][d]: number of j-subsets with weight sum w and degree sum d (shifted by lo)
  std::vector<std::uint64_t> dp(layer * (arity + 1), 0);
  dp[encode(WeightVec{}) * degrees + static_cast<std::size_t>(-lo)] = 1;
  for (std::uint32_t x = 0; x < g.dim(); ++x) {
    const WeightVec& wx = g.weight_vec_of(x);
    const int dx = g.degree_of(x);
    for (std::size_t j = arity; j-- > 0;) {
      const std::uint64_t* src = dp.data() + j * layer;
      std::uint64_t* dst = dp.data() + (j + 1) * layer;
      for (std::size_t w = 0; w < weights; ++w) {
        const std::size_t w2 = encode(weight_add(decode(w), wx, p, comps));
        for (std::size_t d = 0; d < degrees; ++d) {
          if (!src[w * degrees + d]) continue;
          const int d2 = static_cast<int>(d) + dx;
          if (d2 < 0 || d2 >= static_cast<int>(degrees)) continue;
          dst[w2 * degrees + static_cast<std::size_t>(d2)] += src[w * degrees + d];
        }
      }
    }
  }
  std::uint64_t count = 0;
  const std::uint64_t* top = dp.data() + arity * layer;
  for (std::uint32_t v = 0; v < m.dim(); ++v)
    for (std::size_t w = 0; w < weights; ++w)
      for (std::size_t d = 0; d < degrees; ++d) {
        if (!top[w * degrees + d]) continue;
        BlockKey b{weight_sub(m.weight_of(v), decode(w), p, comps), m.degree_of(v) - (static_cast<int>(d) + lo)};
        if (filter.admits(b)) count += top[w * degrees + d];
      }
  return count;
}

CochainSpace::CochainSpace(ModelPtr g, ModulePtr m, std::size_t arity, const CochainFilter& filter)
    : g_(std::move(g)), m_(std::move(m)), arity_(arity) {
  enumerate_impl(*g_, *m_, arity_, filter, [&](std::uint64_t key, const BlockKey&) { keys_.push_back(key); });
}

CochainSpace::CochainSpace(ModelPtr g, ModulePtr m, std::size_t arity, std::vector<std::uint64_t> keys)
    : g_(std::move(g)), m_(std::move(m)), arity_(arity), keys_(std::move(keys)) {
  Packing(g_->dim(), m_->dim(), arity_);
  if (!std::is_sorted(keys_.begin(), keys_.end())) throw std::invalid_argument("cochain space keys must be sorted");
}

std::uint64_t CochainSpace::pack(const Tuple& t, std::uint32_t v) const {
  return Packing(g_->dim(), m_->dim(), arity_).pack(t.items.data(), v);
}

void CochainSpace::unpack(std::uint64_t key, Tuple& t, std::uint32_t& v) const {
  Packing(g_->dim(), m_->dim(), arity_).unpack(key, t, v);
}

std::optional<std::uint32_t> CochainSpace::find(std::uint64_t key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::uint32_t>(it - keys_.begin());
}

BlockKey CochainSpace::block_of(std::size_t i) const {
  Tuple t;
  std::uint32_t v;
  unpack(keys_.at(i), t, v);
  const std::uint32_t p = g_->p();
  const std::size_t comps = g_->weight_components();
  WeightVec ws{};
  int ds = 0;
  for (std::size_t q = 0; q < arity_; ++q) {
    ws = weight_add(ws, g_->weight_vec_of(t[q]), p, comps);
    ds += g_->degree_of(t[q]);
  }
  return {weight_sub(m_->weight_of(v), ws, p, comps), m_->degree_of(v) - ds};
}

Cochain CochainSpace::to_cochain(const SparseVector& coords) const {
  Cochain c(g_, m_, arity_);
  for (const auto& e : coords) {
    Tuple t;
    std::uint32_t v;
    unpack(keys_.at(e.index), t, v);
    c.add_sorted(t, v, e.value);
  }
  return c;
}

SparseVector CochainSpace::coordinates(const Cochain& c) const {
  if (c.arity() != arity_) throw std::domain_error("coordinates: arity mismatch");
  SparseVector out;
  for (const auto& [t, v] : c.terms())
    for (const auto& e : v) {
      auto idx = find(pack(t, e.index));
      if (!idx) throw std::domain_error("coordinates: cochain has support outside the space");
      out.push_back({*idx, e.value});
    }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return out;
}

std::uint64_t parse_memory_size(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty memory size");
  std::size_t pos = 0;
  unsigned long long v = std::stoull(text, &pos);
  std::string suffix = text.substr(pos);
  std::uint64_t mult = 1;
  if (suffix == "K" || suffix == "k" || suffix == "KiB")
    mult = 1ull << 10;
  else if (suffix == "M" || suffix == "m" || suffix == "MiB")
    mult = 1ull << 20;
  else if (suffix == "G" || suffix == "g" || suffix == "GiB")
    mult = 1ull << 30;
  else if (!suffix.empty())
    throw std::invalid_argument("bad memory size '" + text + "' (use e.g. 512M or 2G)");
  return v * mult;
}

std::uint64_t default_memory_budget() {
  if (const char* env = std::getenv("CARTAN_MEMORY_BUDGET")) return parse_memory_size(env);
  return 1ull << 30;
}

ResourceLimits ResourceLimits::defaults() { return {default_memory_budget(), 0}; }

SparseMatrix differential_matrix(const CochainSpace& source, const CochainSpace& target, std::uint64_t memory_budget,
                                 bool drop_outside) {
  const auto& g = *source.model();
  const auto& m = *source.module();
  const auto& f = g.field();
  const std::size_t k = source.arity();
  if (target.arity() != k + 1 || target.module().get() != source.module().get())
    throw std::domain_error("differential_matrix: incompatible spaces");
  if (g.dim() > kMaxTableDim) throw BudgetExceeded(g.name() + " is too large for assembled differentials, use filters");
  const auto& inverse = g.inverse_index();
  std::vector<Triplet> triplets;
  const std::uint64_t max_triplets = memory_budget / kBytesPerNonzero;
  std::vector<bool> in_u(g.dim(), false);
  std::array<std::uint32_t, kMaxArity> buf{};
  auto emit = [&](const Tuple& t, std::uint32_t v, std::uint32_t col, Residue value) {
    auto row = target.find(target.pack(t, v));
    if (!row) {
      if (drop_outside) return;
      throw std::logic_error("differential leaves the target space");
    }
    triplets.push_back({*row, col, value});
    if (triplets.size() > max_triplets)
      throw BudgetExceeded("differential matrix exceeds the memory budget (" + std::to_string(memory_budget >> 20) +
                           " MiB), too large, use filters");
  };
  for (std::uint32_t col = 0; col < source.dim(); ++col) {
    Tuple u;
    std::uint32_t v;
    source.unpack(source.keys()[col], u, v);
    for (std::size_t q = 0; q < k; ++q) in_u[u[q]] = true;
    if (!m.acts_trivially()) {
      for (std::uint32_t x = 0; x < g.dim(); ++x) {
        if (in_u[x]) continue;
        std::size_t pos = 0;
        while (pos < k && u[pos] < x) ++pos;
        Tuple t;
        t.size = static_cast<std::uint8_t>(k + 1);
        for (std::size_t q = 0, r = 0; q <= k; ++q) t.items[q] = (q == pos) ? x : u[r++];
        bool odd = pos % 2;
        m.act_each(x, v, [&](std::uint32_t idx, Residue a) { emit(t, idx, col, odd ? f.neg(a) : a); });
      }
    }
    for (std::size_t q = 0; q < k; ++q) {
      const std::uint32_t uq = u[q];
      for (const auto& pre : inverse.pairs_hitting(uq)) {
        if ((in_u[pre.x] && pre.x != uq) || (in_u[pre.y] && pre.y != uq)) continue;
        std::size_t r = 0;
        for (std::size_t l = 0; l < k; ++l)
          if (l != q) buf[r++] = u[l];
        buf[r++] = pre.x;
        buf[r++] = pre.y;
        Tuple t;
        if (sort_tuple(std::span<const std::uint32_t>(buf.data(), k + 1), t) == 0) continue;
        std::size_t i = 0, j = 0;
        for (std::size_t l = 0; l <= k; ++l) {
          if (t[l] == pre.x) i = l;
          if (t[l] == pre.y) j = l;
        }
        bool odd = (i + j + q) % 2;
        emit(t, v, col, odd ? f.neg(pre.coeff) : pre.coeff);
      }
    }
    for (std::size_t q = 0; q < k; ++q) in_u[u[q]] = false;
  }
  return SparseMatrix::from_triplets(f, target.dim(), source.dim(), std::move(triplets));
}

namespace {

struct Group {
  BlockKey key;
  std::array<std::vector<std::uint64_t>, 3> keys;  // arities k-1, k, k+1
};

BlockKey group_key(const BlockKey& b, Decomposition d) {
  switch (d) {
    case Decomposition::Monolithic: return {};
    case Decomposition::ByDegree: return {WeightVec{}, b.degree};
    case Decomposition::ByBlock: return b;
  }
  return {};
}

std::string_view decomposition_name(Decomposition d) {
  switch (d) {
    case Decomposition::Monolithic: return "monolithic";
    case Decomposition::ByDegree: return "by-degree";
    case Decomposition::ByBlock: return "by-block";
  }
  return "?";
}

struct GroupResult {
  BlockReport report;
  std::vector<Cochain> representatives;
  bool omitted = false;
};

GroupResult solve_group(const ModelPtr& g, const ModulePtr& m, std::size_t k, Group& grp, const CohomologyOptions& opts) {
  GroupResult res;
  res.report.key = grp.key;
  CochainSpace below(g, m, k == 0 ? 0 : k - 1, k == 0 ? std::vector<std::uint64_t>{} : std::move(grp.keys[0]));
  CochainSpace here(g, m, k, std::move(grp.keys[1]));
  CochainSpace above(g, m, k + 1, std::move(grp.keys[2]));
  const auto budget = opts.limits.memory_budget;
  std::size_t rank_below = 0;
  std::optional<SparseMatrix> d_below;
  if (k > 0 && below.dim() > 0) {
    d_below = differential_matrix(below, here, budget);
    rank_below = rank(*d_below);
  }
  SparseMatrix d_here = differential_matrix(here, above, budget);
  const bool want_reps = opts.representatives && here.dim() <= opts.representative_limit;
  std::size_t rank_here = 0;
  std::vector<SparseVector> kernel;
  if (want_reps) {
    kernel = kernel_basis(d_here);
    rank_here = here.dim() - kernel.size();
  } else {
    rank_here = rank(d_here);
  }
  res.report.dimC = here.dim();
  res.report.dimZ = here.dim() - rank_here;
  res.report.dimB = rank_below;
  res.report.dimH = res.report.dimZ - res.report.dimB;
  if (want_reps && res.report.dimH > 0) {
    EchelonBasis span(g->field(), here.dim());
    if (d_below) {
      SparseMatrix cols = d_below->transpose();
      for (std::size_t c = 0; c < cols.rows(); ++c) {
        auto row = cols.row(c);
        span.insert(SparseVector(row.begin(), row.end()));
      }
    }
    for (const auto& z : kernel) {
      if (res.representatives.size() == res.report.dimH) break;
      if (span.insert(z)) res.representatives.push_back(here.to_cochain(z));
    }
  } else if (!want_reps && opts.representatives && res.report.dimH > 0) {
    res.omitted = true;
  }
  return res;
}

}  // namespace

CohomologyReport cohomology(const ModelPtr& g, const ModulePtr& m, std::size_t k, const CohomologyOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  if (k + 1 > kMaxArity) throw std::domain_error("cohomology is supported for k <= 3");
  if (m->model().get() != g.get()) throw std::domain_error("module is defined over a different model");
  CohomologyReport rep;
  rep.family = std::string(family_name(g->family()));
  rep.model = g->name();
  rep.p = g->p();
  rep.n = g->n();
  rep.min_degree = g->min_degree();
  rep.k = k;
  rep.module = std::string(module_name(m->kind()));
  rep.filter = opts.filter.describe(*g);
  rep.decomposition = std::string(decomposition_name(opts.decomposition));

  const std::uint64_t budget = opts.limits.memory_budget;
  const std::uint64_t above_count = count_cochains(*g, *m, k + 1, opts.filter);
  if (above_count * kBytesPerCoordinate > budget)
    throw BudgetExceeded("C^" + std::to_string(k + 1) + " has " + std::to_string(above_count) +
                         " coordinates, beyond the memory budget; too large, use filters");

  std::map<BlockKey, Group> groups;
  for (std::size_t slot = 0; slot < 3; ++slot) {
    if (k == 0 && slot == 0) continue;
    enumerate_impl(*g, *m, k - 1 + slot, opts.filter, [&](std::uint64_t key, const BlockKey& b) {
      BlockKey gk = group_key(b, opts.decomposition);
      if (slot == 0 || slot == 2) {
        auto it = groups.find(gk);
        if (it == groups.end()) {
          if (slot == 2) {
            // C^{k+1} pieces without C^k partners never matter
            return;
          }
          it = groups.emplace(gk, Group{gk, {}}).first;
        }
        it->second.keys[slot].push_back(key);
      } else {
        auto& grp = groups[gk];
        grp.key = gk;
        grp.keys[1].push_back(key);
      }
    });
  }
  std::vector<Group> work;
  for (auto& [key, grp] : groups)
    if (!grp.keys[1].empty()) work.push_back(std::move(grp));
  groups.clear();

  std::vector<GroupResult> results(work.size());
  parallel_for(work.size(), opts.limits.threads, [&](std::size_t i) { results[i] = solve_group(g, m, k, work[i], opts); });
  for (auto& r : results) {
    rep.dimC += r.report.dimC;
    rep.dimZ += r.report.dimZ;
    rep.dimB += r.report.dimB;
    rep.dimH += r.report.dimH;
    rep.representatives_omitted = rep.representatives_omitted || r.omitted;
    for (auto& c : r.representatives) rep.representatives.push_back(std::move(c));
    rep.blocks.push_back(r.report);
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const Cochain& c, std::size_t max_terms) {
  nlohmann::json terms = nlohmann::json::array();
  const auto& g = *c.model();
  std::size_t shown = 0;
  for (const auto& [t, v] : c.sorted_terms()) {
    if (shown++ == max_terms) break;
    nlohmann::json args = nlohmann::json::array();
    for (std::size_t i = 0; i < t.size; ++i) args.push_back(to_string(Polynomial::monomial(g.context(), g.element(t[i]))));
    std::string value = c.module()->kind() == ModuleKind::Trivial || c.module()->kind() == ModuleKind::Character
                            ? std::to_string(v.empty() ? 0 : v.front().value)
                            : to_string(c.module()->to_polynomial(v));
    terms.push_back({{"args", args}, {"value", value}});
  }
  return {{"arity", c.arity()}, {"support", c.support_size()}, {"truncated", c.support_size() > max_terms},
          {"tuples", terms}};
}

nlohmann::json to_json(const CohomologyReport& r, std::size_t max_terms) {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& c : r.representatives) reps.push_back(to_json(c, max_terms));
  nlohmann::json j = {{"schema", 1},
                      {"family", r.family},
                      {"model", r.model},
                      {"p", r.p},
                      {"n", r.n},
                      {"k", r.k},
                      {"module", r.module},
                      {"filter", r.filter},
                      {"decomposition", r.decomposition},
                      {"dimC", r.dimC},
                      {"dimZ", r.dimZ},
                      {"dimB", r.dimB},
                      {"dimH", r.dimH},
                      {"blocks", r.blocks.size()},
                      {"representatives", reps},
                      {"representatives_omitted", r.representatives_omitted},
                      {"elapsed_ms", r.elapsed_ms}};
  if (r.min_degree) j["min_degree"] = *r.min_degree;
  return j;
}

namespace {

void require_same_space(const Cochain& a, const Cochain& b) {
  if (a.arity() != b.arity() || a.model()->context() != b.model()->context() || a.model()->dim() != b.model()->dim() ||
      a.model()->family() != b.model()->family() || a.module()->kind() != b.module()->kind())
    throw std::domain_error("cochains live in different spaces");
}

std::set<BlockKey> blocks_of(const Cochain& c) {
  const auto& g = *c.model();
  const auto& m = *c.module();
  const std::uint32_t p = g.p();
  const std::size_t comps = g.weight_components();
  std::set<BlockKey> out;
  for (const auto& [t, v] : c.terms()) {
    WeightVec ws{};
    int ds = 0;
    for (std::size_t q = 0; q < t.size; ++q) {
      ws = weight_add(ws, g.weight_vec_of(t[q]), p, comps);
      ds += g.degree_of(t[q]);
    }
    for (const auto& e : v) out.insert({weight_sub(m.weight_of(e.index), ws, p, comps), m.degree_of(e.index) - ds});
  }
  return out;
}

std::vector<std::uint64_t> keys_in_blocks(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity,
                                          const std::set<BlockKey>& blocks) {
  std::vector<std::uint64_t> keys;
  for (const auto& b : blocks)
    enumerate_impl(g, m, arity, CochainFilter::block(b), [&](std::uint64_t key, const BlockKey&) { keys.push_back(key); });
  std::sort(keys.begin(), keys.end());
  return keys;
}

void require_cocycle(const Cochain& c) {
  if (!check_cocycle(c).is_cocycle) throw std::domain_error("cochain is not a cocycle");
}

}  // namespace

std::optional<Cochain> coboundary_preimage(const Cochain& c, std::uint64_t memory_budget) {
  require_cocycle(c);
  const std::size_t k = c.arity();
  if (c.is_zero()) return Cochain(c.model(), c.module(), k == 0 ? 0 : k - 1);
  if (k == 0) return std::nullopt;
  auto blocks = blocks_of(c);
  CochainSpace below(c.model(), c.module(), k - 1, keys_in_blocks(*c.model(), *c.module(), k - 1, blocks));
  CochainSpace here(c.model(), c.module(), k, keys_in_blocks(*c.model(), *c.module(), k, blocks));
  SparseMatrix d = differential_matrix(below, here, memory_budget);
  auto b = to_dense(here.coordinates(c), here.dim());
  auto x = solve_in_image(d, b);
  if (!x) return std::nullopt;
  return below.to_cochain(to_sparse(*x));
}

bool classes_independent(const std::vector<Cochain>& cocycles, std::uint64_t memory_budget) {
  if (cocycles.empty()) return true;
  std::set<BlockKey> blocks;
  for (const auto& c : cocycles) {
    require_same_space(cocycles.front(), c);
    require_cocycle(c);
    auto b = blocks_of(c);
    blocks.insert(b.begin(), b.end());
  }
  const auto& first = cocycles.front();
  const std::size_t k = first.arity();
  CochainSpace here(first.model(), first.module(), k, keys_in_blocks(*first.model(), *first.module(), k, blocks));
  EchelonBasis span(first.field(), here.dim());
  if (k > 0) {
    CochainSpace below(first.model(), first.module(), k - 1,
                       keys_in_blocks(*first.model(), *first.module(), k - 1, blocks));
    SparseMatrix cols = differential_matrix(below, here, memory_budget).transpose();
    for (std::size_t i = 0; i < cols.rows(); ++i) {
      auto row = cols.row(i);
      span.insert(SparseVector(row.begin(), row.end()));
    }
  }
  for (const auto& c : cocycles)
    if (!span.insert(here.coordinates(c))) return false;
  return true;
}

RelativeReport relative_cohomology(const ModelPtr& g, std::size_t k, std::uint64_t memory_budget) {
  if (g->contact() || g->min_degree()) throw std::domain_error("relative cohomology is implemented for H(n) and H'(n)");
  if (k + 1 > kMaxArity) throw std::domain_error("relative cohomology is supported for k <= 3");
  auto trivial = CoefficientModule::make(g, ModuleKind::Trivial);
  const auto& f = g->field();
  std::vector<std::uint32_t> upper, lower;
  for (std::uint32_t x = 0; x < g->dim(); ++x) (g->degree_of(x) >= 0 ? upper : lower).push_back(x);

  // cochains on g / g_{-1}: tuples drawn from the degree >= 0 basis
  auto space_on_upper = [&](std::size_t arity) {
    std::vector<std::uint64_t> keys;
    Packing pk(g->dim(), 1, arity);
    std::array<std::uint32_t, kMaxArity> t{};
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
      if (depth == arity) {
        keys.push_back(pk.pack(t.data(), 0));
        return;
      }
      for (std::size_t i = start; i < upper.size(); ++i) {
        t[depth] = upper[i];
        self(self, depth + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
    if (keys.size() * kBytesPerCoordinate > memory_budget) throw BudgetExceeded("relative cochain space too large");
    return CochainSpace(g, trivial, arity, std::move(keys));
  };

  // basis of g_{-1}-invariant cochains: kernel of c -> (x . c)_{x in g_{-1}}
  auto invariants = [&](const CochainSpace& v) {
    std::vector<Triplet> triplets;
    const std::size_t arity = v.arity();
    for (std::size_t xi = 0; xi < lower.size(); ++xi) {
      const std::uint32_t x = lower[xi];
      for (std::uint32_t row = 0; row < v.dim(); ++row) {
        Tuple t;
        std::uint32_t dummy;
        v.unpack(v.keys()[row], t, dummy);
        // (x . c)(t) = - sum_i c(t_1, .., [x, t_i], .., t_k)
        for (std::size_t i = 0; i < arity; ++i)
          for (const auto& e : g->bracket(x, t[i])) {
            if (g->degree_of(e.index) < 0) continue;
            std::array<std::uint32_t, kMaxArity> args{};
            for (std::size_t q = 0; q < arity; ++q) args[q] = q == i ? e.index : t[q];
            Tuple s;
            int sign = sort_tuple(std::span<const std::uint32_t>(args.data(), arity), s);
            if (sign == 0) continue;
            auto col = v.find(v.pack(s, 0));
            if (!col) continue;
            Residue val = sign > 0 ? f.neg(e.value) : e.value;
            triplets.push_back({static_cast<std::uint32_t>(xi * v.dim() + row), *col, val});
          }
      }
    }
    auto mat = SparseMatrix::from_triplets(f, lower.size() * v.dim(), v.dim(), std::move(triplets));
    return kernel_basis(mat);
  };

  // rank of d restricted to the invariant cochains
  auto restricted_rank = [&](const CochainSpace& from, const std::vector<SparseVector>& basis) -> std::size_t {
    if (basis.empty()) return 0;
    CochainSpace to = space_on_upper(from.arity() + 1);
    SparseMatrix d = differential_matrix(from, to, memory_budget, true);
    std::vector<SparseVector> images;
    for (const auto& b : basis) images.push_back(d.multiply(b));
    std::vector<SparseVector> rows;
    for (auto& img : images)
      if (!img.empty()) rows.push_back(std::move(img));
    return rank(SparseMatrix::from_rows(f, to.dim(), std::move(rows)));
  };

  RelativeReport rep;
  rep.k = k;
  CochainSpace here = space_on_upper(k);
  auto inv_here = invariants(here);
  rep.dimC = inv_here.size();
  rep.dimZ = rep.dimC - restricted_rank(here, inv_here);
  if (k > 0) {
    CochainSpace below = space_on_upper(k - 1);
    rep.dimB = restricted_rank(below, invariants(below));
  }
  rep.dimH = rep.dimZ - rep.dimB;
  return rep;
}

}  // namespace cartan
