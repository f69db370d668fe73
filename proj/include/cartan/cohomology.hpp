#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartan/cochain.hpp"
#include "cartan/sparse_matrix.hpp"
#include "json.hpp"

namespace cartan {

/// Weight and total degree of an elementary cochain x_U -> v:
/// wt(v) - sum wt(x_u) (mod p) and deg(v) - sum deg(x_u).
struct BlockKey {
  WeightVec weight{};
  int degree = 0;
  auto operator<=>(const BlockKey&) const = default;
};

/// Which homogeneous components of C^k a space keeps.
struct CochainFilter {
  enum class Kind { None, WeightZero, WeightZeroDegree, Block };
  Kind kind = Kind::None;
  WeightVec weight{};
  int degree = 0;

  static CochainFilter none() { return {}; }
  static CochainFilter weight_zero() { return {Kind::WeightZero, {}, 0}; }
  static CochainFilter weight_zero_degree(int d) { return {Kind::WeightZeroDegree, {}, d}; }
  static CochainFilter block(const BlockKey& b) { return {Kind::Block, b.weight, b.degree}; }

  bool admits(const BlockKey& b) const;
  std::optional<WeightVec> fixed_weight() const;
  std::string describe(const LieAlgebraModel& g) const;
};

/// How a filtered space is cut before elimination: in one piece, by total
/// degree, or by (weight, degree). Since d preserves both gradings, the
/// pieces' cohomology adds up to that of the whole filtered space.
enum class Decomposition { Monolithic, ByDegree, ByBlock };

/// Ordered basis of elementary cochains (increasing argument tuple, module
/// basis vector), each packed into a 64-bit mixed-radix key.
class CochainSpace {
 public:
  /// All elementary k-cochains admitted by the filter.
  CochainSpace(ModelPtr g, ModulePtr m, std::size_t arity, const CochainFilter& filter);
  /// An explicit, strictly increasing list of packed keys.
  CochainSpace(ModelPtr g, ModulePtr m, std::size_t arity, std::vector<std::uint64_t> keys);

  const ModelPtr& model() const noexcept { return g_; }
  const ModulePtr& module() const noexcept { return m_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t dim() const noexcept { return keys_.size(); }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }

  std::uint64_t pack(const Tuple& t, std::uint32_t v) const;
  void unpack(std::uint64_t key, Tuple& t, std::uint32_t& v) const;
  std::optional<std::uint32_t> find(std::uint64_t key) const;
  BlockKey block_of(std::size_t i) const;

  Cochain to_cochain(const SparseVector& coords) const;
  /// Throws std::domain_error when c has support outside the space.
  SparseVector coordinates(const Cochain& c) const;

 private:
  ModelPtr g_;
  ModulePtr m_;
  std::size_t arity_;
  std::vector<std::uint64_t> keys_;
};

/// Enumerates the elementary cochains admitted by a filter; f(key, block).
void enumerate_cochains(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity,
                        const CochainFilter& filter, const std::function<void(std::uint64_t, const BlockKey&)>& f);
/// Number of elementary cochains admitted by a filter.
std::uint64_t count_cochains(const LieAlgebraModel& g, const CoefficientModule& m, std::size_t arity,
                             const CochainFilter& filter);

struct ResourceLimits {
  std::uint64_t memory_budget;  // bytes
  std::size_t threads;          // 0 = hardware concurrency
  static ResourceLimits defaults();
};
/// Default budget: 1 GiB, overridable through CARTAN_MEMORY_BUDGET (bytes, or
/// with a K/M/G suffix).
std::uint64_t default_memory_budget();
std::uint64_t parse_memory_size(const std::string& text);

/// Thrown when a requested computation would exceed the memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix of d: source -> target. The target must contain every elementary
/// cochain reached from the source (true for spaces closed under the filter)
/// unless drop_outside is set, in which case such coordinates are discarded.
SparseMatrix differential_matrix(const CochainSpace& source, const CochainSpace& target,
                                 std::uint64_t memory_budget = default_memory_budget(), bool drop_outside = false);

struct BlockReport {
  BlockKey key;
  std::size_t dimC = 0, dimZ = 0, dimB = 0, dimH = 0;
};

struct CohomologyReport {
  std::string family;
  std::string model;
  std::uint32_t p = 0;
  std::size_t n = 0;
  std::optional<int> min_degree;
  std::size_t k = 0;
  std::string module;
  std::string filter;
  std::string decomposition;
  std::size_t dimC = 0, dimZ = 0, dimB = 0, dimH = 0;
  std::vector<Cochain> representatives;
  bool representatives_omitted = false;
  std::vector<BlockReport> blocks;
  double elapsed_ms = 0;
};

struct CohomologyOptions {
  CochainFilter filter;
  Decomposition decomposition = Decomposition::Monolithic;
  bool representatives = true;
  /// Representatives are skipped for blocks with more coordinates than this.
  std::size_t representative_limit = 20000;
  ResourceLimits limits = ResourceLimits::defaults();
};

CohomologyReport cohomology(const ModelPtr& g, const ModulePtr& m, std::size_t k, const CohomologyOptions& opts = {});

nlohmann::json to_json(const CohomologyReport& r, std::size_t max_terms = 50);
nlohmann::json to_json(const Cochain& c, std::size_t max_terms = 50);

/// Preimage b with d b = c, if any. Throws std::domain_error unless c is a
/// cocycle.
std::optional<Cochain> coboundary_preimage(const Cochain& c, std::uint64_t memory_budget = default_memory_budget());
inline bool is_coboundary(const Cochain& c) { return coboundary_preimage(c).has_value(); }

/// True iff no nontrivial combination of the cocycles is a coboundary.
/// Throws std::domain_error for mixed spaces or non-cocycles.
bool classes_independent(const std::vector<Cochain>& cocycles, std::uint64_t memory_budget = default_memory_budget());

/// dim H^k(g, g_{-1}; F) for the Hamiltonian family: cochains on g / g_{-1}
/// invariant under g_{-1}. By convention H^0 = F (dimension 1).
struct RelativeReport {
  std::size_t k = 0;
  std::size_t dimC = 0;  // invariant cochains
  std::size_t dimZ = 0, dimB = 0, dimH = 0;
};
RelativeReport relative_cohomology(const ModelPtr& g, std::size_t k,
                                   std::uint64_t memory_budget = default_memory_budget());

}  // namespace cartan
