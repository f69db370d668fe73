#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cartan/cocycles.hpp"
#include "cartan/cohomology.hpp"
#include "json.hpp"

namespace cartan {

enum class CheckStatus { Pass, Fail, Skipped, Error };
std::string_view status_name(CheckStatus s);

/// Where an expected value comes from: a published statement or an
/// independent derivation.
enum class Provenance { Published, Derived };
std::string_view provenance_name(Provenance p);

/// One ledger line. Status is Pass iff the computed value equals the expected
/// one and every prerequisite passed.
struct TheoremCheck {
  std::string id;
  std::string statement;
  std::string expected;
  Provenance provenance = Provenance::Published;
  std::string computed;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  bool experimental = false;
  double elapsed_ms = 0;
  std::vector<TheoremCheck> prerequisites;
};

using Ledger = std::vector<TheoremCheck>;

struct VerifyOptions {
  ResourceLimits limits = ResourceLimits::defaults();
  /// Random quadruples drawn when a 3-cocycle is too large for an exhaustive d-check.
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
  bool experimental = false;
};

/// H^2(K(n), K(n)) = span of Sq(x_1..x_n) and Sq(1).
TheoremCheck verify_theorem_K(std::uint32_t p, std::size_t n, const VerifyOptions& opts = {});
/// H^2(H(n), H(n)): Sq(x_i), Phi for n = 2; additionally Pi_ij and Pi_i for n >= 4.
TheoremCheck verify_theorem_H(std::uint32_t p, std::size_t n, const VerifyOptions& opts = {});
/// Dimension, Cartan decomposition, graded component and commutator claims.
Ledger verify_lemmas(Family family, std::uint32_t p, std::size_t n, const VerifyOptions& opts = {});
/// Antisymmetry, Jacobi, grading and weight additivity over all basis pairs/triples.
Ledger verify_structure(Family family, std::uint32_t p, std::size_t n);
/// d c = 0 for a named cochain (plus alternation on its support for trivial coefficients).
TheoremCheck verify_cocycle(std::string_view spec, const ModelPtr& g, const VerifyOptions& opts = {});

/// Sampled 3-cocycle check for Xi on a model too large for the assembled
/// differential: alternation on every support triple, d Xi on every
/// quadruple with two degree -1 arguments, and d Xi on opts.samples random
/// quadruples from the weight-compatible locus.
TheoremCheck verify_xi_sampled(const ModelPtr& g, const VerifyOptions& opts = {});

/// Runs checks on up to `threads` workers; the result keeps the input order.
Ledger run_checks(const std::vector<std::function<TheoremCheck()>>& checks, std::size_t threads);

/// True iff every non-experimental check (recursively) passed or was skipped.
bool ledger_passed(const Ledger& ledger);
nlohmann::json to_json(const TheoremCheck& c);
nlohmann::json ledger_json(const Ledger& ledger);
std::string ledger_table(const Ledger& ledger);

}  // namespace cartan
