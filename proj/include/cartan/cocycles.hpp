#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/cochain.hpp"

namespace cartan {

/// Callback receiving sorted argument tuples.
using TupleSink = std::function<void(const Tuple&)>;

/// An explicit cochain given by a formula on basis tuples.
struct NamedCochain {
  std::string name;
  std::size_t arity = 2;
  ModelPtr model;
  ModulePtr module;
  CochainEvaluator evaluate;
  /// Enumerates sorted tuples covering the support; empty means "all tuples".
  std::function<void(const TupleSink&)> support;
  std::string note;
  bool experimental = false;
};

/// Stored form of a named cochain (evaluated on every tuple of its support).
Cochain tabulate(const NamedCochain& c);

/// Sq(gamma)(x, y) = sum_{i=1}^{p-1} [ad(gamma)^i x, ad(gamma)^{p-i} y] / (i! (p-i)!).
NamedCochain squaring(ModelPtr g, const SparseVector& gamma, std::string label);
/// Sq of a single monomial x^a of the model.
NamedCochain squaring(ModelPtr g, const MultiIndex& a);

/// Hamiltonian-family cochains; indices are 1-based as in the CLI.
NamedCochain pi_ij(ModelPtr g, std::size_t i, std::size_t j);
NamedCochain pi_conjugate(ModelPtr g, std::size_t i);
NamedCochain pi_i(ModelPtr g, std::size_t i);
/// 1-cochain with g_i(x^{sigma^i}) = x^sigma (values in H'(n)).
NamedCochain coboundary_g(ModelPtr g, std::size_t i);

enum class PhiExponent { Printed, Sum };  // a + conj(b) - delta - conj(delta)  vs  a + b - delta - conj(delta)
std::string_view phi_exponent_name(PhiExponent e);
/// Phi with values in H'(n) (the constant term dies there).
NamedCochain phi(ModelPtr g, PhiExponent exponent);

struct PhiSelection {
  bool printed_is_cocycle = false;
  bool sum_is_cocycle = false;
  std::optional<PhiExponent> selected;
  std::optional<Tuple> printed_witness;  // a triple where d Phi != 0 for the printed exponent
  std::optional<Tuple> sum_witness;
  std::string summary() const;
};
/// Decides which exponent makes Phi a cocycle on the given model.
PhiSelection select_phi(const ModelPtr& g);

NamedCochain omega(ModelPtr g, std::size_t i);
NamedCochain sigma_cochain(ModelPtr g);
NamedCochain delta_cochain(ModelPtr g);
NamedCochain gamma_ij(ModelPtr g, std::size_t i, std::size_t j);
/// Throws std::domain_error unless n == -4 mod p.
NamedCochain xi(ModelPtr g);
NamedCochain upsilon(ModelPtr g, std::size_t i);

/// Parses a CLI cochain name (Sq:<monomial>, Pi:<i>,<j>, PiC:<i>, PiI:<i>,
/// Phi, Omega:<i>, Sigma, Delta, Gamma:<i>,<j>, Xi, Upsilon:<i>).
/// Phi resolves to the exponent selected by select_phi.
NamedCochain named_cochain(std::string_view spec, const ModelPtr& g, bool experimental = false);

/// The value c * x^e as a module vector: zero when e leaves the p^n box or is
/// the constant of a module without constants; otherwise a basis vector
/// (std::logic_error if the module lacks it).
SparseVector monomial_value(const CoefficientModule& m, const MultiIndex& e, Residue c);

}  // namespace cartan
