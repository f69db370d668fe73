#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "cartan/field.hpp"
#include "cartan/multiindex.hpp"

namespace cartan {

/// Parameters of A(n) = F_p[x_1..x_n]/(x_i^p): the prime, the number of
/// variables and the number m of symplectic pairs (x_i, x_{i+m}) that the
/// Hamiltonian operator D_H ranges over. For contact algebras n = 2m+1 and
/// the last variable is outside every pair.
struct AlgebraContext {
  PrimeField field;
  std::size_t n;
  std::size_t pairs;

  static AlgebraContext hamiltonian(std::uint32_t p, std::size_t n);
  static AlgebraContext contact(std::uint32_t p, std::size_t n);

  std::uint32_t p() const noexcept { return field.modulus(); }
  bool operator==(const AlgebraContext& o) const noexcept {
    return field == o.field && n == o.n && pairs == o.pairs;
  }
};

/// Element of the truncated polynomial ring, stored as a sparse map from
/// exponent vectors to nonzero coefficients.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Residue>;

  explicit Polynomial(const AlgebraContext& ctx) : ctx_(ctx) {}
  static Polynomial monomial(const AlgebraContext& ctx, const MultiIndex& a, Residue c = 1);
  static Polynomial constant(const AlgebraContext& ctx, Residue c);

  const AlgebraContext& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Residue coefficient(const MultiIndex& a) const;

  /// Adds c * x^a; monomials outside the p^n box are truncated to zero.
  void add_term(const MultiIndex& a, Residue c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(Residue c) const;
  bool operator==(const Polynomial& o) const;

 private:
  void require_same(const Polynomial& o) const;

  AlgebraContext ctx_;
  Terms terms_;
};

/// x^a x^b = x^{a+b}, or 0 once an exponent reaches p.
Polynomial multiply(const Polynomial& f, const Polynomial& g);
/// D_axis, with a 0-based axis.
Polynomial partial(std::size_t axis, const Polynomial& f);
/// D_H(f)(g) = sum_{j<2m} sigma(j) D_j(f) D_{j'}(g).
Polynomial hamiltonian_apply(const Polynomial& f, const Polynomial& g);

/// Canonical text, e.g. "3*x1^2*x2 + x3"; terms in decreasing lexicographic
/// order of exponent vectors, coefficients in [1, p).
std::string to_string(const Polynomial& f);
Polynomial parse_polynomial(const AlgebraContext& ctx, std::string_view text);

}  // namespace cartan
