#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "cartan/field.hpp"

namespace cartan {

inline constexpr std::size_t kMaxVariables = 12;

/// Exponent vector a = (a_1, ..., a_n) indexing the monomial x^a.
///
/// Coordinates are stored 0-based. Entries are signed so that intermediate
/// sums and differences can be formed before a box check; valid monomials of
/// A(n) satisfy 0 <= a_i <= p-1 (see in_box).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n);
  MultiIndex(std::initializer_list<int> values);

  static MultiIndex filled(std::size_t n, int value);
  /// epsilon_j (0-based j)
  static MultiIndex unit(std::size_t n, std::size_t j);

  std::size_t size() const noexcept { return n_; }
  int operator[](std::size_t i) const noexcept { return e_[i]; }
  void set(std::size_t i, int v) noexcept { e_[i] = static_cast<std::int16_t>(v); }
  void add_at(std::size_t i, int v) noexcept { e_[i] = static_cast<std::int16_t>(e_[i] + v); }

  /// |a|
  int degree() const noexcept;
  bool in_box(std::uint32_t p) const noexcept;
  bool is_zero() const noexcept;

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  MultiIndex scaled(int k) const;

  bool operator==(const MultiIndex& o) const noexcept;
  /// Lexicographic in coordinate order.
  std::strong_ordering operator<=>(const MultiIndex& o) const noexcept;

 private:
  std::array<std::int16_t, kMaxVariables> e_{};
  std::uint8_t n_ = 0;
};

/// b <= a coordinatewise.
bool leq(const MultiIndex& b, const MultiIndex& a);
/// Every coordinate strictly smaller (the strict order on N^n).
bool strictly_less(const MultiIndex& b, const MultiIndex& a);

Residue factorial(const MultiIndex& a, const PrimeField& f);
/// prod_i C(a_i, b_i) mod p; throws std::domain_error unless b <= a.
Residue binom(const MultiIndex& a, const MultiIndex& b, const PrimeField& f);

/// Sign sigma(j) of a 0-based symplectic coordinate j < 2m: +1 for j < m, -1 otherwise.
inline int index_sign(std::size_t j, std::size_t m) noexcept { return j < m ? 1 : -1; }
/// Conjugate coordinate j' = j +- m.
inline std::size_t conjugate_index(std::size_t j, std::size_t m) noexcept { return j < m ? j + m : j - m; }

/// sigma(a) = prod sigma(i)^{a_i} over the first 2m coordinates, as +1/-1.
int symplectic_sign(const MultiIndex& a, std::size_t m);
/// sigma(a) for an index of even length 2m, as a field element.
Residue sign_of(const MultiIndex& a, const PrimeField& f);
/// Swaps the two halves of the first 2m coordinates; others untouched.
MultiIndex conjugate(const MultiIndex& a, std::size_t m);
/// Conjugate of an even-length index; throws std::domain_error on odd length.
MultiIndex conjugate(const MultiIndex& a);

/// Mixed-radix base-p code with coordinate 0 most significant, so codes sort
/// lexicographically.
std::uint64_t encode(const MultiIndex& a, std::uint32_t p);
MultiIndex decode(std::uint64_t code, std::uint32_t p, std::size_t n);

/// "a1,a2,...,an"
std::string to_string(const MultiIndex& a);
MultiIndex parse_multiindex(std::string_view text);

}  // namespace cartan
