#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartan {

/// A residue modulo the field's prime, always kept in [0, p).
using Residue = std::uint32_t;

/// Arithmetic in the prime field F_p for a prime 5 <= p < 2^31.
///
/// Characteristic 2 and 3 are rejected: the Cartan-type constructions used in
/// this library are only defined for p >= 5. Products are formed in 64 bits
/// and reduced, so no bignum support is needed.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// a*b + c
  Residue mul_add(Residue a, Residue b, Residue c) const noexcept {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b + c) % p_);
  }

  /// Multiplicative inverse; throws std::domain_error on zero.
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue pow(Residue a, std::uint64_t e) const noexcept;

  /// Signed representative in (-p/2, p/2], handy for printing.
  std::int64_t centered(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

 private:
  std::uint32_t p_;
  // Inverse table for small primes; shared so copies stay cheap.
  std::shared_ptr<const std::vector<Residue>> inverses_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A field element that carries its modulus. Used at API boundaries; hot
/// loops work on raw residues through PrimeField.
class FpScalar {
 public:
  FpScalar(std::int64_t value, const PrimeField& field) : value_(field.reduce(value)), field_(field) {}

  Residue value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  const PrimeField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FpScalar operator+(const FpScalar& o) const { return {field_.add(value_, check(o)), field_}; }
  FpScalar operator-(const FpScalar& o) const { return {field_.sub(value_, check(o)), field_}; }
  FpScalar operator*(const FpScalar& o) const { return {field_.mul(value_, check(o)), field_}; }
  FpScalar operator/(const FpScalar& o) const { return {field_.div(value_, check(o)), field_}; }
  FpScalar operator-() const { return {field_.neg(value_), field_}; }

  bool operator==(const FpScalar& o) const noexcept {
    return value_ == o.value_ && field_ == o.field_;
  }
  bool operator==(std::int64_t v) const noexcept { return value_ == field_.reduce(v); }

 private:
  Residue check(const FpScalar& o) const {
    if (o.field_ != field_) throw std::domain_error("FpScalar: modulus mismatch");
    return o.value_;
  }

  Residue value_;
  PrimeField field_;
};

/// Inverse of a nonzero scalar; throws std::domain_error on zero.
FpScalar fp_inv(const FpScalar& a);

}  // namespace cartan
