#include "cartan/field.hpp"

namespace cartan {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 5) throw std::domain_error("prime field: characteristic must be at least 5, got " + std::to_string(p));
  if (p >= (1u << 31)) throw std::domain_error("prime field: modulus must be below 2^31");
  if (!is_prime(p)) throw std::domain_error("prime field: " + std::to_string(p) + " is not prime");
  if (p <= (1u << 16)) {
    auto table = std::make_shared<std::vector<Residue>>(p, 0);
    (*table)[1] = 1;
    // inv(i) = -(p / i) * inv(p mod i)
    for (std::uint32_t i = 2; i < p; ++i)
      (*table)[i] = mul(p - p / i, (*table)[p % i]);
    inverses_ = std::move(table);
  }
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw std::domain_error("prime field: zero has no inverse");
  if (inverses_) return (*inverses_)[a];
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FpScalar fp_inv(const FpScalar& a) { return FpScalar(a.field().inv(a.value()), a.field()); }

}  // namespace cartan
