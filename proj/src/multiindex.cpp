#include "cartan/multiindex.hpp"

#include <charconv>
#include <stdexcept>

namespace cartan {

MultiIndex::MultiIndex(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  if (n > kMaxVariables) throw std::domain_error("MultiIndex: too many variables");
}

MultiIndex::MultiIndex(std::initializer_list<int> values) : MultiIndex(values.size()) {
  std::size_t i = 0;
  for (int v : values) e_[i++] = static_cast<std::int16_t>(v);
}

MultiIndex MultiIndex::filled(std::size_t n, int value) {
  MultiIndex a(n);
  for (std::size_t i = 0; i < n; ++i) a.e_[i] = static_cast<std::int16_t>(value);
  return a;
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j) {
  MultiIndex a(n);
  a.e_.at(j) = 1;
  return a;
}

int MultiIndex::degree() const noexcept {
  int s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += e_[i];
  return s;
}

bool MultiIndex::in_box(std::uint32_t p) const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    if (e_[i] < 0 || static_cast<std::uint32_t>(e_[i]) >= p) return false;
  return true;
}

bool MultiIndex::is_zero() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    if (e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.n_ != n_) throw std::domain_error("MultiIndex: length mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::int16_t>(e_[i] + o.e_[i]);
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (o.n_ != n_) throw std::domain_error("MultiIndex: length mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::int16_t>(e_[i] - o.e_[i]);
  return r;
}

MultiIndex MultiIndex::scaled(int k) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::int16_t>(e_[i] * k);
  return r;
}

bool MultiIndex::operator==(const MultiIndex& o) const noexcept {
  if (n_ != o.n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& o) const noexcept {
  if (n_ != o.n_) return n_ <=> o.n_;
  for (std::size_t i = 0; i < n_; ++i)
    if (e_[i] != o.e_[i]) return e_[i] <=> o.e_[i];
  return std::strong_ordering::equal;
}

bool leq(const MultiIndex& b, const MultiIndex& a) {
  if (a.size() != b.size()) throw std::domain_error("MultiIndex: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

bool strictly_less(const MultiIndex& b, const MultiIndex& a) {
  if (a.size() != b.size()) throw std::domain_error("MultiIndex: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] >= a[i]) return false;
  return true;
}

namespace {
Residue scalar_factorial(int k, const PrimeField& f) {
  Residue r = 1;
  for (int i = 2; i <= k; ++i) r = f.mul(r, f.reduce(i));
  return r;
}
}  // namespace

Residue factorial(const MultiIndex& a, const PrimeField& f) {
  Residue r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw std::domain_error("factorial: negative exponent");
    r = f.mul(r, scalar_factorial(a[i], f));
  }
  return r;
}

Residue binom(const MultiIndex& a, const MultiIndex& b, const PrimeField& f) {
  if (!leq(b, a)) throw std::domain_error("binom: requires b <= a coordinatewise");
  Residue r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < 0) throw std::domain_error("binom: negative exponent");
    if (a[i] >= static_cast<int>(f.modulus())) throw std::domain_error("binom: exponent must be below p");
    // all entries below p, so the factorial quotient is well defined mod p
    Residue num = scalar_factorial(a[i], f);
    Residue den = f.mul(scalar_factorial(b[i], f), scalar_factorial(a[i] - b[i], f));
    r = f.mul(r, f.div(num, den));
  }
  return r;
}

int symplectic_sign(const MultiIndex& a, std::size_t m) {
  if (2 * m > a.size()) throw std::domain_error("symplectic_sign: index shorter than 2m");
  int odd = 0;
  for (std::size_t i = m; i < 2 * m; ++i) odd += a[i];
  return (odd % 2 == 0) ? 1 : -1;
}

Residue sign_of(const MultiIndex& a, const PrimeField& f) {
  if (a.size() % 2) throw std::domain_error("sign_of: index must have even length");
  return f.reduce(symplectic_sign(a, a.size() / 2));
}

MultiIndex conjugate(const MultiIndex& a, std::size_t m) {
  if (2 * m > a.size()) throw std::domain_error("conjugate: index shorter than 2m");
  MultiIndex r(a);
  for (std::size_t i = 0; i < 2 * m; ++i) r.set(i, a[conjugate_index(i, m)]);
  return r;
}

MultiIndex conjugate(const MultiIndex& a) {
  if (a.size() % 2) throw std::domain_error("conjugate: index must have even length");
  return conjugate(a, a.size() / 2);
}

std::uint64_t encode(const MultiIndex& a, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || static_cast<std::uint32_t>(a[i]) >= p) throw std::domain_error("encode: exponent outside [0, p)");
    code = code * p + static_cast<std::uint64_t>(a[i]);
  }
  return code;
}

MultiIndex decode(std::uint64_t code, std::uint32_t p, std::size_t n) {
  MultiIndex a(n);
  for (std::size_t i = n; i-- > 0;) {
    a.set(i, static_cast<int>(code % p));
    code /= p;
  }
  if (code) throw std::domain_error("decode: code outside the p^n box");
  return a;
}

std::string to_string(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a[i]);
  }
  return s;
}

MultiIndex parse_multiindex(std::string_view text) {
  std::array<int, kMaxVariables> values{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (n == kMaxVariables) throw std::invalid_argument("multi-index: too many coordinates");
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || v < 0) throw std::invalid_argument("multi-index: expected non-negative integers, got '" + std::string(text) + "'");
    values[n++] = v;
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    if (text[pos] != ',') throw std::invalid_argument("multi-index: expected ',' in '" + std::string(text) + "'");
    ++pos;
  }
  MultiIndex a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, values[i]);
  return a;
}

}  // namespace cartan
