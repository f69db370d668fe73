#include "cartan/multiindex.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cartan;

namespace {

// every exponent vector of length n in [0, bound)^n
std::vector<MultiIndex> box(std::size_t n, int bound) {
  std::vector<MultiIndex> out;
  MultiIndex a(n);
  while (true) {
    out.push_back(a);
    std::size_t i = 0;
    while (i < n && a[i] == bound - 1) a.set(i++, 0);
    if (i == n) return out;
    a.add_at(i, 1);
  }
}

std::int64_t binom_oracle(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("degree") {
  CHECK(MultiIndex(3).degree() == 0);
  CHECK(MultiIndex::filled(3, 4).degree() == 12);
  CHECK(MultiIndex({2, 0, 1}).degree() == 3);
}

TEST_CASE("binomials") {
  PrimeField f(5);
  CHECK(binom(MultiIndex({3, 2}), MultiIndex(2), f) == 1);
  CHECK(binom(MultiIndex({2, 1}), MultiIndex({1, 0}), f) == 2);
  CHECK(binom(MultiIndex({4, 3}), MultiIndex({2, 1}), f) ==
        oracle::mod(binom_oracle(4, 2) * binom_oracle(3, 1), 5));
  CHECK_THROWS_AS(binom(MultiIndex({1, 1}), MultiIndex({2, 0}), f), std::domain_error);

  // binom(a,b) b! (a-b)! = a! whenever a! is a unit
  PrimeField f7(7);
  for (const auto& a : box(2, 7))
    for (const auto& b : box(2, 7)) {
      if (!leq(b, a)) continue;
      CHECK(f7.mul(binom(a, b, f7), f7.mul(factorial(b, f7), factorial(a - b, f7))) == factorial(a, f7));
    }
}

TEST_CASE("factorials") {
  PrimeField f(5);
  CHECK(factorial(MultiIndex(2), f) == 1);
  CHECK(factorial(MultiIndex({3, 0}), f) == oracle::factorial_mod(3, 5));
  CHECK(factorial(MultiIndex({4, 4}), f) == oracle::mod(oracle::factorial_mod(4, 5) * oracle::factorial_mod(4, 5), 5));
  // k! (p-1-k)! = (-1)^{k+1}
  for (std::uint32_t p : {5u, 7u, 11u}) {
    PrimeField fp(p);
    for (int k = 0; k < static_cast<int>(p); ++k) {
      Residue lhs = fp.mul(factorial(MultiIndex({k}), fp), factorial(MultiIndex({static_cast<int>(p) - 1 - k}), fp));
      CHECK(lhs == fp.reduce(k % 2 ? 1 : -1));
    }
  }
}

TEST_CASE("signs and conjugates") {
  PrimeField f(5);
  CHECK(sign_of(MultiIndex(2), f) == 1);
  CHECK(sign_of(MultiIndex({1, 0}), f) == 1);
  CHECK(sign_of(MultiIndex({1, 1}), f) == 4);
  CHECK(conjugate(MultiIndex({1, 0})) == MultiIndex({0, 1}));
  CHECK(conjugate(MultiIndex({2, 0, 1, 3})) == MultiIndex({1, 3, 2, 0}));
  CHECK_THROWS_AS(conjugate(MultiIndex({1, 2, 3})), std::domain_error);
  // contact form: last coordinate kept
  CHECK(conjugate(MultiIndex({1, 2, 3}), 1) == MultiIndex({2, 1, 3}));
  for (const auto& a : box(4, 3)) {
    CHECK(conjugate(conjugate(a)) == a);
    // sigma(conj a) = (-1)^{|a|} sigma(a)
    int lhs = symplectic_sign(conjugate(a), 2), rhs = symplectic_sign(a, 2) * (a.degree() % 2 ? -1 : 1);
    CHECK(lhs == rhs);
  }
  CHECK(index_sign(0, 2) == 1);
  CHECK(index_sign(3, 2) == -1);
  CHECK(conjugate_index(1, 2) == 3);
  CHECK(conjugate_index(2, 2) == 0);
}

TEST_CASE("orders") {
  CHECK(leq(MultiIndex({1, 0}), MultiIndex({1, 2})));
  CHECK_FALSE(strictly_less(MultiIndex({1, 0}), MultiIndex({1, 2})));
  CHECK(strictly_less(MultiIndex({0, 1}), MultiIndex({1, 2})));
  CHECK(MultiIndex({0, 4}) < MultiIndex({1, 0}));
}

TEST_CASE("codes round-trip and sort lexicographically") {
  auto all = box(3, 5);
  std::uint64_t prev = 0;
  bool first = true;
  std::vector<MultiIndex> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& a : sorted) {
    std::uint64_t c = encode(a, 5);
    CHECK(decode(c, 5, 3) == a);
    if (!first) CHECK(c > prev);
    prev = c;
    first = false;
  }
}

TEST_CASE("text form") {
  CHECK(to_string(MultiIndex({2, 0, 1})) == "2,0,1");
  CHECK(parse_multiindex("2,0,1") == MultiIndex({2, 0, 1}));
  CHECK(parse_multiindex(" 3 , 4 ") == MultiIndex({3, 4}));
  CHECK_THROWS(parse_multiindex("1,x"));
  CHECK(MultiIndex({1, 4}).in_box(5));
  CHECK_FALSE(MultiIndex({1, 5}).in_box(5));
}
