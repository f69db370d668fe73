#include "cartan/polynomial.hpp"

#include <cctype>
#include <stdexcept>

namespace cartan {

AlgebraContext AlgebraContext::hamiltonian(std::uint32_t p, std::size_t n) {
  if (n < 2 || n % 2) throw std::domain_error("Hamiltonian context needs even n >= 2");
  return {PrimeField(p), n, n / 2};
}

AlgebraContext AlgebraContext::contact(std::uint32_t p, std::size_t n) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("contact context needs odd n >= 3");
  return {PrimeField(p), n, (n - 1) / 2};
}

Polynomial Polynomial::monomial(const AlgebraContext& ctx, const MultiIndex& a, Residue c) {
  Polynomial f(ctx);
  f.add_term(a, c);
  return f;
}

Polynomial Polynomial::constant(const AlgebraContext& ctx, Residue c) {
  return monomial(ctx, MultiIndex(ctx.n), c);
}

Residue Polynomial::coefficient(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const MultiIndex& a, Residue c) {
  if (a.size() != ctx_.n) throw std::domain_error("polynomial: monomial has wrong number of variables");
  c = ctx_.field.reduce(c);
  if (c == 0 || !a.in_box(ctx_.p())) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second = ctx_.field.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same(const Polynomial& o) const {
  if (!(ctx_ == o.ctx_)) throw std::domain_error("polynomial: context mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same(o);
  Polynomial r(*this);
  for (const auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(ctx_.field.neg(1)); }

Polynomial Polynomial::scaled(Residue c) const {
  Polynomial r(ctx_);
  for (const auto& [a, v] : terms_) r.add_term(a, ctx_.field.mul(v, c));
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

Polynomial multiply(const Polynomial& f, const Polynomial& g) {
  if (!(f.context() == g.context())) throw std::domain_error("multiply: context mismatch");
  const auto& F = f.context().field;
  Polynomial r(f.context());
  for (const auto& [a, c] : f.terms())
    for (const auto& [b, d] : g.terms()) r.add_term(a + b, F.mul(c, d));
  return r;
}

Polynomial partial(std::size_t axis, const Polynomial& f) {
  if (axis >= f.context().n) throw std::domain_error("partial: axis out of range");
  Polynomial r(f.context());
  for (const auto& [a, c] : f.terms()) {
    if (a[axis] == 0) continue;
    MultiIndex b(a);
    b.add_at(axis, -1);
    r.add_term(b, f.context().field.mul(c, f.context().field.reduce(a[axis])));
  }
  return r;
}

Polynomial hamiltonian_apply(const Polynomial& f, const Polynomial& g) {
  if (!(f.context() == g.context())) throw std::domain_error("hamiltonian_apply: context mismatch");
  const auto& ctx = f.context();
  Polynomial r(ctx);
  for (std::size_t j = 0; j < 2 * ctx.pairs; ++j) {
    Polynomial term = multiply(partial(j, f), partial(conjugate_index(j, ctx.pairs), g));
    r = index_sign(j, ctx.pairs) > 0 ? r + term : r - term;
  }
  return r;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [a, c] = *it;
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(i + 1);
      if (a[i] > 1) mono += '^' + std::to_string(a[i]);
    }
    if (mono.empty()) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + '*';
      s += mono;
    }
  }
  return s;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(const AlgebraContext& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

  Polynomial parse() {
    Polynomial result(ctx_);
    skip_space();
    if (pos_ == text_.size()) fail("empty input");
    bool first = true;
    while (pos_ < text_.size()) {
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(result, sign);
      skip_space();
    }
    return result;
  }

 private:
  void parse_term(Polynomial& out, std::int64_t sign) {
    std::int64_t coeff = 1;
    MultiIndex mono(ctx_.n);
    bool any = false;
    while (true) {
      skip_space();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = coeff * (number() % ctx_.p()) % ctx_.p();
      } else if (peek() == 'x') {
        ++pos_;
        auto var = number();
        if (var < 1 || static_cast<std::size_t>(var) > ctx_.n) fail("variable index out of range");
        std::int64_t power = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          power = number();
        }
        // anything at or above p truncates to zero anyway
        if (power > static_cast<std::int64_t>(ctx_.p())) power = ctx_.p();
        mono.add_at(static_cast<std::size_t>(var - 1), static_cast<int>(power));
      } else {
        fail("expected a coefficient or a variable");
      }
      any = true;
      skip_space();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    out.add_term(mono, ctx_.field.reduce(sign * coeff));
  }

  std::int64_t number() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1ll << 40)) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos_) + ": " + what);
  }

  const AlgebraContext& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const AlgebraContext& ctx, std::string_view text) {
  return PolynomialParser(ctx, text).parse();
}

}  // namespace cartan
