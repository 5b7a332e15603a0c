#pragma once

// The base field F_q = F_p[x]/(base_modulus), q = p^e.
//
// Elements are stored as a packed code: the base-p digits of the code are the
// coefficients c_0, ..., c_{e-1} of the polynomial-basis representation. Code
// order is therefore the coefficient order with c_0 varying fastest, which is
// the enumeration order every deterministic choice in the library relies on.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/ff/dense_poly.hpp"
#include "ffbsd/ff/prime_field.hpp"

namespace ffbsd::ff {

struct FieldElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

class FieldSpec {
 public:
  using value_type = FieldElement;

  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  FieldSpec(std::uint32_t p, int e) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (p < 5) throw UnsupportedError("residue characteristic < 5 unsupported");
    if (e < 1) throw InputError("extension degree must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->e = e;
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) {
      q *= p;
      if (q > kMaxOrder) throw UnsupportedError("base field too large: q > 2^20");
    }
    impl->q = q;
    PrimeField fp(p);
    impl->base_modulus = dense::first_irreducible(fp, e);
    build_tables(*impl);
    impl_ = std::move(impl);
  }

  // Splits q = p^e; throws InputError if q is not a prime power.
  static FieldSpec from_order(std::uint64_t q) {
    if (q < 2) throw InputError("field order must be a prime power");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (rest != 1) throw InputError("field order " + std::to_string(q) + " is not a prime power");
    return FieldSpec(static_cast<std::uint32_t>(p), e);
  }

  std::uint32_t p() const { return impl_->p; }
  int e() const { return impl_->e; }
  std::uint64_t q() const { return impl_->q; }
  const std::vector<std::uint32_t>& base_modulus() const { return impl_->base_modulus; }

  std::uint64_t characteristic() const { return impl_->p; }
  std::uint64_t order() const { return impl_->q; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  bool is_zero(FieldElement a) const { return a.code == 0; }

  FieldElement add(FieldElement a, FieldElement b) const {
    const auto p = impl_->p;
    if (impl_->e == 1) {
      auto s = a.code + b.code;
      return {s >= p ? s - p : s};
    }
    std::uint32_t r = 0, place = 1;
    while (a.code || b.code) {
      auto d = a.code % p + b.code % p;
      if (d >= p) d -= p;
      r += d * place;
      place *= p;
      a.code /= p;
      b.code /= p;
    }
    return {r};
  }

  FieldElement neg(FieldElement a) const {
    const auto p = impl_->p;
    if (impl_->e == 1) return {a.code == 0 ? 0 : p - a.code};
    std::uint32_t r = 0, place = 1;
    while (a.code) {
      auto d = a.code % p;
      r += (d == 0 ? 0 : p - d) * place;
      place *= p;
      a.code /= p;
    }
    return {r};
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.code == 0 || b.code == 0) return {0};
    const auto& t = *impl_;
    auto l = t.log[a.code] + t.log[b.code];
    if (l >= t.q - 1) l -= static_cast<std::uint32_t>(t.q - 1);
    return {t.exp[l]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.code == 0) throw DivisionByZero("inverse of zero in F_q");
    const auto& t = *impl_;
    auto l = t.log[a.code];
    return {t.exp[l == 0 ? 0 : static_cast<std::uint32_t>(t.q - 1) - l]};
  }

  FieldElement pow(FieldElement a, std::int64_t e) const {
    if (a.code == 0) {
      if (e < 0) throw DivisionByZero("negative power of zero");
      return e == 0 ? one() : zero();
    }
    const auto& t = *impl_;
    const std::int64_t n = static_cast<std::int64_t>(t.q - 1);
    std::int64_t l = (static_cast<std::int64_t>(t.log[a.code]) * (e % n)) % n;
    if (l < 0) l += n;
    return {t.exp[static_cast<std::size_t>(l)]};
  }

  // +1 for nonzero squares, -1 for non-squares, 0 for zero.
  int quadratic_character(FieldElement a) const {
    if (a.code == 0) return 0;
    return (impl_->log[a.code] & 1u) ? -1 : 1;
  }

  // Image of an integer under Z -> F_p -> F_q.
  FieldElement from_int(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(impl_->p);
    return {static_cast<std::uint32_t>(r < 0 ? r + impl_->p : r)};
  }

  FieldElement from_index(std::uint64_t i) const { return {static_cast<std::uint32_t>(i % impl_->q)}; }
  std::uint64_t index(FieldElement a) const { return a.code; }

  std::vector<std::uint32_t> coefficients(FieldElement a) const {
    std::vector<std::uint32_t> c(impl_->e);
    for (auto& d : c) {
      d = a.code % impl_->p;
      a.code /= impl_->p;
    }
    return c;
  }

  FieldElement from_coefficients(std::span<const std::int64_t> c) const {
    if (static_cast<int>(c.size()) > impl_->e) throw InputError("too many F_p coefficients for an F_q element");
    std::uint32_t r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      auto v = c[i] % static_cast<std::int64_t>(impl_->p);
      if (v < 0) v += impl_->p;
      r = r * impl_->p + static_cast<std::uint32_t>(v);
    }
    return {r};
  }

  // Generator used for the log tables (smallest primitive code).
  FieldElement primitive_element() const { return {impl_->exp[1]}; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p() == b.p() && a.e() == b.e(); }

 private:
  struct Impl {
    std::uint32_t p = 0;
    int e = 0;
    std::uint64_t q = 0;
    std::vector<std::uint32_t> base_modulus;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint32_t> exp;
  };

  // Polynomial-basis multiplication over F_p, used only to build the tables.
  static std::uint32_t slow_mul(const Impl& t, std::uint32_t a, std::uint32_t b) {
    PrimeField fp(t.p);
    auto unpack = [&](std::uint32_t c) {
      dense::Poly<PrimeField> v;
      for (int i = 0; i < t.e; ++i) {
        v.push_back(c % t.p);
        c /= t.p;
      }
      dense::trim(fp, v);
      return v;
    };
    dense::Poly<PrimeField> m(t.base_modulus.begin(), t.base_modulus.end());
    auto prod = dense::mulmod(fp, unpack(a), unpack(b), m);
    std::uint32_t r = 0;
    for (std::size_t i = prod.size(); i-- > 0;) r = r * t.p + prod[i];
    return r;
  }

  static void build_tables(Impl& t) {
    const auto q = static_cast<std::uint32_t>(t.q);
    t.log.assign(q, 0);
    t.exp.assign(q, 0);
    const auto divisors = dense::detail::prime_divisors(q - 1);
    auto pow_slow = [&](std::uint32_t g, std::uint64_t e) {
      std::uint32_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(t, r, g);
        g = slow_mul(t, g, g);
        e >>= 1;
      }
      return r;
    };
    std::uint32_t gen = 0;
    for (std::uint32_t g = 1; g < q; ++g) {
      bool primitive = true;
      for (auto r : divisors) {
        if (pow_slow(g, (q - 1) / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = g;
        break;
      }
    }
    std::uint32_t cur = 1;
    for (std::uint32_t k = 0; k + 1 < q; ++k) {
      t.exp[k] = cur;
      t.log[cur] = k;
      cur = slow_mul(t, cur, gen);
    }
    t.exp[q - 1] = 1;
  }

  std::shared_ptr<const Impl> impl_;
};

}  // namespace ffbsd::ff
