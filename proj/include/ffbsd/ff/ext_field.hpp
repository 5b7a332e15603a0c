#pragma once

// F_{q^n} = F_q[u]/(m_n) as a single-step quotient of the base field.
//
// Elements are packed codes whose base-q digits are the F_q coefficients of
// u^0, ..., u^{n-1}. F_q embeds as the codes below q. When q^n <= 2^20 the
// context carries discrete log, antilog and Zech tables; every arithmetic
// operation and the quadratic character then run in O(1). Larger fields fall
// back to polynomial arithmetic.

#include <array>
#include <compare>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/ff/dense_poly.hpp"
#include "ffbsd/ff/field.hpp"

namespace ffbsd::ff {

struct ExtFieldElement {
  std::uint64_t code = 0;
  friend auto operator<=>(const ExtFieldElement&, const ExtFieldElement&) = default;
};

// Discrete-log view of a tabulated field. Logs live in [0, order-1); the
// value order-1 encodes zero.
struct LogTables {
  std::uint32_t order = 0;
  std::uint32_t zero_log = 0;            // order - 1
  std::vector<std::uint32_t> log;        // code -> log
  std::vector<std::uint32_t> exp;        // log -> code
  std::vector<std::uint32_t> zech;       // k -> log(1 + g^k), zero_log if 1 + g^k = 0
  std::vector<std::int8_t> zech_chi;     // k -> quadratic character of 1 + g^k

  std::uint32_t mul_log(std::uint32_t a, std::uint32_t b) const {
    if (a == zero_log || b == zero_log) return zero_log;
    auto s = a + b;
    return s >= zero_log ? s - zero_log : s;
  }
  // log(g^a + g^b)
  std::uint32_t add_log(std::uint32_t a, std::uint32_t b) const {
    if (a == zero_log) return b;
    if (b == zero_log) return a;
    auto d = b >= a ? b - a : b + zero_log - a;
    auto z = zech[d];
    if (z == zero_log) return zero_log;
    auto s = a + z;
    return s >= zero_log ? s - zero_log : s;
  }
};

class ExtField {
 public:
  using value_type = ExtFieldElement;

  static constexpr std::uint64_t kTableLimit = 1u << 20;

  ExtField(const FieldSpec& base, int n) {
    if (n < 1) throw InputError("extension degree must be >= 1");
    auto impl = std::make_shared<Impl>(base);
    impl->n = n;
    std::uint64_t order = 1;
    for (int i = 0; i < n; ++i) {
      impl->qpow.push_back(order);
      if (order > (std::uint64_t{1} << 62) / base.q()) throw UnsupportedError("extension field too large");
      order *= base.q();
    }
    impl->order = order;
    impl->modulus = dense::first_irreducible(base, n);
    impl_ = std::move(impl);
    if (order <= kTableLimit) build_tables();
  }

  const FieldSpec& base() const { return impl_->base; }
  int degree() const { return impl_->n; }
  std::uint64_t order() const { return impl_->order; }
  std::uint64_t characteristic() const { return impl_->base.p(); }
  const dense::Poly<FieldSpec>& modulus() const { return impl_->modulus; }
  const LogTables* tables() const { return impl_->tables.order ? &impl_->tables : nullptr; }

  ExtFieldElement zero() const { return {0}; }
  ExtFieldElement one() const { return {1}; }
  bool is_zero(ExtFieldElement a) const { return a.code == 0; }

  ExtFieldElement embed(FieldElement c) const { return {c.code}; }

  std::vector<FieldElement> coefficients(ExtFieldElement a) const {
    const auto q = impl_->base.q();
    std::vector<FieldElement> c(impl_->n);
    for (auto& d : c) {
      d = FieldElement{static_cast<std::uint32_t>(a.code % q)};
      a.code /= q;
    }
    return c;
  }

  ExtFieldElement from_coefficients(std::span<const FieldElement> c) const {
    if (static_cast<int>(c.size()) > impl_->n) throw InputError("too many coefficients for extension element");
    std::uint64_t r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * impl_->base.q() + c[i].code;
    return {r};
  }

  ExtFieldElement add(ExtFieldElement a, ExtFieldElement b) const {
    const auto& F = impl_->base;
    const auto q = F.q();
    if (impl_->n == 1) return {F.add({static_cast<std::uint32_t>(a.code)}, {static_cast<std::uint32_t>(b.code)}).code};
    std::uint64_t r = 0, place = 1;
    while (a.code || b.code) {
      auto d = F.add({static_cast<std::uint32_t>(a.code % q)}, {static_cast<std::uint32_t>(b.code % q)});
      r += d.code * place;
      place *= q;
      a.code /= q;
      b.code /= q;
    }
    return {r};
  }

  ExtFieldElement neg(ExtFieldElement a) const {
    const auto& F = impl_->base;
    const auto q = F.q();
    std::uint64_t r = 0, place = 1;
    while (a.code) {
      r += F.neg({static_cast<std::uint32_t>(a.code % q)}).code * place;
      place *= q;
      a.code /= q;
    }
    return {r};
  }

  ExtFieldElement sub(ExtFieldElement a, ExtFieldElement b) const { return add(a, neg(b)); }

  ExtFieldElement mul(ExtFieldElement a, ExtFieldElement b) const {
    if (a.code == 0 || b.code == 0) return {0};
    if (const auto* t = tables()) {
      return {t->exp[t->mul_log(t->log[a.code], t->log[b.code])]};
    }
    return slow_mul(a, b);
  }

  ExtFieldElement pow(ExtFieldElement a, const Integer& e) const {
    if (a.code == 0) {
      if (e < 0) throw DivisionByZero("negative power of zero");
      return e == 0 ? one() : zero();
    }
    const Integer group = Integer(static_cast<unsigned long>(order() - 1));
    Integer r = e % group;
    if (r < 0) r += group;
    if (const auto* t = tables()) {
      Integer l = (Integer(t->log[a.code]) * r) % group;
      return {t->exp[l.get_ui()]};
    }
    ExtFieldElement acc = one();
    const auto bits = mpz_sizeinbase(r.get_mpz_t(), 2);
    for (long i = static_cast<long>(bits) - 1; i >= 0; --i) {
      acc = slow_mul(acc, acc);
      if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = slow_mul(acc, a);
    }
    return acc;
  }

  template <std::integral I>
  ExtFieldElement pow(ExtFieldElement a, I e) const {
    if constexpr (std::is_signed_v<I>) return pow(a, Integer(static_cast<long>(e)));
    else return pow(a, Integer(static_cast<unsigned long>(e)));
  }

  ExtFieldElement inv(ExtFieldElement a) const {
    if (a.code == 0) throw DivisionByZero("inverse of zero in F_{q^n}");
    if (const auto* t = tables()) {
      auto l = t->log[a.code];
      return {t->exp[l == 0 ? 0 : t->zero_log - l]};
    }
    return pow(a, order() - 2);
  }

  // x -> x^q, the generator of Gal(F_{q^n}/F_q).
  ExtFieldElement frobenius(ExtFieldElement a) const {
    if (a.code == 0) return a;
    if (const auto* t = tables()) {
      auto l = static_cast<std::uint64_t>(t->log[a.code]) * impl_->base.q() % t->zero_log;
      return {t->exp[l]};
    }
    return pow(a, impl_->base.q());
  }

  // 0 for zero, +1 for nonzero squares, -1 otherwise.
  int quadratic_character(ExtFieldElement a) const {
    if (a.code == 0) return 0;
    if (const auto* t = tables()) return (t->log[a.code] & 1u) ? -1 : 1;
    return pow(a, (order() - 1) / 2).code == 1 ? 1 : -1;
  }

  ExtFieldElement from_index(std::uint64_t i) const { return {i % impl_->order}; }
  std::uint64_t index(ExtFieldElement a) const { return a.code; }

  // The class u of the polynomial variable, a root of m_n.
  ExtFieldElement generator_u() const {
    if (impl_->n == 1) return embed(impl_->base.neg(impl_->modulus[0]));
    return {impl_->base.q()};
  }

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.impl_ == b.impl_ || (a.base() == b.base() && a.degree() == b.degree());
  }

 private:
  struct Impl {
    explicit Impl(FieldSpec b) : base(std::move(b)) {}
    FieldSpec base;
    int n = 0;
    std::uint64_t order = 0;
    std::vector<std::uint64_t> qpow;
    dense::Poly<FieldSpec> modulus;
    LogTables tables;
  };

  ExtFieldElement slow_mul(ExtFieldElement a, ExtFieldElement b) const {
    const auto& F = impl_->base;
    const int n = impl_->n;
    auto ca = coefficients(a);
    auto cb = coefficients(b);
    std::vector<FieldElement> prod(2 * n - 1, F.zero());
    for (int i = 0; i < n; ++i) {
      if (F.is_zero(ca[i])) continue;
      for (int j = 0; j < n; ++j) prod[i + j] = F.add(prod[i + j], F.mul(ca[i], cb[j]));
    }
    const auto& m = impl_->modulus;  // monic of degree n
    for (int k = 2 * n - 2; k >= n; --k) {
      const auto c = prod[k];
      if (F.is_zero(c)) continue;
      for (int j = 0; j <= n; ++j) prod[k - n + j] = F.sub(prod[k - n + j], F.mul(c, m[j]));
    }
    prod.resize(n);
    return from_coefficients(prod);
  }

  void build_tables() {
    auto& impl = *impl_;
    const auto Q = static_cast<std::uint32_t>(impl.order);
    const auto divisors = dense::detail::prime_divisors(Q - 1);
    auto slow_pow = [&](ExtFieldElement g, std::uint64_t e) {
      ExtFieldElement r = one();
      while (e) {
        if (e & 1) r = slow_mul(r, g);
        g = slow_mul(g, g);
        e >>= 1;
      }
      return r;
    };
    ExtFieldElement gen{0};
    for (std::uint64_t c = 1; c < Q; ++c) {
      bool primitive = true;
      for (auto r : divisors) {
        if (slow_pow({c}, (Q - 1) / r).code == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = {c};
        break;
      }
    }
    LogTables t;
    t.order = Q;
    t.zero_log = Q - 1;
    t.log.assign(Q, 0);
    t.exp.assign(Q, 0);
    t.log[0] = t.zero_log;
    ExtFieldElement cur = one();
    for (std::uint32_t k = 0; k + 1 < Q; ++k) {
      t.exp[k] = static_cast<std::uint32_t>(cur.code);
      t.log[cur.code] = k;
      cur = slow_mul(cur, gen);
    }
    t.exp[Q - 1] = 0;
    t.zech.assign(Q - 1, 0);
    t.zech_chi.assign(Q - 1, 0);
    for (std::uint32_t k = 0; k + 1 < Q; ++k) {
      auto s = add(one(), {t.exp[k]});
      t.zech[k] = t.log[s.code];
      t.zech_chi[k] = s.code == 0 ? 0 : ((t.zech[k] & 1u) ? -1 : 1);
    }
    impl.tables = std::move(t);
  }

  // never mutated once the constructor returns
  std::shared_ptr<Impl> impl_;
};

// F_{q^n} with the deterministic modulus m_n (first monic irreducible of
// degree n, constant coefficient varying fastest). Contexts are cached per
// (p, e, n) and shared; construction is serialized.
inline ExtField build_tower(const FieldSpec& spec, int n) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, int, int>, ExtField> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(spec.p(), spec.e(), n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  ExtField f(spec, n);
  cache.emplace(key, f);
  return f;
}

}  // namespace ffbsd::ff
