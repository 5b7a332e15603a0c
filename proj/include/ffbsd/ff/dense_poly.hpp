#pragma once

// Dense univariate polynomial algorithms over an arbitrary finite field
// context. A polynomial is a little-endian coefficient vector with no
// trailing zeros; the zero polynomial is the empty vector.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::ff {

template <class F>
concept FieldContext = requires(const F& f, typename F::value_type a, std::uint64_t i) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.order() } -> std::convertible_to<std::uint64_t>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.from_index(i) } -> std::same_as<typename F::value_type>;
  { f.index(a) } -> std::convertible_to<std::uint64_t>;
};

namespace dense {

template <class F>
using Poly = std::vector<typename F::value_type>;

template <class F>
void trim(const F& f, Poly<F>& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

template <class P>
int degree(const P& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class F>
Poly<F> constant(const F& f, typename F::value_type c) {
  if (f.is_zero(c)) return {};
  return {c};
}

// The monomial x.
template <class F>
Poly<F> x_poly(const F& f) {
  return {f.zero(), f.one()};
}

template <class F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> scale(const F& f, const Poly<F>& a, typename F::value_type c) {
  if (f.is_zero(c)) return {};
  Poly<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(f, r);
  return r;
}

// Quotient and remainder; throws DivisionByZero for a zero divisor.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw DivisionByZero("polynomial division");
  if (a.size() < b.size()) return {{}, a};
  Poly<F> rem = a;
  Poly<F> quo(a.size() - b.size() + 1, f.zero());
  const auto lead_inv = f.inv(b.back());
  for (int i = degree(rem); i >= degree(b); --i) {
    const auto c = f.mul(rem[i], lead_inv);
    if (f.is_zero(c)) continue;
    const int shift = i - degree(b);
    quo[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b[j]));
  }
  trim(f, quo);
  trim(f, rem);
  return {std::move(quo), std::move(rem)};
}

template <class F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).second;
}

template <class F>
Poly<F> monic(const F& f, const Poly<F>& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

template <class F>
Poly<F> derivative(const F& f, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1);
  const auto p = f.characteristic();
  for (std::size_t i = 1; i < a.size(); ++i) {
    // i * a[i], i reduced mod p and accumulated by repeated addition of one
    auto k = f.zero();
    for (std::uint64_t j = 0; j < i % p; ++j) k = f.add(k, f.one());
    r[i - 1] = f.mul(k, a[i]);
  }
  trim(f, r);
  return r;
}

template <class F>
typename F::value_type eval(const F& f, const Poly<F>& a, typename F::value_type x) {
  auto acc = f.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

template <class F>
Poly<F> mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return mod(f, mul(f, a, b), m);
}

template <class F>
Poly<F> powmod(const F& f, Poly<F> base, const Integer& e, const Poly<F>& m) {
  Poly<F> result = mod(f, constant(f, f.one()), m);
  base = mod(f, base, m);
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (long i = static_cast<long>(bits) - 1; i >= 0; --i) {
    result = mulmod(f, result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = mulmod(f, result, base, m);
  }
  return result;
}

template <class F>
Poly<F> powmod(const F& f, const Poly<F>& base, std::uint64_t e, const Poly<F>& m) {
  return powmod(f, base, Integer(static_cast<unsigned long>(e)), m);
}

namespace detail {

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// Rabin's irreducibility test.
template <class F>
bool is_irreducible(const F& f, const Poly<F>& a) {
  const int n = degree(a);
  if (n <= 0) return false;
  if (n == 1) return true;
  const auto q = static_cast<std::uint64_t>(f.order());
  const Poly<F> m = monic(f, a);
  const Poly<F> x = x_poly(f);
  // frob[k] = x^(q^k) mod m
  std::vector<Poly<F>> frob{mod(f, x, m)};
  for (int k = 1; k <= n; ++k) frob.push_back(powmod(f, frob.back(), q, m));
  if (sub(f, frob[n], mod(f, x, m)).size() != 0) return false;
  for (auto r : detail::prime_divisors(static_cast<std::uint64_t>(n))) {
    auto g = gcd(f, sub(f, frob[n / r], x), m);
    if (degree(g) != 0) return false;
  }
  return true;
}

// Monic polynomial of degree n whose non-leading coefficients are the base-q
// digits of index (constant term least significant).
template <class F>
Poly<F> monic_from_index(const F& f, int n, std::uint64_t index) {
  const auto q = static_cast<std::uint64_t>(f.order());
  Poly<F> r(n + 1);
  for (int i = 0; i < n; ++i) {
    r[i] = f.from_index(index % q);
    index /= q;
  }
  r[n] = f.one();
  return r;
}

template <class F>
std::uint64_t monic_index(const F& f, const Poly<F>& a) {
  const auto q = static_cast<std::uint64_t>(f.order());
  std::uint64_t idx = 0;
  for (int i = degree(a) - 1; i >= 0; --i) idx = idx * q + f.index(a[i]);
  return idx;
}

// First monic irreducible of degree n in index order.
template <class F>
Poly<F> first_irreducible(const F& f, int n) {
  for (std::uint64_t idx = 0;; ++idx) {
    auto cand = monic_from_index(f, n, idx);
    if (is_irreducible(f, cand)) return cand;
  }
}

// p-th root of a polynomial whose derivative vanishes: a(x) = b(x^p).
template <class F>
Poly<F> pth_root(const F& f, const Poly<F>& a) {
  const auto p = f.characteristic();
  const auto q = static_cast<std::uint64_t>(f.order());
  // c^(1/p) = c^(q/p) in F_q
  Poly<F> r;
  for (std::size_t i = 0; i < a.size(); i += p) {
    auto c = a[i];
    auto acc = f.one();
    std::uint64_t e = q / p;
    auto b = c;
    while (e) {
      if (e & 1) acc = f.mul(acc, b);
      b = f.mul(b, b);
      e >>= 1;
    }
    r.push_back(acc);
  }
  trim(f, r);
  return r;
}

// Square-free factorization of a monic polynomial: list of (factor, multiplicity).
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_factor(const F& f, const Poly<F>& a) {
  std::vector<std::pair<Poly<F>, int>> out;
  if (degree(a) <= 0) return out;
  const int p = static_cast<int>(f.characteristic());
  Poly<F> c = gcd(f, a, derivative(f, a));
  Poly<F> w = divmod(f, monic(f, a), c).first;
  int i = 1;
  while (degree(w) > 0) {
    Poly<F> y = gcd(f, w, c);
    Poly<F> fac = divmod(f, w, y).first;
    if (degree(fac) > 0) out.emplace_back(monic(f, fac), i);
    w = y;
    c = divmod(f, c, y).first;
    ++i;
  }
  if (degree(c) > 0) {
    for (auto& [g, m] : squarefree_factor(f, pth_root(f, monic(f, c)))) out.emplace_back(g, m * p);
  }
  return out;
}

// Distinct-degree factorization of a square-free monic polynomial.
template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree_factor(const F& f, Poly<F> a) {
  std::vector<std::pair<Poly<F>, int>> out;
  const auto q = static_cast<std::uint64_t>(f.order());
  const Poly<F> x = x_poly(f);
  Poly<F> h = mod(f, x, a);
  for (int d = 1; 2 * d <= degree(a); ++d) {
    h = powmod(f, h, q, a);
    Poly<F> g = gcd(f, sub(f, h, x), a);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      a = divmod(f, a, g).first;
      h = mod(f, h, a);
    }
  }
  if (degree(a) > 0) out.emplace_back(monic(f, a), degree(a));
  return out;
}

// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of
// degree d. Deterministic: the probe sequence comes from a fixed seed.
template <class F>
std::vector<Poly<F>> equal_degree_factor(const F& f, const Poly<F>& a, int d) {
  std::vector<Poly<F>> out;
  if (degree(a) == d) {
    out.push_back(monic(f, a));
    return out;
  }
  const Integer qd = ipow(Integer(static_cast<unsigned long>(f.order())), static_cast<unsigned long>(d));
  const Integer e = (qd - 1) / 2;
  std::mt19937_64 rng(0x5eed'f00d'1234ULL + static_cast<std::uint64_t>(degree(a)));
  const auto q = static_cast<std::uint64_t>(f.order());
  std::vector<Poly<F>> stack{monic(f, a)};
  while (!stack.empty()) {
    Poly<F> g = std::move(stack.back());
    stack.pop_back();
    if (degree(g) == d) {
      out.push_back(std::move(g));
      continue;
    }
    for (;;) {
      Poly<F> probe(degree(g));
      for (auto& c : probe) c = f.from_index(rng() % q);
      trim(f, probe);
      if (degree(probe) <= 0) continue;
      Poly<F> t = sub(f, powmod(f, probe, e, g), constant(f, f.one()));
      Poly<F> s = gcd(f, t, g);
      if (degree(s) > 0 && degree(s) < degree(g)) {
        stack.push_back(divmod(f, g, s).first);
        stack.back() = monic(f, stack.back());
        stack.push_back(s);
        break;
      }
    }
  }
  return out;
}

// Full factorization into monic irreducibles with multiplicities, sorted by
// (degree, index).
template <class F>
std::vector<std::pair<Poly<F>, int>> factor(const F& f, const Poly<F>& a) {
  std::vector<std::pair<Poly<F>, int>> out;
  for (auto& [sf, mult] : squarefree_factor(f, monic(f, a))) {
    for (auto& [dd, d] : distinct_degree_factor(f, sf)) {
      for (auto& g : equal_degree_factor(f, dd, d)) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [&](const auto& l, const auto& r) {
    if (degree(l.first) != degree(r.first)) return degree(l.first) < degree(r.first);
    return monic_index(f, l.first) < monic_index(f, r.first);
  });
  // merge equal factors that arrived from different square-free layers
  std::vector<std::pair<Poly<F>, int>> merged;
  for (auto& fm : out) {
    if (!merged.empty() && merged.back().first == fm.first) {
      merged.back().second += fm.second;
    } else {
      merged.push_back(std::move(fm));
    }
  }
  return merged;
}

// All roots of a polynomial that splits into distinct linear factors.
template <class F>
std::vector<typename F::value_type> split_roots(const F& f, const Poly<F>& a) {
  std::vector<typename F::value_type> roots;
  for (auto& lin : equal_degree_factor(f, a, 1)) roots.push_back(f.neg(lin[0]));
  return roots;
}

}  // namespace dense
}  // namespace ffbsd::ff
