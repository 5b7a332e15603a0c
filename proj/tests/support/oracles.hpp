#pragma once

// Test-side reference computations. Deliberately brute force: point counts
// by enumerating (x, y), minimal models by repeated division, Kodaira types
// from the valuation table, L(T) from fiber-by-fiber counts.

#include <algorithm>
#include <random>
#include <vector>

#include "ffbsd/curve/curve.hpp"
#include "ffbsd/funcfield/place.hpp"
#include "ffbsd/localred/local_data.hpp"
#include "ffbsd/rational.hpp"

namespace oracle {

using namespace ffbsd;
using curve::Curve;
using funcfield::ExtField;
using funcfield::ExtFieldElement;
using funcfield::FieldSpec;
using funcfield::Place;
using funcfield::Poly;

inline int val(const Poly& f, const Poly& pi) { return f.is_zero() ? 1 << 20 : f.valuation(pi); }

// Model integral and minimal at v, written in a coordinate where v is the
// place pi = 0 (u = 1/t at Infinity).
struct LocalModel {
  Poly a, b, pi;
};

inline LocalModel minimal_at(const Curve& E, const Place& v) {
  const auto& F = E.field();
  Poly a = E.a(), b = E.b();
  Poly pi = v.uniformizer();
  if (v.is_infinity()) {
    int m = 0;
    while (4 * m < a.degree() || 6 * m < b.degree()) ++m;
    auto rev = [&](const Poly& f, int w) {
      std::vector<funcfield::FieldElement> c(w + 1, F.zero());
      for (int i = 0; i <= f.degree(); ++i) c[w - i] = f.coeff(i);
      return Poly(F, c);
    };
    a = rev(a, 4 * m);
    b = rev(b, 6 * m);
    pi = Poly::t(F);
  }
  while (val(a, pi) >= 4 && val(b, pi) >= 6) {
    if (!a.is_zero()) a = a / pi.pow(4);
    if (!b.is_zero()) b = b / pi.pow(6);
  }
  return {a, b, pi};
}

inline Poly disc(const Poly& a, const Poly& b) { return (a.pow(3).scaled(4) + b.pow(2).scaled(27)).scaled(-16); }

// Number of nonsingular points, O included, on y^2 = x^3 + A x + B over K.
inline std::int64_t count_nonsingular(const ExtField& K, ExtFieldElement A, ExtFieldElement B) {
  std::vector<int> roots(K.order(), 0);
  for (std::uint64_t y = 0; y < K.order(); ++y) ++roots[K.mul({y}, {y}).code];
  std::int64_t n = 1;
  for (std::uint64_t xi = 0; xi < K.order(); ++xi) {
    ExtFieldElement x{xi};
    auto f = K.add(K.mul(K.mul(x, x), x), K.add(K.mul(A, x), B));
    n += roots[f.code];
  }
  auto d = K.add(K.mul(K.embed(K.base().from_int(4)), K.mul(K.mul(A, A), A)), K.mul(K.embed(K.base().from_int(27)), K.mul(B, B)));
  if (K.is_zero(d)) --n;  // the node or cusp, which lies on y = 0
  return n;
}

struct Reduction {
  ExtField K;
  ExtFieldElement root;
  ExtFieldElement A, B;
};

inline Reduction reduce(const LocalModel& M) {
  auto rm = funcfield::residue_map(Place::finite_unchecked(M.pi));
  return {rm.field, rm.root, M.a.eval(rm.field, rm.root), M.b.eval(rm.field, rm.root)};
}

inline std::int64_t brute_reduced_count(const Curve& E, const Place& v) {
  auto M = minimal_at(E, v);
  auto r = reduce(M);
  return count_nonsingular(r.K, r.A, r.B);
}

struct KodairaGuess {
  std::string symbol;
  int f = 0;
};

inline KodairaGuess kodaira_from_valuations(const Curve& E, const Place& v) {
  auto M = minimal_at(E, v);
  const int vA = val(M.a, M.pi), vB = val(M.b, M.pi), vD = val(disc(M.a, M.b), M.pi);
  if (vD == 0) return {"I0", 0};
  if (vA == 0) return {"I" + std::to_string(vD), 1};
  switch (vD) {
    case 2: return {"II", 2};
    case 3: return {"III", 2};
    case 4: return {"IV", 2};
    case 6: return {"I0*", 2};
    case 8: return {"IV*", 2};
    case 9: return {"III*", 2};
    case 10: return {"II*", 2};
    default: break;
  }
  if (vA == 2 && vB == 3 && vD > 6) return {"I" + std::to_string(vD - 6) + "*", 2};
  return {"?", -1};
}

inline bool is_square(const ExtField& K, ExtFieldElement z) {
  for (std::uint64_t y = 0; y < K.order(); ++y)
    if (K.mul({y}, {y}) == z) return true;
  return false;
}

// Tamagawa number by direct inspection of the reduced data; nullopt for In*.
inline std::optional<int> tamagawa_oracle(const Curve& E, const Place& v) {
  auto M = minimal_at(E, v);
  const int vD = val(disc(M.a, M.b), M.pi);
  auto g = kodaira_from_valuations(E, v);
  auto rm = funcfield::residue_map(Place::finite_unchecked(M.pi));
  const auto& K = rm.field;
  auto res = [&](const Poly& f, int k) { return f.is_zero() ? K.zero() : (f / M.pi.pow(k)).eval(K, rm.root); };
  if (g.f == 0) return 1;
  if (g.f == 1) {
    // node at the double root x0 of x^3 + A x + B; tangents y = +-sqrt(3 x0)(x - x0)
    auto A = res(M.a, 0), B = res(M.b, 0);
    for (std::uint64_t xi = 0; xi < K.order(); ++xi) {
      ExtFieldElement x{xi};
      auto f = K.add(K.mul(K.mul(x, x), x), K.add(K.mul(A, x), B));
      auto fp = K.add(K.mul(K.embed(K.base().from_int(3)), K.mul(x, x)), A);
      if (K.is_zero(f) && K.is_zero(fp)) {
        const bool split = is_square(K, K.mul(K.embed(K.base().from_int(3)), x));
        return split ? vD : (vD % 2 ? 1 : 2);
      }
    }
    return std::nullopt;
  }
  if (g.symbol == "II" || g.symbol == "II*") return 1;
  if (g.symbol == "III" || g.symbol == "III*") return 2;
  if (g.symbol == "IV") return is_square(K, res(M.b, 2)) ? 3 : 1;
  if (g.symbol == "IV*") return is_square(K, res(M.b, 4)) ? 3 : 1;
  if (g.symbol == "I0*") {
    auto A = res(M.a, 2), B = res(M.b, 3);
    int roots = 0;
    for (std::uint64_t xi = 0; xi < K.order(); ++xi) {
      ExtFieldElement x{xi};
      if (K.is_zero(K.add(K.mul(K.mul(x, x), x), K.add(K.mul(A, x), B)))) ++roots;
    }
    return 1 + roots;
  }
  return std::nullopt;
}

// log L(T) = sum_n A_n T^n / n with A_n = sum over x in P^1(F_{q^n}) of the
// fiber trace, computed here by counting every fiber.
inline Integer brute_A(const Curve& E, int n) {
  const auto& F = E.field();
  ExtField K = ff::build_tower(F, n);
  const auto Q = static_cast<std::int64_t>(K.order());
  // finite-minimal model, by dividing out every square-enough factor
  Poly a = E.a(), b = E.b();
  for (const auto& [pi, _] : gcd(a, b).factor()) {
    while (val(a, pi) >= 4 && val(b, pi) >= 6) {
      if (!a.is_zero()) a = a / pi.pow(4);
      if (!b.is_zero()) b = b / pi.pow(6);
    }
  }
  Integer total = 0;
  auto trace = [&](ExtFieldElement A, ExtFieldElement B) {
    auto d = K.add(K.mul(K.embed(F.from_int(4)), K.mul(K.mul(A, A), A)), K.mul(K.embed(F.from_int(27)), K.mul(B, B)));
    const std::int64_t N = count_nonsingular(K, A, B);
    return K.is_zero(d) ? Q - N : Q + 1 - N;
  };
  for (std::uint64_t xi = 0; xi < K.order(); ++xi) {
    ExtFieldElement x{xi};
    total += trace(a.eval(K, x), b.eval(K, x));
  }
  auto inf = minimal_at(E, Place::infinity(F));
  total += trace(K.embed(inf.a.coeff(0)), K.embed(inf.b.coeff(0)));
  return total;
}

// First D+1 coefficients of exp(sum A_n T^n / n), over the rationals.
inline std::vector<Rational> brute_L(const Curve& E, int D) {
  std::vector<Rational> logc(D + 1, 0);
  for (int n = 1; n <= D; ++n) logc[n] = Rational(brute_A(E, n)) / n;
  // exp via l' = (log)' l
  std::vector<Rational> l(D + 1, 0);
  l[0] = 1;
  for (int n = 1; n <= D; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k) s += Rational(k) * logc[k] * l[n - k];
    l[n] = s / n;
  }
  return l;
}

inline Poly random_poly(const FieldSpec& F, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::uint64_t> coef(0, F.q() - 1);
  std::vector<funcfield::FieldElement> c(deg(rng) + 1);
  for (auto& x : c) x = F.from_index(coef(rng));
  return Poly(F, c);
}

// Non-constant, nonzero discriminant, deg a, deg b <= max_deg.
inline Curve random_curve(const FieldSpec& F, int max_deg, std::mt19937_64& rng) {
  for (;;) {
    Poly a = random_poly(F, max_deg, rng), b = random_poly(F, max_deg, rng);
    if (a.is_constant() && b.is_constant()) continue;
    if (disc(a, b).is_zero()) continue;
    return Curve(a, b);
  }
}

// Random curves whose conductor degree is at least 4 (so L is a polynomial).
inline std::vector<Curve> random_corpus(const FieldSpec& F, int count, int max_deg, std::uint64_t seed, int max_D = 1 << 20) {
  std::mt19937_64 rng(seed);
  std::vector<Curve> out;
  while (static_cast<int>(out.size()) < count) {
    Curve E = random_curve(F, max_deg, rng);
    int cond = 0;
    for (const auto& v : localred::relevant_places(E)) cond += kodaira_from_valuations(E, v).f * v.degree();
    if (cond < 4 || cond - 4 > max_D) continue;
    out.push_back(E);
  }
  return out;
}

}  // namespace oracle
