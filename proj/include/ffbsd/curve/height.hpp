#pragma once

// Canonical heights by the degree-doubling limit and the induced pairing.

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "ffbsd/curve/curve.hpp"
#include "ffbsd/error.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::curve {

struct HeightOptions {
  // Heights are multiples of 1/denominator (N0 = 2 * c(A)^2 in practice).
  Integer denominator = 1;
  int doubling_cap = 12;
};

inline int naive_height(const KPoint& P) {
  if (P.is_identity()) return 0;
  return std::max(P.x().num().degree(), P.x().den().degree());
}

namespace detail {

// x(2P) on coprime (X : Z), reduced by their gcd. Z = 0 means 2P = O.
inline void x_double(const Curve& E, Poly& X, Poly& Z) {
  const Poly& a = E.a();
  const Poly& b = E.b();
  Poly X2 = X * X, Z2 = Z * Z;
  Poly XZ = X * Z;
  Poly nx = X2 * X2 - (a * X2 * Z2).scaled(2) - (b * XZ * Z2).scaled(8) + a * a * Z2 * Z2;
  Poly nz = (Z * (X2 * X + a * XZ * Z + b * Z2 * Z)).scaled(4);
  if (nz.is_zero()) {
    X = Poly::constant(E.field(), E.field().one());
    Z = Poly(E.field());
    return;
  }
  Poly g = gcd(nx, nz);
  if (g.degree() > 0) {
    nx = nx.exact_div(g);
    nz = nz.exact_div(g);
  }
  X = std::move(nx);
  Z = std::move(nz);
}

}  // namespace detail

// lim 4^-n deg x(2^n P). Doubling stops once two consecutive estimates agree
// to within 1/(3 N0); the estimate is then rounded to the nearest multiple of
// 1/N0 and the residual must also be below 1/(3 N0).
inline Rational canonical_height(const Curve& E, const KPoint& P, const HeightOptions& opt = {}) {
  if (P.is_identity()) return 0;
  const Integer& N0 = opt.denominator;
  const Rational tol(Integer(1), 3 * N0);
  Poly X = P.x().num(), Z = P.x().den();
  Rational prev = naive_height(P);
  Integer scale = 1;
  int settled = 0;
  for (int n = 1; n <= opt.doubling_cap; ++n) {
    detail::x_double(E, X, Z);
    scale *= 4;
    if (Z.is_zero()) return 0;  // torsion: the orbit hit O
    Rational cur(Integer(std::max(X.degree(), Z.degree())), scale);
    cur.canonicalize();
    Rational diff = cur - prev;
    settled = abs(diff) < tol ? settled + 1 : 0;
    prev = cur;
    if (settled >= 2) {
      Rational scaled = cur * N0;
      // round half up
      Integer k = scaled.get_num() * 2 + scaled.get_den();
      Integer twice_den = scaled.get_den() * 2;
      mpz_fdiv_q(k.get_mpz_t(), k.get_mpz_t(), twice_den.get_mpz_t());
      Rational rounded(k, N0);
      rounded.canonicalize();
      if (abs(cur - rounded) >= tol) throw HeightError("height did not stabilize: residual exceeds 1/(3*N0)");
      return rounded;
    }
  }
  throw HeightError("height did not stabilize within " + std::to_string(opt.doubling_cap) + " doublings");
}

using Matrix = std::vector<std::vector<Rational>>;

inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

struct HeightPairingMatrix {
  Matrix entries;
  std::vector<KPoint> basis;

  Rational determinant() const { return curve::determinant(entries); }

  std::vector<Rational> leading_minors() const {
    std::vector<Rational> out;
    for (std::size_t k = 1; k <= entries.size(); ++k) {
      Matrix sub(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = entries[i][j];
      out.push_back(curve::determinant(std::move(sub)));
    }
    return out;
  }

  bool positive_definite() const {
    auto m = leading_minors();
    return std::all_of(m.begin(), m.end(), [](const Rational& x) { return x > 0; });
  }
};

// <P, Q> = (h(P+Q) - h(P) - h(Q)) / 2, so <P, P> = h(P).
inline HeightPairingMatrix height_pairing(const Curve& E, const std::vector<KPoint>& gens, const HeightOptions& opt = {}) {
  const std::size_t r = gens.size();
  HeightPairingMatrix M{Matrix(r, std::vector<Rational>(r)), gens};
  std::vector<Rational> h(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (!E.contains(gens[i])) throw InputError("point not on curve: " + gens[i].to_string());
    h[i] = canonical_height(E, gens[i], opt);
    M.entries[i][i] = h[i];
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      Rational s = canonical_height(E, point_add(E, gens[i], gens[j]), opt);
      M.entries[i][j] = M.entries[j][i] = (s - h[i] - h[j]) / 2;
    }
  return M;
}

}  // namespace ffbsd::curve
