#pragma once

// Torsion: a bound from good reductions, and a complete search for torsion
// sections, which on a minimal model are integral with deg x <= 2 deg(omega).

#include <numeric>
#include <optional>
#include <vector>

#include "ffbsd/curve/curve.hpp"
#include "ffbsd/error.hpp"
#include "ffbsd/localred/local_data.hpp"

namespace ffbsd::curve {

using funcfield::Place;

// gcd of #E~(k(v)) over good places; A(K)_tors injects into each.
inline std::int64_t torsion_bound(const Curve& E, const std::vector<Place>& places) {
  if (places.size() < 2) throw InputError("torsion_bound needs at least two good places");
  std::int64_t g = 0;
  for (const auto& v : places) {
    auto d = localred::local_data(E, v);
    if (!d.good()) throw InputError("torsion_bound: place " + v.to_string() + " is bad");
    g = std::gcd(g, localred::count_reduced_points(d, 1));
  }
  return g;
}

// Good places of degree 1 and 2 outside the given bad set, at most `limit`.
inline std::vector<Place> small_good_places(const Curve& E, std::size_t limit = 12) {
  std::vector<Place> out;
  const auto& delta = E.discriminant();
  for (int deg = 1; deg <= 2 && out.size() < limit; ++deg) {
    for (auto& v : funcfield::places_of_degree(E.field(), deg)) {
      if (out.size() == limit) break;
      if ((delta % v.uniformizer()).is_zero()) {
        // non-minimal but good places still count; let local_data decide
        if (!localred::local_data(E, v).good()) continue;
      }
      out.push_back(v);
    }
  }
  auto inf = Place::infinity(E.field());
  if (out.size() < limit && localred::local_data(E, inf).good()) out.push_back(inf);
  return out;
}

namespace detail {

// Square root in F_q[t] of a polynomial, if it is a square.
inline std::optional<Poly> poly_sqrt(const Poly& f, const std::vector<std::int64_t>& sqrt_table) {
  const auto& F = f.field();
  if (f.is_zero()) return f;
  if (f.degree() % 2) return std::nullopt;
  const std::int64_t s = sqrt_table[f.leading().code];
  if (s < 0) return std::nullopt;
  const int d = f.degree() / 2;
  std::vector<FieldElement> g(d + 1, F.zero());
  g[d] = {static_cast<std::uint32_t>(s)};
  const auto inv2g = F.inv(F.add(g[d], g[d]));
  // coefficient of t^{d+k} in g^2 determines g_k, top down
  for (int k = d - 1; k >= 0; --k) {
    FieldElement acc = f.coeff(d + k);
    for (int i = k + 1; i < d; ++i) {
      const int j = d + k - i;
      if (j < k + 1 || j > d - 1) continue;
      acc = F.sub(acc, F.mul(g[i], g[j]));
    }
    g[k] = F.mul(acc, inv2g);
  }
  Poly r(F, g);
  if (!(r * r == f)) return std::nullopt;
  return r;
}

}  // namespace detail

struct TorsionSearch {
  std::vector<KPoint> points;  // non-identity torsion points, input model
  std::int64_t order = 1;
  std::int64_t bound = 0;
  bool complete = false;  // false when the search space was too large
};

// Every torsion point, given the model (a, b) = (U^4 a', U^6 b') with (a', b')
// minimal at all finite places and chi = deg(omega).
inline TorsionSearch find_torsion(const Curve& E, int deg_omega, std::uint64_t max_candidates = 5'000'000) {
  TorsionSearch ts;
  ts.bound = torsion_bound(E, small_good_places(E));
  if (ts.bound == 1) {
    ts.complete = true;
    return ts;
  }
  const auto& F = E.field();
  const auto fm = localred::finite_minimal_model(E);
  const Curve& M = fm.model;
  const int dmax = 2 * deg_omega;
  std::uint64_t total = 1;
  for (int i = 0; i <= dmax; ++i) {
    total *= F.q();
    if (total > max_candidates) return ts;
  }
  std::vector<std::int64_t> sq(F.q(), -1);
  for (std::uint32_t x = 0; x < F.q(); ++x) sq[F.mul({x}, {x}).code] = x;

  const RationalFunction U2(fm.scale.pow(2)), U3(fm.scale.pow(3));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<FieldElement> c(dmax + 1);
    std::uint64_t r = idx;
    for (int i = 0; i <= dmax; ++i) {
      c[i] = F.from_index(r % F.q());
      r /= F.q();
    }
    Poly x(F, c);
    Poly rhs = x.pow(3) + M.a() * x + M.b();
    auto y = detail::poly_sqrt(rhs, sq);
    if (!y) continue;
    for (int sign : {1, -1}) {
      if (sign == -1 && y->is_zero()) break;
      Poly yy = sign == 1 ? *y : -*y;
      auto P = KPoint::affine(RationalFunction(x) * U2, RationalFunction(yy) * U3);
      if (point_mul(E, ts.bound, P).is_identity()) ts.points.push_back(P);
    }
  }
  ts.order = static_cast<std::int64_t>(ts.points.size()) + 1;
  if (ts.bound % ts.order != 0) throw ConsistencyError("torsion search found a group whose order does not divide the bound");
  ts.complete = true;
  return ts;
}

// Order of the subgroup generated by the given torsion points, by closure.
inline std::int64_t generated_subgroup_order(const Curve& E, const std::vector<KPoint>& gens, std::int64_t limit) {
  std::vector<KPoint> group{KPoint::identity(E.field())};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : gens) {
      auto s = point_add(E, group[i], g);
      bool seen = false;
      for (const auto& h : group) seen = seen || h == s;
      if (!seen) {
        group.push_back(s);
        if (static_cast<std::int64_t>(group.size()) > limit) return 0;
      }
    }
  }
  return static_cast<std::int64_t>(group.size());
}

}  // namespace ffbsd::curve
