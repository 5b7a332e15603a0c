#pragma once

// Tame Tate algorithm (p >= 5): Kodaira type, conductor exponent and
// Tamagawa number from the valuations of the minimal (A, B, Delta) at v.

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "ffbsd/curve/curve.hpp"
#include "ffbsd/error.hpp"
#include "ffbsd/ff/char_sum.hpp"
#include "ffbsd/ff/dense_poly.hpp"
#include "ffbsd/funcfield/place.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::localred {

using curve::Curve;
using funcfield::ExtField;
using funcfield::ExtFieldElement;
using funcfield::FieldSpec;
using funcfield::Place;
using funcfield::Poly;

enum class Kodaira { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct KodairaType {
  Kodaira kind = Kodaira::I0;
  int n = 0;  // only for In and In*

  std::string to_string() const {
    switch (kind) {
      case Kodaira::I0: return "I0";
      case Kodaira::In: return "I" + std::to_string(n);
      case Kodaira::II: return "II";
      case Kodaira::III: return "III";
      case Kodaira::IV: return "IV";
      case Kodaira::I0Star: return "I0*";
      case Kodaira::InStar: return "I" + std::to_string(n) + "*";
      case Kodaira::IVStar: return "IV*";
      case Kodaira::IIIStar: return "III*";
      case Kodaira::IIStar: return "II*";
    }
    return "?";
  }
  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

// v(Delta_min) forced by the type.
inline int table_v_delta(const KodairaType& k) {
  switch (k.kind) {
    case Kodaira::I0: return 0;
    case Kodaira::In: return k.n;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::I0Star: return 6;
    case Kodaira::InStar: return 6 + k.n;
    case Kodaira::IVStar: return 8;
    case Kodaira::IIIStar: return 9;
    case Kodaira::IIStar: return 10;
  }
  return -1;
}

inline constexpr int kInfiniteValuation = INT_MAX / 4;

inline int poly_valuation(const Poly& f, const Poly& pi) { return f.is_zero() ? kInfiniteValuation : f.valuation(pi); }

// Coefficients of the model in the chart containing v. At Infinity the chart
// variable is u = 1/t and (a, b) become u^{4m} a(1/u), u^{6m} b(1/u).
struct Chart {
  Poly a, b;
  Place place;  // v itself, or the place u = 0 of the u-chart
  int m = 0;
};

inline int infinity_chart_weight(const Curve& E) {
  int m = 0;
  while (4 * m < E.a().degree() || 6 * m < E.b().degree()) ++m;
  return m;
}

inline Poly reverse_padded(const Poly& f, int width) {
  std::vector<funcfield::FieldElement> c(width + 1, f.field().zero());
  for (int i = 0; i <= f.degree(); ++i) c[width - i] = f.coeff(i);
  return Poly(f.field(), std::move(c));
}

inline Chart chart(const Curve& E, const Place& v) {
  if (!v.is_infinity()) return {E.a(), E.b(), v, 0};
  const int m = infinity_chart_weight(E);
  return {reverse_padded(E.a(), 4 * m), reverse_padded(E.b(), 6 * m), Place::finite_unchecked(Poly::t(E.field())), m};
}

inline Poly discriminant_of(const Poly& a, const Poly& b) {
  return (a.pow(3).scaled(4) + b.pow(2).scaled(27)).scaled(-16);
}

struct LocalData {
  Place place;
  Place chart_place;
  KodairaType kodaira;
  int f = 0;
  int c = 1;
  int v_delta_min = 0;
  int v_delta_input = 0;
  int v_omega = 0;
  int shift = 0;  // k: minimal model is (a / pi^{4k}, b / pi^{6k}) in the chart
  int chart_weight = 0;  // m of the u-chart at Infinity
  std::optional<bool> split;
  // Minimal model at v, in chart coordinates.
  Poly A, B;
  int v_A = 0, v_B = 0;

  bool good() const { return f == 0; }
  bool multiplicative() const { return f == 1; }
  bool additive() const { return f == 2; }
  int degree() const { return place.degree(); }
};

namespace detail {

struct Residues {
  funcfield::ResidueMap rm;
  ExtFieldElement of(const Poly& p) const { return p.eval(rm.field, rm.root); }
  int chi(const Poly& p) const { return rm.field.quadratic_character(of(p)); }
};

inline Poly div_pi(const Poly& f, const Poly& pi, int k) { return f.exact_div(pi.pow(static_cast<unsigned>(k))); }

// Roots in k(v) of the separable monic cubic X^3 + a X + b.
inline int count_cubic_roots(const ExtField& E, ExtFieldElement a, ExtFieldElement b) {
  namespace dp = ff::dense;
  dp::Poly<ExtField> cubic{b, a, E.zero(), E.one()};
  auto xq = dp::powmod(E, dp::x_poly(E), Integer(E.order()), cubic);
  auto g = dp::gcd(E, cubic, dp::sub(E, xq, dp::x_poly(E)));
  return dp::degree(g);
}

}  // namespace detail

inline LocalData local_data(const Curve& E, const Place& v) {
  if (E.is_constant()) throw UnsupportedError("constant curve: no bad reduction to analyse");
  Chart ch = chart(E, v);
  const Poly& pi = ch.place.uniformizer();
  const Poly delta = discriminant_of(ch.a, ch.b);
  int vA = poly_valuation(ch.a, pi);
  int vB = poly_valuation(ch.b, pi);
  int vD = poly_valuation(delta, pi);
  const int k = std::min({vA / 4, vB / 6, vD / 12});

  LocalData d{v, ch.place, {}, 0, 1, 0, 0, 0, k, ch.m, std::nullopt, ch.a, ch.b, 0, 0};
  if (k > 0) {
    d.A = ch.a.is_zero() ? ch.a : detail::div_pi(ch.a, pi, 4 * k);
    d.B = ch.b.is_zero() ? ch.b : detail::div_pi(ch.b, pi, 6 * k);
    if (!ch.a.is_zero()) vA -= 4 * k;
    if (!ch.b.is_zero()) vB -= 6 * k;
    vD -= 12 * k;
  }
  d.v_A = vA;
  d.v_B = vB;
  d.v_delta_min = vD;
  d.v_delta_input = v.is_infinity() ? -E.discriminant().degree() : E.discriminant().valuation(v.uniformizer());
  if ((d.v_delta_min - d.v_delta_input) % 12 != 0) throw ConsistencyError("v(Delta_min) - v(Delta) not divisible by 12 at " + v.to_string());
  d.v_omega = (d.v_delta_min - d.v_delta_input) / 12;

  if (vD == 0) {
    d.kodaira = {Kodaira::I0, 0};
    return d;
  }
  detail::Residues res{funcfield::residue_map(ch.place)};
  if (vA == 0) {
    // node at x0 with tangent slopes^2 = 3 x0, and chi(3 x0) = chi(6B)
    d.kodaira = {Kodaira::In, vD};
    d.f = 1;
    d.split = res.chi(d.B.scaled(6)) == 1;
    d.c = *d.split ? vD : (vD % 2 == 0 ? 2 : 1);
    return d;
  }
  d.f = 2;
  if (vA >= 2 && vB == 3 && vD > 6) {
    const int n = vD - 6;
    d.kodaira = {Kodaira::InStar, n};
    Poly dm = detail::div_pi(discriminant_of(d.A, d.B), pi, vD);
    if (n % 2 == 1) dm = dm * detail::div_pi(d.B.scaled(-864), pi, 3);
    d.c = 3 + res.chi(dm);
    return d;
  }
  switch (vD) {
    case 2: d.kodaira = {Kodaira::II, 0}; d.c = 1; break;
    case 3: d.kodaira = {Kodaira::III, 0}; d.c = 2; break;
    case 4:
      d.kodaira = {Kodaira::IV, 0};
      d.c = 2 + res.chi(detail::div_pi(d.B, pi, 2));
      break;
    case 6: {
      d.kodaira = {Kodaira::I0Star, 0};
      auto a2 = res.of(detail::div_pi(d.A, pi, 2));
      auto b3 = res.of(detail::div_pi(d.B, pi, 3));
      d.c = 1 + detail::count_cubic_roots(res.rm.field, a2, b3);
      break;
    }
    case 8:
      d.kodaira = {Kodaira::IVStar, 0};
      d.c = 2 + res.chi(detail::div_pi(d.B, pi, 4));
      break;
    case 9: d.kodaira = {Kodaira::IIIStar, 0}; d.c = 2; break;
    case 10: d.kodaira = {Kodaira::IIStar, 0}; d.c = 1; break;
    default:
      throw ConsistencyError("valuation triple (" + std::to_string(vA) + ", " + std::to_string(vB) + ", " +
                             std::to_string(vD) + ") outside the tame table at " + v.to_string());
  }
  return d;
}

// #A0(k_n) for the reduction at v over the degree-n extension of k(v):
// points of the minimal model's reduction minus the singular point.
inline std::int64_t count_reduced_points(const LocalData& d, int n = 1) {
  auto rm = funcfield::residue_map(d.chart_place, n);
  const auto& K = rm.field;
  auto a0 = d.A.eval(K, rm.root);
  auto b0 = d.B.eval(K, rm.root);
  const auto Q = static_cast<std::int64_t>(K.order());
  if (d.v_delta_min == 0) return Q + ff::cubic_character_sum(K, a0, b0) + 1;
  // Singular cubic. Cusp: x^3, so sum chi(x^3) = 0. Node at x0 = -3b/(2a):
  // (x - x0)^2 (x + 2 x0), so the sum is -chi(3 x0).
  if (K.is_zero(a0)) return Q;
  const auto& F = K.base();
  const auto x0 = K.mul(K.neg(K.mul(K.embed(F.from_int(3)), b0)), K.inv(K.mul(K.embed(F.from_int(2)), a0)));
  return Q - K.quadratic_character(K.mul(K.embed(F.from_int(3)), x0));
}

inline std::int64_t count_reduced_points(const Curve& E, const Place& v, int n = 1) {
  return count_reduced_points(local_data(E, v), n);
}

// P_v(X), X = N(v)^{-s}, lowest degree first.
inline std::vector<Integer> euler_factor(const LocalData& d) {
  if (d.good()) {
    const Integer N(d.place.norm());
    const Integer a = N + 1 - Integer(count_reduced_points(d, 1));
    return {1, -a, N};
  }
  if (d.multiplicative()) return {1, *d.split ? -1 : 1};
  return {1};
}

inline Rational eval_at(const std::vector<Integer>& poly, const Rational& x) {
  Rational acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

struct Prop41Check {
  Rational euler_side;  // P_v(1/N(v))
  Rational count_side;  // #A0(k(v)) / N(v)
  bool pass = false;
};

inline Prop41Check verify_prop41(const LocalData& d) {
  const Integer N(d.place.norm());
  Prop41Check r;
  r.euler_side = eval_at(euler_factor(d), Rational(Integer(1), N));
  r.count_side = Rational(Integer(count_reduced_points(d, 1)), N);
  r.count_side.canonicalize();
  r.pass = r.euler_side == r.count_side;
  return r;
}

inline Prop41Check verify_prop41(const Curve& E, const Place& v) { return verify_prop41(local_data(E, v)); }

// Model with no finite place where (a, b) can be scaled down:
// a = U^4 a', b = U^6 b'.
struct FiniteMinimalModel {
  Curve model;
  Poly scale;
};

inline FiniteMinimalModel finite_minimal_model(const Curve& E) {
  const auto& F = E.field();
  Poly g = gcd(E.a(), E.b());
  Poly U = Poly::constant(F, F.one());
  if (g.degree() > 0) {
    for (const auto& [pi, _] : g.factor()) {
      const int k = std::min(poly_valuation(E.a(), pi) / 4, poly_valuation(E.b(), pi) / 6);
      if (k > 0) U *= pi.pow(static_cast<unsigned>(k));
    }
  }
  if (U.degree() == 0) return {E, U};
  Poly a = E.a().is_zero() ? E.a() : E.a().exact_div(U.pow(4));
  Poly b = E.b().is_zero() ? E.b() : E.b().exact_div(U.pow(6));
  return {Curve(a, b), U};
}

// Every place where the input model has bad reduction or is non-minimal
// (the finite factors of Delta), then Infinity.
inline std::vector<Place> relevant_places(const Curve& E) {
  std::vector<Place> out;
  for (const auto& [pi, _] : E.discriminant().factor()) out.push_back(Place::finite_unchecked(pi));
  out.push_back(Place::infinity(E.field()));
  return out;
}

inline std::vector<LocalData> local_data_all(const Curve& E) {
  std::vector<LocalData> out;
  for (const auto& v : relevant_places(E)) out.push_back(local_data(E, v));
  return out;
}

inline int conductor_degree(const std::vector<LocalData>& data) {
  int total = 0;
  for (const auto& d : data) total += d.f * d.degree();
  if (total < 4) throw UnsupportedError("unsupported curve class (L-degree negative): conductor degree " + std::to_string(total));
  return total;
}

inline int conductor_degree(const Curve& E) { return conductor_degree(local_data_all(E)); }

}  // namespace ffbsd::localred
