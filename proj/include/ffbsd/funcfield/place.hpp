#pragma once

// Places of K = F_q(t), i.e. closed points of P^1: monic irreducibles of
// F_q[t] plus the point at infinity, handled in the chart t = 1/u.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/ff/ext_field.hpp"
#include "ffbsd/funcfield/poly.hpp"
#include "ffbsd/funcfield/rational_function.hpp"

namespace ffbsd::funcfield {

class Place {
 public:
  enum class Kind { Finite, Infinity };

  static Place finite(Poly pi) {
    if (!pi.is_monic() || pi.degree() < 1) throw InputError("place polynomial must be monic of positive degree");
    if (!pi.is_irreducible()) throw InputError("place polynomial " + pi.to_string() + " is not irreducible");
    return Place(Kind::Finite, std::move(pi));
  }
  // For callers that already know pi is monic irreducible (enumeration, factoring).
  static Place finite_unchecked(Poly pi) { return Place(Kind::Finite, std::move(pi)); }
  static Place infinity(const FieldSpec& F) { return Place(Kind::Infinity, Poly::t(F)); }

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  // For Infinity this is the chart uniformizer u, written as the variable.
  const Poly& uniformizer() const { return pi_; }
  int degree() const { return kind_ == Kind::Infinity ? 1 : pi_.degree(); }
  const FieldSpec& field() const { return pi_.field(); }
  // N(v) = q^deg(v)
  std::uint64_t norm() const {
    std::uint64_t n = 1;
    for (int i = 0; i < degree(); ++i) n *= field().q();
    return n;
  }

  std::string to_string() const { return is_infinity() ? "inf" : pi_.to_string(); }

  friend bool operator==(const Place& a, const Place& b) { return a.kind_ == b.kind_ && a.pi_ == b.pi_; }
  // Finite places by (degree, enumeration index); Infinity last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
    if (a.is_infinity()) return false;
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.pi_.monic_index() < b.pi_.monic_index();
  }

 private:
  Place(Kind k, Poly pi) : kind_(k), pi_(std::move(pi)) {}
  Kind kind_;
  Poly pi_;
};

// Number of monic irreducibles of degree m over F_q: (1/m) sum_{k|m} mu(k) q^{m/k}.
inline std::uint64_t necklace_count(std::uint64_t q, int m) {
  auto mobius = [](int n) {
    int r = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        r = -r;
      }
    }
    if (n > 1) r = -r;
    return r;
  };
  std::int64_t total = 0;
  for (int k = 1; k <= m; ++k) {
    if (m % k) continue;
    std::int64_t pw = 1;
    for (int i = 0; i < m / k; ++i) pw *= static_cast<std::int64_t>(q);
    total += mobius(k) * pw;
  }
  return static_cast<std::uint64_t>(total / m);
}

// All finite places of degree exactly m, in enumeration order (sieve by
// Rabin's test over every monic polynomial of degree m).
inline std::vector<Place> places_of_degree(const FieldSpec& F, int m) {
  std::vector<Place> out;
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= F.q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto c = ff::dense::monic_from_index(F, m, idx);
    if (ff::dense::is_irreducible(F, c)) out.push_back(Place::finite_unchecked(Poly(F, std::move(c))));
  }
  return out;
}

// Finite places of degree <= d followed by Infinity.
inline std::vector<Place> enumerate_places(const FieldSpec& F, int d) {
  if (d < 1) throw InputError("enumerate_places needs max degree >= 1");
  std::vector<Place> out;
  for (int m = 1; m <= d; ++m) {
    auto v = places_of_degree(F, m);
    out.insert(out.end(), v.begin(), v.end());
  }
  out.push_back(Place::infinity(F));
  return out;
}

// v(f). Finite: multiplicity of pi in num minus in den. Infinity: deg den - deg num.
inline int valuation(const RationalFunction& f, const Place& v) {
  if (f.is_zero()) throw DivisionByZero("valuation of the zero function is +infinity");
  if (v.is_infinity()) return f.den().degree() - f.num().degree();
  return f.num().valuation(v.uniformizer()) - f.den().valuation(v.uniformizer());
}

inline int valuation(const Poly& f, const Place& v) { return valuation(RationalFunction(f), v); }

// Residue field F_{q^{deg v * n}} together with the root of pi_v used for
// reduction: the least code among the roots. For Infinity the root is 0 in
// the u-chart.
struct ResidueMap {
  ExtField field;
  ExtFieldElement root;
};

inline ResidueMap residue_map(const Place& v, int n = 1) {
  const int m = v.degree() * n;
  ExtField E = ff::build_tower(v.field(), m);
  if (v.is_infinity()) return {E, E.zero()};
  ff::dense::Poly<ExtField> lifted;
  for (auto c : v.uniformizer().coefficients()) lifted.push_back(E.embed(c));
  auto roots = ff::dense::split_roots(E, lifted);
  if (roots.size() != static_cast<std::size_t>(v.degree())) throw ConsistencyError("place polynomial did not split in its residue field");
  return {E, *std::min_element(roots.begin(), roots.end())};
}

// Reduction of f at v into k(v); throws for a pole.
inline ExtFieldElement residue(const RationalFunction& f, const Place& v, const ResidueMap& rm) {
  if (f.is_zero()) return rm.field.zero();
  if (valuation(f, v) < 0) throw InputError("pole at place " + v.to_string());
  const ExtField& E = rm.field;
  if (v.is_infinity()) {
    if (f.num().degree() < f.den().degree()) return E.zero();
    const auto& F = f.field();
    return E.embed(F.mul(f.num().leading(), F.inv(f.den().leading())));
  }
  // v(f) >= 0 and gcd(num, den) = 1 means pi does not divide den
  return E.mul(f.num().eval(E, rm.root), E.inv(f.den().eval(E, rm.root)));
}

inline ExtFieldElement residue(const RationalFunction& f, const Place& v) { return residue(f, v, residue_map(v)); }

}  // namespace ffbsd::funcfield
