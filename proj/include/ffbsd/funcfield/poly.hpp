#pragma once

#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/ff/dense_poly.hpp"
#include "ffbsd/ff/ext_field.hpp"
#include "ffbsd/ff/field.hpp"

namespace ffbsd::funcfield {

using ff::ExtField;
using ff::ExtFieldElement;
using ff::FieldElement;
using ff::FieldSpec;

// Polynomial in F_q[t], little-endian, canonical (no trailing zeros).
class Poly {
 public:
  explicit Poly(FieldSpec F) : F_(std::move(F)) {}
  Poly(FieldSpec F, std::vector<FieldElement> c) : F_(std::move(F)), c_(std::move(c)) { ff::dense::trim(F_, c_); }

  static Poly constant(const FieldSpec& F, FieldElement c) { return Poly(F, {c}); }
  static Poly from_ints(const FieldSpec& F, std::initializer_list<std::int64_t> c) {
    std::vector<FieldElement> v;
    for (auto x : c) v.push_back(F.from_int(x));
    return Poly(F, std::move(v));
  }
  static Poly from_ints(const FieldSpec& F, const std::vector<std::int64_t>& c) {
    std::vector<FieldElement> v;
    for (auto x : c) v.push_back(F.from_int(x));
    return Poly(F, std::move(v));
  }
  // The variable t.
  static Poly t(const FieldSpec& F) { return Poly(F, {F.zero(), F.one()}); }
  static Poly monomial(const FieldSpec& F, int k, FieldElement c) {
    std::vector<FieldElement> v(k + 1, F.zero());
    v[k] = c;
    return Poly(F, std::move(v));
  }

  const FieldSpec& field() const { return F_; }
  const std::vector<FieldElement>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  FieldElement coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : F_.zero(); }
  FieldElement leading() const { return c_.empty() ? F_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == F_.one(); }

  friend Poly operator+(const Poly& a, const Poly& b) { return Poly(a.F_, ff::dense::add(a.F_, a.c_, b.c_)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return Poly(a.F_, ff::dense::sub(a.F_, a.c_, b.c_)); }
  friend Poly operator*(const Poly& a, const Poly& b) { return Poly(a.F_, ff::dense::mul(a.F_, a.c_, b.c_)); }
  Poly operator-() const { return Poly(F_) - *this; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(FieldElement c) const { return Poly(F_, ff::dense::scale(F_, c_, c)); }
  Poly scaled(std::int64_t c) const { return scaled(F_.from_int(c)); }

  std::pair<Poly, Poly> divmod(const Poly& d) const {
    auto [qq, rr] = ff::dense::divmod(F_, c_, d.c_);
    return {Poly(F_, std::move(qq)), Poly(F_, std::move(rr))};
  }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  // Exact division; throws ConsistencyError when d does not divide.
  Poly exact_div(const Poly& d) const {
    auto [qq, rr] = divmod(d);
    if (!rr.is_zero()) throw ConsistencyError("inexact polynomial division");
    return qq;
  }

  Poly monic() const { return Poly(F_, ff::dense::monic(F_, c_)); }
  friend Poly gcd(const Poly& a, const Poly& b) { return Poly(a.F_, ff::dense::gcd(a.F_, a.c_, b.c_)); }
  Poly derivative() const { return Poly(F_, ff::dense::derivative(F_, c_)); }

  Poly pow(unsigned k) const {
    Poly r = constant(F_, F_.one());
    Poly b = *this;
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  FieldElement eval(FieldElement x) const { return ff::dense::eval(F_, c_, x); }

  // Evaluation at an element of an extension of the coefficient field.
  ExtFieldElement eval(const ExtField& E, ExtFieldElement x) const {
    ExtFieldElement acc = E.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = E.add(E.mul(acc, x), E.embed(*it));
    return acc;
  }

  // Multiplicity of the irreducible pi in this polynomial.
  int valuation(const Poly& pi) const {
    if (is_zero()) throw DivisionByZero("valuation of the zero polynomial");
    int v = 0;
    Poly cur = *this;
    for (;;) {
      auto [qq, rr] = cur.divmod(pi);
      if (!rr.is_zero()) return v;
      cur = std::move(qq);
      ++v;
    }
  }

  // Index of a monic polynomial in the canonical enumeration of its degree.
  std::uint64_t monic_index() const { return ff::dense::monic_index(F_, c_); }

  bool is_irreducible() const { return ff::dense::is_irreducible(F_, c_); }

  // Monic irreducible factors with multiplicities, sorted by (degree, index).
  std::vector<std::pair<Poly, int>> factor() const {
    std::vector<std::pair<Poly, int>> out;
    for (auto& [g, m] : ff::dense::factor(F_, c_)) out.emplace_back(Poly(F_, g), m);
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      if (F_.is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      const bool unit = c_[i] == F_.one();
      if (!unit || i == 0) os << element_string(c_[i]);
      if (i >= 1) os << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

  std::string element_string(FieldElement c) const {
    if (F_.e() == 1) return std::to_string(c.code);
    auto cs = F_.coefficients(c);
    std::string s = "[";
    for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i]);
    return s + "]";
  }

 private:
  FieldSpec F_;
  std::vector<FieldElement> c_;
};

}  // namespace ffbsd::funcfield
