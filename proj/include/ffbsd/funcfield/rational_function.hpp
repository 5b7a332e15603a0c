#pragma once

#include <string>
#include <utility>

#include "ffbsd/error.hpp"
#include "ffbsd/funcfield/poly.hpp"

namespace ffbsd::funcfield {

// Element of K = F_q(t) in lowest terms with monic denominator.
class RationalFunction {
 public:
  explicit RationalFunction(const FieldSpec& F) : num_(F), den_(Poly::constant(F, F.one())) {}
  RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field().one())) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldSpec& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.field());
    // cross-cancel first to keep degrees down
    Poly g1 = gcd(a.num_, b.den_);
    Poly g2 = gcd(b.num_, a.den_);
    return {(a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1)};
  }
  RationalFunction inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of the zero function");
    return {den_, num_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
  RationalFunction operator-() const { return {-num_, den_}; }

  RationalFunction scaled(std::int64_t c) const { return {num_.scaled(c), den_}; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(field(), field().one());
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const auto lead_inv = field().inv(den_.leading());
    if (den_.leading() != field().one()) {
      num_ = num_.scaled(lead_inv);
      den_ = den_.scaled(lead_inv);
    }
  }

  Poly num_;
  Poly den_;
};

}  // namespace ffbsd::funcfield
