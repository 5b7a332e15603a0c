#pragma once

#include <string>
#include <utility>

#include "ffbsd/error.hpp"
#include "ffbsd/funcfield/poly.hpp"
#include "ffbsd/funcfield/rational_function.hpp"

namespace ffbsd::curve {

using funcfield::FieldElement;
using funcfield::FieldSpec;
using funcfield::Poly;
using funcfield::RationalFunction;

class KPoint {
 public:
  static KPoint identity(const FieldSpec& F) { return KPoint(F); }
  static KPoint affine(RationalFunction x, RationalFunction y) { return KPoint(std::move(x), std::move(y)); }

  bool is_identity() const { return identity_; }
  const RationalFunction& x() const { return x_; }
  const RationalFunction& y() const { return y_; }

  friend bool operator==(const KPoint& P, const KPoint& Q) {
    if (P.identity_ || Q.identity_) return P.identity_ == Q.identity_;
    return P.x_ == Q.x_ && P.y_ == Q.y_;
  }

  std::string to_string() const {
    if (identity_) return "O";
    return "(" + x_.to_string() + ", " + y_.to_string() + ")";
  }

 private:
  explicit KPoint(const FieldSpec& F) : identity_(true), x_(F), y_(F) {}
  KPoint(RationalFunction x, RationalFunction y) : identity_(false), x_(std::move(x)), y_(std::move(y)) {}

  bool identity_;
  RationalFunction x_;
  RationalFunction y_;
};

// y^2 = x^3 + a x + b over F_q(t), a and b polynomials.
class Curve {
 public:
  Curve(Poly a, Poly b) : a_(std::move(a)), b_(std::move(b)), delta_(a_.field()) {
    if (!(a_.field() == b_.field())) throw InputError("coefficients a and b live over different fields");
    delta_ = (a_.pow(3).scaled(4) + b_.pow(2).scaled(27)).scaled(-16);
    if (delta_.is_zero()) throw InputError("singular curve: discriminant is zero");
  }

  const FieldSpec& field() const { return a_.field(); }
  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }
  Poly c4() const { return a_.scaled(-48); }
  Poly c6() const { return b_.scaled(-864); }
  const Poly& discriminant() const { return delta_; }

  // j = 1728 * 4a^3 / (4a^3 + 27b^2); constant iff a^3 and b^2 are proportional.
  bool is_isotrivial() const {
    if (a_.is_zero() || b_.is_zero()) return true;
    return RationalFunction(a_.pow(3), b_.pow(2)).is_constant();
  }
  bool is_constant() const { return a_.is_constant() && b_.is_constant(); }

  RationalFunction rhs(const RationalFunction& x) const {
    return x * x * x + RationalFunction(a_) * x + RationalFunction(b_);
  }

  bool contains(const KPoint& P) const {
    if (P.is_identity()) return true;
    if (!(P.x().field() == field())) return false;
    return P.y() * P.y() == rhs(P.x());
  }

  std::string to_string() const {
    return "y^2 = x^3 + (" + a_.to_string() + ")x + (" + b_.to_string() + ")";
  }

  friend bool operator==(const Curve& E, const Curve& F) { return E.a_ == F.a_ && E.b_ == F.b_; }

 private:
  Poly a_;
  Poly b_;
  Poly delta_;
};

inline KPoint point_neg(const KPoint& P) {
  if (P.is_identity()) return P;
  return KPoint::affine(P.x(), -P.y());
}

inline KPoint point_add(const Curve& E, const KPoint& P, const KPoint& Q) {
  if (P.is_identity()) return Q;
  if (Q.is_identity()) return P;
  const auto& F = E.field();
  RationalFunction lambda(F);
  if (P.x() == Q.x()) {
    if (P.y() == -Q.y()) return KPoint::identity(F);
    // P == Q with y != 0
    const RationalFunction three(Poly::constant(F, F.from_int(3)));
    const RationalFunction two(Poly::constant(F, F.from_int(2)));
    lambda = (three * P.x() * P.x() + RationalFunction(E.a())) / (two * P.y());
  } else {
    lambda = (Q.y() - P.y()) / (Q.x() - P.x());
  }
  RationalFunction x3 = lambda * lambda - P.x() - Q.x();
  RationalFunction y3 = lambda * (P.x() - x3) - P.y();
  return KPoint::affine(std::move(x3), std::move(y3));
}

inline KPoint point_sub(const Curve& E, const KPoint& P, const KPoint& Q) { return point_add(E, P, point_neg(Q)); }

inline KPoint point_mul(const Curve& E, long long n, const KPoint& P) {
  KPoint base = n < 0 ? point_neg(P) : P;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  KPoint acc = KPoint::identity(E.field());
  while (k) {
    if (k & 1) acc = point_add(E, acc, base);
    k >>= 1;
    if (k) base = point_add(E, base, base);
  }
  return acc;
}

// Smallest n in [1, limit] with nP = O, or 0 if none.
inline long long point_order(const Curve& E, const KPoint& P, long long limit) {
  KPoint acc = P;
  for (long long n = 1; n <= limit; ++n) {
    if (acc.is_identity()) return n;
    acc = point_add(E, acc, P);
  }
  return 0;
}

}  // namespace ffbsd::curve
