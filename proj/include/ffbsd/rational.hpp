#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ffbsd {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// base^exp for a possibly negative exponent.
inline Rational qpow(const Integer& base, long exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<unsigned long>(exp)));
  Rational r(Integer(1), ipow(base, static_cast<unsigned long>(-exp)));
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// A rational is a square of a rational iff numerator and denominator are.
inline bool is_rational_square(const Rational& r) {
  return r >= 0 && is_perfect_square(r.get_num()) && is_perfect_square(r.get_den());
}

inline bool fits_int64(const Integer& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const Integer& n) { return mpz_get_si(n.get_mpz_t()); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace ffbsd
