#pragma once

#include <cstdint>

#include "ffbsd/error.hpp"

namespace ffbsd::ff {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p with residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {}

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t order() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }

  value_type add(value_type a, value_type b) const {
    auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }
  value_type from_int(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type from_index(std::uint64_t i) const { return static_cast<value_type>(i % p_); }
  std::uint64_t index(value_type a) const { return a; }

 private:
  std::uint32_t p_;
};

}  // namespace ffbsd::ff
