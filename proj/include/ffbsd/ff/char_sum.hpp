#pragma once

#include <cstdint>

#include "ffbsd/ff/ext_field.hpp"

namespace ffbsd::ff {

// S(a, b) = sum over x in F of chi(x^3 + a x + b). The number of affine
// solutions of y^2 = x^3 + a x + b is #F + S(a, b).
//
// Tabulated fields walk x = g^k with two Zech lookups per step: with
// x^3 + a x = g^{3k} (1 + g^{log a - 2k}) the inner sum never leaves the log
// domain.
inline std::int64_t cubic_character_sum(const ExtField& F, ExtFieldElement a, ExtFieldElement b) {
  if (const auto* t = F.tables()) {
    const std::uint32_t N = t->zero_log;
    const auto* zech = t->zech.data();
    const auto* zchi = t->zech_chi.data();
    const std::uint32_t la = t->log[a.code];
    const std::uint32_t lb = t->log[b.code];
    const bool a_zero = a.code == 0;
    const bool b_zero = b.code == 0;
    const int chi_b = b_zero ? 0 : ((lb & 1u) ? -1 : 1);

    std::int64_t sum = chi_b;  // x = 0
    std::uint32_t i3 = 0;      // 3k mod N
    std::uint32_t i2 = a_zero ? 0 : la;  // la - 2k mod N
    for (std::uint32_t k = 0; k < N; ++k) {
      std::uint32_t lu;
      bool u_zero = false;
      if (a_zero) {
        lu = i3;
      } else {
        const std::uint32_t z = zech[i2];
        if (z == N) {
          u_zero = true;
          lu = 0;
        } else {
          lu = i3 + z;
          if (lu >= N) lu -= N;
        }
      }
      if (u_zero) {
        sum += chi_b;
      } else if (b_zero) {
        sum += (lu & 1u) ? -1 : 1;
      } else {
        std::uint32_t d = lu >= lb ? lu - lb : lu + N - lb;
        sum += chi_b * zchi[d];
      }
      i3 += 3;
      if (i3 >= N) i3 -= N;
      i2 = i2 >= 2 ? i2 - 2 : i2 + N - 2;
    }
    return sum;
  }
  std::int64_t sum = 0;
  for (std::uint64_t c = 0; c < F.order(); ++c) {
    const ExtFieldElement x{c};
    auto f = F.add(F.mul(F.add(F.mul(x, x), a), x), b);
    sum += F.quadratic_character(f);
  }
  return sum;
}

}  // namespace ffbsd::ff
