#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/localred/local_data.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::bsd {

using localred::LocalData;

struct GlobalInvariants {
  int deg_omega = 0;      // sum deg(v) v(omega)
  int deg_delta_min = 0;  // sum deg(v) v(Delta_min)
  int chi_lie = 0;        // 1 - deg_omega on P^1
  Integer tamagawa = 1;
  int conductor_degree = 0;
};

inline GlobalInvariants global_invariants(const std::vector<LocalData>& local) {
  GlobalInvariants g;
  for (const auto& d : local) {
    g.deg_omega += d.degree() * d.v_omega;
    g.deg_delta_min += d.degree() * d.v_delta_min;
    g.tamagawa *= d.c;
  }
  if (g.deg_delta_min % 12 != 0) throw ConsistencyError("deg(Delta_min) = " + std::to_string(g.deg_delta_min) + " is not divisible by 12");
  if (g.deg_delta_min / 12 != g.deg_omega)
    throw ConsistencyError("deg(omega) from v(omega) disagrees with deg(Delta_min)/12");
  g.chi_lie = 1 - g.deg_omega;
  g.conductor_degree = localred::conductor_degree(local);
  return g;
}

// Coherent cohomology of Lie(A) = O(-deg_omega) on P^1.
struct RiemannRochCheck {
  int bundle_degree = 0;
  int h0 = 0, h1 = 0;
  int chi = 0;       // h0 - h1
  int expected = 0;  // d chi(O_S) + deg Lie = 1 - deg_omega
  bool pass = false;
};

inline RiemannRochCheck riemann_roch_check(const GlobalInvariants& g) {
  RiemannRochCheck r;
  r.bundle_degree = -g.deg_omega;
  r.h0 = std::max(0, r.bundle_degree + 1);
  r.h1 = std::max(0, -r.bundle_degree - 1);
  r.chi = r.h0 - r.h1;
  r.expected = 1 + r.bundle_degree;
  r.pass = r.chi == r.expected && r.chi == g.chi_lie;
  return r;
}

}  // namespace ffbsd::bsd
