#pragma once

// A_n = sum over fibers x in P^1(F_{q^n}) of the local trace. Each Frobenius
// orbit of F_{q^n} is counted once and weighted by its size.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "ffbsd/curve/curve.hpp"
#include "ffbsd/error.hpp"
#include "ffbsd/ff/char_sum.hpp"
#include "ffbsd/ff/ext_field.hpp"
#include "ffbsd/localred/local_data.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::lseries {

using curve::Curve;
using funcfield::ExtField;
using funcfield::ExtFieldElement;
using funcfield::Poly;

// Models used to specialise fibers: the finite-minimal model for t in
// F_{q^n}, and the minimal model at Infinity for the chart point u = 0.
struct FiberModel {
  Curve finite;
  funcfield::FieldElement a_inf, b_inf;
  bool inf_singular = false;

  explicit FiberModel(const Curve& E)
      : finite(localred::finite_minimal_model(E).model) {
    auto d = localred::local_data(E, funcfield::Place::infinity(E.field()));
    a_inf = d.A.coeff(0);
    b_inf = d.B.coeff(0);
    inf_singular = d.v_delta_min > 0;
  }
};

// Trace of Frobenius on the fiber with reduced coefficients (a, b):
// good -> q^n + 1 - #E, multiplicative -> +-1 (split / nonsplit), additive -> 0.
inline std::int64_t fiber_trace(const ExtField& K, ExtFieldElement a, ExtFieldElement b) {
  const auto& F = K.base();
  auto disc = K.add(K.mul(K.embed(F.from_int(4)), K.mul(K.mul(a, a), a)), K.mul(K.embed(F.from_int(27)), K.mul(b, b)));
  if (!K.is_zero(disc)) {
    const std::int64_t t = -ff::cubic_character_sum(K, a, b);
    if (static_cast<std::uint64_t>(t * t) > 4 * K.order()) throw ConsistencyError("fiber trace violates the Hasse bound");
    return t;
  }
  if (!K.is_zero(a)) return K.quadratic_character(K.mul(K.embed(F.from_int(6)), b));
  return 0;
}

struct TraceSum {
  int n = 0;
  Integer A = 0;
  // Per-orbit traces in increasing representative order, Infinity last.
  std::vector<std::int32_t> fiber_traces;
  std::uint64_t checksum = 0;
};

// Representatives (least code in their Frobenius orbit) with orbit sizes.
struct Orbit {
  std::uint64_t code;
  int size;
};

inline std::vector<Orbit> frobenius_orbits(const ExtField& K) {
  std::vector<Orbit> out;
  const int n = K.degree();
  for (std::uint64_t c = 0; c < K.order(); ++c) {
    ExtFieldElement x{c};
    ExtFieldElement y = x;
    int size = n;
    bool rep = true;
    for (int i = 1; i < n; ++i) {
      y = K.frobenius(y);
      if (y.code < c) {
        rep = false;
        break;
      }
      if (y.code == c) {
        size = i;
        break;
      }
    }
    if (rep) out.push_back({c, size});
  }
  return out;
}

inline std::uint64_t mix_checksum(std::uint64_t index, std::int64_t trace) {
  std::uint64_t h = index * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(trace) * 0xC2B2AE3D27D4EB4FULL;
  h ^= h >> 29;
  h *= 0xBF58476D1CE4E5B9ULL;
  return h ^ (h >> 32);
}

inline std::uint64_t traces_checksum(const std::vector<std::int32_t>& traces) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) s += mix_checksum(i, traces[i]);
  return s;
}

inline std::int64_t orbit_trace(const FiberModel& M, const ExtField& K, std::uint64_t code) {
  ExtFieldElement x{code};
  return fiber_trace(K, M.finite.a().eval(K, x), M.finite.b().eval(K, x));
}

inline std::int64_t infinity_trace(const FiberModel& M, const ExtField& K) {
  return fiber_trace(K, K.embed(M.a_inf), K.embed(M.b_inf));
}

inline TraceSum trace_sum(const FiberModel& M, int n, int threads = 1) {
  if (n < 1) throw InputError("trace_sum needs n >= 1");
  ExtField K = ff::build_tower(M.finite.field(), n);
  auto orbits = frobenius_orbits(K);
  TraceSum ts;
  ts.n = n;
  ts.fiber_traces.assign(orbits.size() + 1, 0);
  const int workers = std::max(1, threads);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (std::size_t i = w; i < orbits.size(); i += workers)
        ts.fiber_traces[i] = static_cast<std::int32_t>(orbit_trace(M, K, orbits[i].code));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  ts.fiber_traces.back() = static_cast<std::int32_t>(infinity_trace(M, K));
  for (std::size_t i = 0; i < orbits.size(); ++i) ts.A += Integer(ts.fiber_traces[i]) * orbits[i].size;
  ts.A += ts.fiber_traces.back();
  ts.checksum = traces_checksum(ts.fiber_traces);
  return ts;
}

inline TraceSum trace_sum(const Curve& E, int n, int threads = 1) { return trace_sum(FiberModel(E), n, threads); }

}  // namespace ffbsd::lseries
