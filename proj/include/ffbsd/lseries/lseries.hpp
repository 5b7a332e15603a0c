#pragma once

// L(T), T = q^{-s}, as an integer polynomial of degree D = deg(n) - 4, by
// exponentiating trace sums and, independently, by multiplying Euler factors.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffbsd/error.hpp"
#include "ffbsd/localred/local_data.hpp"
#include "ffbsd/lseries/trace_sum.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::lseries {

using IntPoly = std::vector<Integer>;

struct LSeries {
  IntPoly coeffs;  // l_0 .. l_D
  std::uint64_t q = 0;
  int D = 0;
  int epsilon = 1;
  int r_an = 0;
  Rational leading = 1;  // M(1/q) with L = (1 - qT)^r M
  IntPoly cofactor;      // M
  // Highest n whose coefficient was computed directly; the rest came from
  // the functional equation.
  int computed_through = 0;
};

inline Rational eval_poly(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

struct RankLeading {
  int r_an = 0;
  Rational leading = 1;
  IntPoly cofactor;
};

// Strip factors (1 - qT) and evaluate the cofactor at T = 1/q.
inline RankLeading rank_and_leading(const IntPoly& L, std::uint64_t q) {
  RankLeading out;
  IntPoly cur = L;
  const Integer Q(q);
  const Rational root(Integer(1), Q);
  while (cur.size() > 1 && eval_poly(cur, root) == 0) {
    // cur = (1 - qT) m: m_0 = c_0, m_i = c_i + q m_{i-1}
    IntPoly m(cur.size() - 1);
    Integer prev = 0;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      m[i] = cur[i] + Q * prev;
      prev = m[i];
    }
    if (cur.back() != -Q * prev) throw ConsistencyError("exact division by (1 - qT) left a remainder");
    cur = std::move(m);
    ++out.r_an;
  }
  out.leading = eval_poly(cur, root);
  out.cofactor = std::move(cur);
  return out;
}

namespace detail {

// Fill l_{D-i} = eps q^{D-2i} l_i for indices beyond the computed prefix, and
// check every available pair. Returns epsilon.
inline int apply_functional_equation(IntPoly& l, int computed_through, int D, std::uint64_t q) {
  const Integer Q(q);
  std::optional<int> eps;
  for (int i = 0; i <= D; ++i) {
    const int j = D - i;
    if (i > j) break;
    if (j > computed_through || l[i] == 0) continue;
    Integer scaled = l[i] * ipow(Q, static_cast<unsigned long>(D - 2 * i));
    int e;
    if (l[j] == scaled) {
      e = 1;
    } else if (l[j] == -scaled) {
      e = -1;
    } else {
      throw ConsistencyError("functional equation fails at coefficient " + std::to_string(j));
    }
    if (eps && *eps != e) throw ConsistencyError("functional equation sign is inconsistent");
    eps = e;
  }
  if (!eps) throw InputError("too few coefficients computed to fix the functional-equation sign; raise --max-n");
  for (int i = 0; 2 * i <= D; ++i) {
    const int j = D - i;
    Integer expected = *eps * l[i] * ipow(Q, static_cast<unsigned long>(D - 2 * i));
    if (j > computed_through) {
      l[j] = expected;
    } else if (l[j] != expected) {
      throw ConsistencyError("functional equation fails at coefficient " + std::to_string(j));
    }
  }
  return *eps;
}

inline LSeries finish(IntPoly l, int computed_through, int D, std::uint64_t q) {
  if (l.empty() || l[0] != 1) throw ConsistencyError("L(0) != 1");
  LSeries s;
  s.q = q;
  s.D = D;
  s.computed_through = computed_through;
  s.epsilon = apply_functional_equation(l, computed_through, D, q);
  s.coeffs = std::move(l);
  auto rl = rank_and_leading(s.coeffs, q);
  s.r_an = rl.r_an;
  s.leading = rl.leading;
  s.cofactor = std::move(rl.cofactor);
  return s;
}

}  // namespace detail

// Newton's identity n l_n = sum_{k=1}^n A_k l_{n-k}; A_k for k <= M supplied.
inline LSeries assemble_L_exp(const std::vector<Integer>& A, int D, std::uint64_t q) {
  const int M = std::min<int>(D, static_cast<int>(A.size()));
  IntPoly l(D + 1, 0);
  l[0] = 1;
  for (int n = 1; n <= M; ++n) {
    Integer s = 0;
    for (int k = 1; k <= n; ++k) s += A[k - 1] * l[n - k];
    if (s % n != 0) throw ConsistencyError("non-integral L coefficient at T^" + std::to_string(n));
    l[n] = s / n;
  }
  return detail::finish(std::move(l), M, D, q);
}

struct LOptions {
  int max_n = 0;  // 0: compute every coefficient directly
  int threads = 1;
  // Hook for a count cache: returns A_n, computing on a miss.
  std::function<TraceSum(const FiberModel&, int)> trace_provider;
};

inline int cap(const LOptions& opt, int D) { return opt.max_n > 0 ? std::min(opt.max_n, D) : D; }

inline LSeries assemble_L_exp(const Curve& E, int D, const LOptions& opt = {}) {
  if (D < 0) throw UnsupportedError("unsupported curve class (L-degree negative)");
  FiberModel M(E);
  std::vector<Integer> A;
  for (int n = 1; n <= cap(opt, D); ++n)
    A.push_back(opt.trace_provider ? opt.trace_provider(M, n).A : trace_sum(M, n, opt.threads).A);
  return assemble_L_exp(A, D, E.field().q());
}

// 1 / P(T^d) mod T^{M+1}, for P with constant term 1.
inline IntPoly inverse_factor_series(const IntPoly& P, int d, int M) {
  IntPoly inv(M / d + 1, 0);
  inv[0] = 1;
  for (std::size_t k = 1; k < inv.size(); ++k) {
    Integer s = 0;
    for (std::size_t j = 1; j < P.size() && j <= k; ++j) s -= P[j] * inv[k - j];
    inv[k] = s;
  }
  IntPoly out(M + 1, 0);
  for (std::size_t k = 0; k < inv.size(); ++k) out[k * d] = inv[k];
  return out;
}

inline void mul_truncated(IntPoly& acc, const IntPoly& f) {
  const std::size_t M = acc.size();
  IntPoly r(M, 0);
  for (std::size_t i = 0; i < M; ++i) {
    if (acc[i] == 0) continue;
    for (std::size_t j = 0; i + j < M; ++j)
      if (f[j] != 0) r[i + j] += acc[i] * f[j];
  }
  acc = std::move(r);
}

// Product over places of degree <= M of P_v(T^{deg v})^{-1}. Good factors
// come from counting at a root of each place; bad factors from local data.
inline LSeries assemble_L_euler(const Curve& E, int D, const std::vector<localred::LocalData>& local, const LOptions& opt = {}) {
  if (D < 0) throw UnsupportedError("unsupported curve class (L-degree negative)");
  const int M = cap(opt, D);
  const auto& F = E.field();
  const Curve model = localred::finite_minimal_model(E).model;
  IntPoly acc(M + 1, 0);
  acc[0] = 1;
  std::vector<const localred::LocalData*> bad;
  for (const auto& d : local) {
    if (d.good()) continue;
    if (d.place.degree() <= M) mul_truncated(acc, inverse_factor_series(localred::euler_factor(d), d.place.degree(), M));
    if (!d.place.is_infinity()) bad.push_back(&d);
  }
  for (const auto& d : local)
    if (d.good() && d.place.is_infinity()) mul_truncated(acc, inverse_factor_series(localred::euler_factor(d), 1, M));

  for (int deg = 1; deg <= M; ++deg) {
    ExtField K = ff::build_tower(F, deg);
    const Integer N(K.order());
    for (const auto& orb : frobenius_orbits(K)) {
      if (orb.size != deg) continue;
      ExtFieldElement x{orb.code};
      bool is_bad = false;
      for (const auto* b : bad)
        if (b->place.degree() == deg && K.is_zero(b->place.uniformizer().eval(K, x))) is_bad = true;
      if (is_bad) continue;
      auto a = model.a().eval(K, x), bb = model.b().eval(K, x);
      const Integer av = -Integer(ff::cubic_character_sum(K, a, bb));
      mul_truncated(acc, inverse_factor_series({1, -av, N}, deg, M));
    }
  }
  acc.resize(D + 1, 0);
  return detail::finish(std::move(acc), M, D, F.q());
}

// Both methods, compared coefficientwise.
inline LSeries assemble_L(const Curve& E, const std::vector<localred::LocalData>& local, const LOptions& opt = {}) {
  const int D = localred::conductor_degree(local) - 4;
  LSeries ex = assemble_L_exp(E, D, opt);
  LSeries eu = assemble_L_euler(E, D, local, opt);
  if (ex.coeffs != eu.coeffs) throw ConsistencyError("trace-sum and Euler-product L-functions disagree");
  return ex;
}

inline std::string to_string(const IntPoly& p, const std::string& var = "T") {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Integer c = p[i];
    std::string sign = c < 0 ? " - " : " + ";
    if (s.empty()) sign = c < 0 ? "-" : "";
    c = abs(c);
    std::string term = (c == 1 && i > 0) ? "" : c.get_str();
    if (i >= 1) term += var;
    if (i >= 2) term += "^" + std::to_string(i);
    s += sign + term;
  }
  return s.empty() ? "0" : s;
}

}  // namespace ffbsd::lseries
