#pragma once

// Local and adelic volumes as exact q-powers times rationals.

#include <string>
#include <vector>

#include "ffbsd/bsd/invariants.hpp"
#include "ffbsd/funcfield/place.hpp"
#include "ffbsd/localred/local_data.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::bsd {

// q^exponent * factor
struct QMeasure {
  long exponent = 0;
  Rational factor = 1;

  Rational value(std::uint64_t q) const { return qpow(Integer(q), exponent) * factor; }
  friend QMeasure operator*(const QMeasure& a, const QMeasure& b) { return {a.exponent + b.exponent, a.factor * b.factor}; }
  friend QMeasure operator/(const QMeasure& a, const QMeasure& b) { return {a.exponent - b.exponent, a.factor / b.factor}; }
  // Same value; exponents may differ when a factor carries powers of q.
  bool equals(const QMeasure& o, std::uint64_t q) const { return value(q) == o.value(q); }
};

struct LocalMeasure {
  funcfield::Place place;
  QMeasure from_counts;  // c_v N^{-v(omega)} #A0(k(v)) / N
  QMeasure from_euler;   // c_v N^{-v(omega)} P_v(1/N)
  Rational euler_value;  // P_v(1/N)
  bool pass = false;
};

struct MeasureTrace {
  std::vector<LocalMeasure> local;          // (i)
  QMeasure lie_integral;                    // (ii) prod N^{-v(omega)}
  QMeasure lie_quotient;                    // (ii) q^{-deg_omega - chi_lie}
  bool lie_pass = false;
  bool riemann_roch_instance = false;       // (iii) quotient = q^{-1}
  QMeasure volume;                          // (iv) left side
  QMeasure volume_formula;                  // (iv) c(A) q^{chi_lie} prod P_v(1/N)
  Rational euler_product = 1;               // prod P_v(1/N) over Sigma
  bool volume_pass = false;
  std::size_t extra_good_places = 0;

  bool local_pass() const {
    for (const auto& m : local)
      if (!m.pass) return false;
    return true;
  }
  bool all_pass() const { return local_pass() && lie_pass && riemann_roch_instance && volume_pass; }
};

// Sigma = places of bad reduction or nonzero v(omega), plus extra good ones.
inline MeasureTrace measure_identity_trace(const curve::Curve& E, const GlobalInvariants& g,
                                           const std::vector<LocalData>& local,
                                           const std::vector<funcfield::Place>& extra_good = {}) {
  const std::uint64_t q = E.field().q();
  std::vector<LocalData> sigma;
  for (const auto& d : local)
    if (!d.good() || d.v_omega != 0) sigma.push_back(d);
  for (const auto& v : extra_good) {
    auto d = localred::local_data(E, v);
    if (!d.good()) throw InputError("place " + v.to_string() + " is not a good place");
    sigma.push_back(std::move(d));
  }

  MeasureTrace t;
  t.extra_good_places = extra_good.size();
  QMeasure mu_product;
  for (const auto& d : sigma) {
    const Integer N(d.place.norm());
    const long deg = d.degree();
    LocalMeasure m{d.place, {}, {}, 0, false};
    m.euler_value = localred::eval_at(localred::euler_factor(d), Rational(Integer(1), N));
    Rational count(Integer(localred::count_reduced_points(d, 1)), N);
    count.canonicalize();
    m.from_counts = {-deg * d.v_omega, Rational(d.c) * count};
    m.from_euler = {-deg * d.v_omega, Rational(d.c) * m.euler_value};
    m.pass = m.from_counts.equals(m.from_euler, q);
    mu_product = mu_product * m.from_counts;
    t.lie_integral = t.lie_integral * QMeasure{-deg * d.v_omega, 1};
    t.euler_product *= m.euler_value;
    t.local.push_back(std::move(m));
  }

  auto rr = riemann_roch_check(g);
  t.lie_quotient = t.lie_integral * QMeasure{-rr.chi, 1};
  t.lie_pass = t.lie_integral.equals({-g.deg_omega, 1}, q) && t.lie_quotient.equals({-g.deg_omega - g.chi_lie, 1}, q);
  t.riemann_roch_instance = t.lie_quotient.equals({-1, 1}, q);

  t.volume = mu_product / t.lie_quotient;
  t.volume_formula = {g.chi_lie, Rational(g.tamagawa) * t.euler_product};
  t.volume_pass = t.volume.equals(t.volume_formula, q);
  return t;
}

// Good places of small degree outside Sigma, used to enlarge it.
inline std::vector<funcfield::Place> good_places(const curve::Curve& E, const std::vector<LocalData>& local, std::size_t count) {
  std::vector<funcfield::Place> out;
  for (int deg = 1; out.size() < count; ++deg) {
    for (auto& v : funcfield::places_of_degree(E.field(), deg)) {
      bool listed = false;
      for (const auto& d : local) listed = listed || d.place == v;
      if (listed) continue;
      out.push_back(v);
      if (out.size() == count) break;
    }
  }
  return out;
}

}  // namespace ffbsd::bsd
