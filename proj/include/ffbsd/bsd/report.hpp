#pragma once

// Special-value assembly: Sha solved from the leading coefficient, once via
// the Tamagawa-number form and once via the Weil-etale Euler characteristic.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ffbsd/bsd/invariants.hpp"
#include "ffbsd/bsd/measure.hpp"
#include "ffbsd/curve/height.hpp"
#include "ffbsd/curve/torsion.hpp"
#include "ffbsd/lseries/lseries.hpp"

namespace ffbsd::bsd {

using curve::Curve;
using curve::KPoint;

struct MWInput {
  std::vector<KPoint> generators;
  std::vector<KPoint> torsion_points;
  std::optional<std::int64_t> claimed_torsion_order;
};

// A: regulator = det of the pairing with <P,P> = h(P). B: 2^r times that.
enum class Normalization { A, B };

inline const char* to_string(Normalization n) { return n == Normalization::A ? "A" : "B"; }

struct ReportOptions {
  Normalization normalization = Normalization::A;
  std::optional<Integer> known_sha;
  int doubling_cap = 12;
  std::uint64_t torsion_search_limit = 5'000'000;
  std::size_t measure_extra_places = 3;
};

struct TorsionSummary {
  std::int64_t order = 1;
  std::int64_t bound = 0;
  bool searched = false;
  std::int64_t searched_order = 0;
  std::optional<std::int64_t> input_order;
  bool consistent = true;
  std::vector<KPoint> points;
};

struct RegulatorSummary {
  std::size_t rank = 0;
  Integer denominator_bound = 1;  // N0
  curve::Matrix pairing;
  std::vector<Rational> heights;
  std::vector<Rational> leading_minors;
  Rational det = 1;    // normalization A
  Rational value = 1;  // under the selected normalization
};

struct IndexSummary {
  bool computed = false;
  Integer index = 1;
  std::string note;
};

struct ShaPath {
  std::optional<Rational> sha;
  std::optional<Rational> chi_inverse;  // chi(H_W, e)^{-1}
  Rational tamagawa_used = 1;
};

struct BSDReport {
  std::string curve;
  std::uint64_t q = 0;
  bool isotrivial = false;
  std::vector<localred::LocalData> local;
  std::vector<localred::Prop41Check> prop41;
  GlobalInvariants invariants;
  RiemannRochCheck riemann_roch;
  std::vector<MeasureTrace> measure;  // Sigma, then Sigma enlarged by 1..k good places
  bool measure_invariant = false;
  lseries::LSeries L;
  TorsionSummary torsion;
  RegulatorSummary regulator;
  IndexSummary index;
  Normalization normalization = Normalization::A;
  std::size_t r_alg = 0;

  ShaPath path_tamagawa;   // Cor 4.8 form
  ShaPath path_weil_etale; // Euler-characteristic form
  bool paths_agree = false;
  std::string sha_status;  // "determined" or the reason it is not
  std::optional<Rational> sha_analytic;

  std::optional<Integer> known_sha;
  std::optional<bool> known_sha_check;

  bool rank_match = false;
  bool sha_integral = false;
  bool sha_square = false;
  bool index_caveat = false;

  bool prop41_pass() const {
    return std::all_of(prop41.begin(), prop41.end(), [](const auto& p) { return p.pass; });
  }
  bool measure_pass() const {
    return measure_invariant && std::all_of(measure.begin(), measure.end(), [](const auto& m) { return m.all_pass(); });
  }
  // Every internal cross-check; the CLI exits 3 when this is false.
  bool consistent() const {
    return prop41_pass() && riemann_roch.pass && measure_pass() && paths_agree && known_sha_check.value_or(true);
  }
};

inline Integer denominator_bound(const GlobalInvariants& g) { return 2 * g.tamagawa * g.tamagawa; }

namespace detail {

// Does P reduce into the identity component at v? Returns the component
// index at a multiplicative place (0 = identity), nullopt when unknown.
inline std::optional<int> component_index(const localred::LocalData& d, const KPoint& P) {
  if (P.is_identity() || d.good()) return 0;
  const auto& F = P.x().field();
  const auto& pi = d.chart_place.uniformizer();
  funcfield::RationalFunction X = P.x(), Y = P.y();
  if (d.place.is_infinity()) {
    // t = 1/u: f(1/u) = u^{deg den - deg num} rev(num) / rev(den)
    auto flip = [&](const funcfield::RationalFunction& f) {
      const auto& n = f.num();
      const auto& m = f.den();
      funcfield::Poly rn = localred::reverse_padded(n, n.degree());
      funcfield::Poly rm = localred::reverse_padded(m, m.degree());
      const int shift = m.degree() - n.degree();
      funcfield::Poly u = funcfield::Poly::t(F);
      funcfield::RationalFunction r(rn, rm);
      if (shift >= 0) return r * funcfield::RationalFunction(u.pow(shift));
      return r / funcfield::RationalFunction(u.pow(-shift));
    };
    X = flip(X);
    Y = flip(Y);
    const funcfield::Poly u = funcfield::Poly::t(F);
    X = X * funcfield::RationalFunction(u.pow(2 * d.chart_weight));
    Y = Y * funcfield::RationalFunction(u.pow(3 * d.chart_weight));
  }
  if (d.shift > 0) {
    X = X / funcfield::RationalFunction(pi.pow(2 * d.shift));
    Y = Y / funcfield::RationalFunction(pi.pow(3 * d.shift));
  }
  funcfield::Place cp = d.chart_place;
  if (X.is_zero() ? false : funcfield::valuation(X, cp) < 0) return 0;  // reduces to O
  auto rm = funcfield::residue_map(cp);
  const auto& K = rm.field;
  auto x0 = funcfield::residue(X, cp, rm);
  auto y0 = Y.is_zero() ? K.zero() : funcfield::residue(Y, cp, rm);
  auto a0 = d.A.eval(K, rm.root);
  auto slope = K.add(K.mul(K.embed(F.from_int(3)), K.mul(x0, x0)), a0);
  const bool singular = K.is_zero(y0) && K.is_zero(slope);
  if (!singular) return 0;
  if (!d.multiplicative()) return std::nullopt;
  const int n = d.kodaira.n;
  const int vy = Y.is_zero() ? n : funcfield::valuation(Y, cp);
  return std::min(vy, n / 2);
}

inline IndexSummary component_index_summary(const std::vector<localred::LocalData>& local, const std::vector<KPoint>& pts) {
  IndexSummary s;
  // vectors of component indices, one per point, over bad places
  std::vector<std::vector<int>> vecs;
  for (const auto& P : pts) {
    std::vector<int> v;
    for (const auto& d : local) {
      if (d.good()) continue;
      auto c = component_index(d, P);
      if (!c) {
        s.note = "a point meets a non-identity component of an additive fiber";
        return s;
      }
      v.push_back(*c);
    }
    vecs.push_back(std::move(v));
  }
  std::vector<const localred::LocalData*> bad;
  for (const auto& d : local)
    if (!d.good()) bad.push_back(&d);
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    if (std::any_of(vecs[i].begin(), vecs[i].end(), [](int c) { return c != 0; })) nonzero.push_back(i);
  if (nonzero.empty()) {
    s.computed = true;
    s.index = 1;
    s.note = "all supplied points lie on identity components";
    return s;
  }
  if (nonzero.size() == 1) {
    // cyclic image: order of the single vector, signs per place irrelevant
    Integer order = 1;
    for (std::size_t j = 0; j < bad.size(); ++j) {
      const int n = bad[j]->kodaira.n;
      const int c = vecs[nonzero[0]][j];
      if (c == 0) continue;
      const int o = n / std::gcd(n, c);
      mpz_lcm_ui(order.get_mpz_t(), order.get_mpz_t(), static_cast<unsigned long>(o));
    }
    s.computed = true;
    s.index = order;
    s.note = "cyclic image in the multiplicative component groups";
    return s;
  }
  // several points: only a single place keeps the image cyclic
  std::optional<std::size_t> only;
  for (std::size_t j = 0; j < bad.size(); ++j) {
    bool used = false;
    for (auto i : nonzero) used = used || vecs[i][j] != 0;
    if (!used) continue;
    if (only) {
      s.note = "component images at several places; index not computed";
      return s;
    }
    only = j;
  }
  int g = bad[*only]->kodaira.n;
  for (auto i : nonzero) g = std::gcd(g, vecs[i][*only]);
  s.computed = true;
  s.index = bad[*only]->kodaira.n / g;
  s.note = "image inside one cyclic component group";
  return s;
}

}  // namespace detail

inline TorsionSummary torsion_summary(const Curve& E, const GlobalInvariants& g, const MWInput& mw, const ReportOptions& opt) {
  TorsionSummary t;
  auto search = curve::find_torsion(E, g.deg_omega, opt.torsion_search_limit);
  t.bound = search.bound;
  t.searched = search.complete;
  if (search.complete) {
    t.searched_order = search.order;
    t.points = search.points;
  }
  if (!mw.torsion_points.empty() || mw.claimed_torsion_order) {
    for (const auto& P : mw.torsion_points)
      if (!E.contains(P)) throw InputError("point not on curve: " + P.to_string());
    const std::int64_t generated = curve::generated_subgroup_order(E, mw.torsion_points, std::max<std::int64_t>(t.bound, 1));
    t.input_order = mw.claimed_torsion_order.value_or(generated);
    t.consistent = generated != 0 && generated == *t.input_order && t.bound % *t.input_order == 0;
    if (t.searched) t.consistent = t.consistent && *t.input_order == t.searched_order;
  }
  t.order = t.searched ? t.searched_order : t.input_order.value_or(1);
  if (!t.searched && !t.input_order) t.consistent = t.bound == 1;
  return t;
}

inline RegulatorSummary regulator_summary(const Curve& E, const GlobalInvariants& g, const std::vector<KPoint>& gens, const ReportOptions& opt) {
  RegulatorSummary r;
  r.rank = gens.size();
  r.denominator_bound = denominator_bound(g);
  curve::HeightOptions ho{r.denominator_bound, opt.doubling_cap};
  auto M = curve::height_pairing(E, gens, ho);
  r.pairing = M.entries;
  for (std::size_t i = 0; i < gens.size(); ++i) r.heights.push_back(M.entries[i][i]);
  r.leading_minors = M.leading_minors();
  r.det = M.determinant();
  if (!gens.empty() && (r.det == 0 || !M.positive_definite())) throw InputError("generators are dependent (regulator is 0)");
  r.value = opt.normalization == Normalization::A ? r.det : r.det * Rational(ipow(2, gens.size()));
  return r;
}

// sha = M(1/q) tau^2 / (R c(A) q^{chi_lie})
inline Rational sha_tamagawa_form(const Rational& leading, std::int64_t tau, const Rational& R, const Integer& c, int chi_lie, std::uint64_t q) {
  return leading * Rational(Integer(tau) * tau) / (R * Rational(c) * qpow(Integer(q), chi_lie));
}

// chi(H_W, e)^{-1} = M(1/q) q^{-chi_lie}; Sha = chi^{-1} tau^2 / (R c)
inline Rational chi_weil_etale_inverse(const Rational& leading, int chi_lie, std::uint64_t q) {
  return leading * qpow(Integer(q), -chi_lie);
}

inline Rational chi_weil_etale_from_sha(const Rational& sha, const Rational& R, const Rational& c, std::int64_t tau) {
  return Rational(Integer(tau) * tau) / (sha * R * c);
}

inline BSDReport assemble_report(const Curve& E, const std::vector<localred::LocalData>& local, const lseries::LSeries& L,
                                 const MWInput& mw, const ReportOptions& opt = {}) {
  BSDReport rep;
  rep.curve = E.to_string();
  rep.q = E.field().q();
  rep.isotrivial = E.is_isotrivial();
  rep.local = local;
  for (const auto& d : local) rep.prop41.push_back(localred::verify_prop41(d));
  rep.invariants = global_invariants(local);
  rep.riemann_roch = riemann_roch_check(rep.invariants);
  rep.L = L;
  rep.normalization = opt.normalization;
  const auto& g = rep.invariants;

  // (i)-(iv) on Sigma and on Sigma enlarged by up to k good places
  auto extra = good_places(E, local, opt.measure_extra_places);
  for (std::size_t k = 0; k <= extra.size(); ++k)
    rep.measure.push_back(measure_identity_trace(E, g, local, {extra.begin(), extra.begin() + static_cast<long>(k)}));
  rep.measure_invariant = true;
  for (const auto& m : rep.measure) {
    // vol / prod P_v(1/N) must not depend on Sigma
    Rational normalized = m.volume.value(rep.q) / m.euler_product;
    Rational base = rep.measure.front().volume.value(rep.q) / rep.measure.front().euler_product;
    rep.measure_invariant = rep.measure_invariant && normalized == base;
  }

  for (const auto& P : mw.generators)
    if (!E.contains(P)) throw InputError("point not on curve: " + P.to_string());
  rep.torsion = torsion_summary(E, g, mw, opt);
  rep.regulator = regulator_summary(E, g, mw.generators, opt);
  rep.r_alg = mw.generators.size();
  rep.rank_match = static_cast<std::size_t>(L.r_an) == rep.r_alg;
  rep.index_caveat = !mw.generators.empty();

  std::vector<KPoint> pts = mw.generators;
  pts.insert(pts.end(), rep.torsion.points.begin(), rep.torsion.points.end());
  rep.index = detail::component_index_summary(local, pts);

  const std::int64_t tau = rep.torsion.order;
  const Rational& R = rep.regulator.value;

  // Weil-etale path uses c(A) recovered from the adelic volume.
  const auto& m0 = rep.measure.front();
  const Rational c_measure = m0.volume.value(rep.q) / (qpow(Integer(rep.q), g.chi_lie) * m0.euler_product);
  rep.path_tamagawa.tamagawa_used = Rational(g.tamagawa);
  rep.path_weil_etale.tamagawa_used = c_measure;
  rep.path_weil_etale.chi_inverse = chi_weil_etale_inverse(L.leading, g.chi_lie, rep.q);

  if (!rep.rank_match) {
    rep.sha_status = L.r_an > 0 && mw.generators.empty() ? "undetermined (regulator unknown)"
                                                           : "undetermined (analytic rank differs from number of generators)";
  } else {
    rep.sha_status = "determined";
    rep.path_tamagawa.sha = sha_tamagawa_form(L.leading, tau, R, g.tamagawa, g.chi_lie, rep.q);
    rep.path_tamagawa.chi_inverse = *rep.path_tamagawa.sha * R * Rational(g.tamagawa) / Rational(Integer(tau) * tau);
    rep.path_weil_etale.sha = *rep.path_weil_etale.chi_inverse * Rational(Integer(tau) * tau) / (R * c_measure);
    rep.sha_analytic = rep.path_tamagawa.sha;
  }
  rep.paths_agree = rep.path_tamagawa.sha == rep.path_weil_etale.sha && c_measure == Rational(g.tamagawa) &&
                    (!rep.path_tamagawa.chi_inverse || rep.path_tamagawa.chi_inverse == rep.path_weil_etale.chi_inverse);

  if (rep.sha_analytic) {
    rep.sha_integral = is_integer(*rep.sha_analytic) && *rep.sha_analytic > 0;
    rep.sha_square = rep.sha_integral && is_perfect_square(rep.sha_analytic->get_num());
  }
  if (opt.known_sha) {
    rep.known_sha = opt.known_sha;
    if (rep.rank_match) {
      // M(1/q) = chi^{-1} q^{chi_lie} with chi^{-1} = Sha R c / tau^2
      Rational chi_inv = Rational(*opt.known_sha) * R * Rational(g.tamagawa) / Rational(Integer(tau) * tau);
      rep.known_sha_check = L.leading == chi_inv * qpow(Integer(rep.q), g.chi_lie);
    }
  }
  return rep;
}

}  // namespace ffbsd::bsd
