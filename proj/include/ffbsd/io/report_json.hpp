#pragma once

// Machine-readable report. Every number is an integer or {"num", "den"};
// integers outside int64 are written as decimal strings.

#include <string>

#include <json.hpp>

#include "ffbsd/bsd/report.hpp"
#include "ffbsd/rational.hpp"

namespace ffbsd::io {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ffbsd-report/1";

inline ojson to_json(const Integer& n) {
  if (fits_int64(n)) return to_int64(n);
  return n.get_str();
}

inline ojson to_json(const Rational& r) {
  ojson j;
  j["num"] = to_json(r.get_num());
  j["den"] = to_json(r.get_den());
  return j;
}

inline ojson to_json(const lseries::IntPoly& p) {
  ojson j = ojson::array();
  for (const auto& c : p) j.push_back(to_json(c));
  return j;
}

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : ojson(nullptr);
}

inline ojson to_json(const curve::KPoint& P) {
  if (P.is_identity()) return "O";
  ojson j;
  j["x"] = P.x().to_string();
  j["y"] = P.y().to_string();
  return j;
}

inline ojson to_json(const localred::LocalData& d, const localred::Prop41Check& p) {
  ojson j;
  j["place"] = d.place.to_string();
  j["degree"] = d.degree();
  j["kodaira"] = d.kodaira.to_string();
  j["f"] = d.f;
  j["c"] = d.c;
  j["v_delta_min"] = d.v_delta_min;
  j["v_delta_input"] = d.v_delta_input;
  j["v_omega"] = d.v_omega;
  if (d.split) j["split"] = *d.split;
  j["euler_factor"] = to_json(localred::euler_factor(d));
  j["reduced_points"] = localred::count_reduced_points(d, 1);
  j["prop41"] = {{"euler_side", to_json(p.euler_side)}, {"count_side", to_json(p.count_side)}, {"pass", p.pass}};
  return j;
}

inline ojson to_json(const bsd::QMeasure& m) { return {{"q_exponent", m.exponent}, {"factor", to_json(m.factor)}}; }

inline ojson to_json(const bsd::MeasureTrace& t) {
  ojson j;
  j["extra_good_places"] = t.extra_good_places;
  ojson loc = ojson::array();
  for (const auto& m : t.local)
    loc.push_back({{"place", m.place.to_string()},
                   {"from_counts", to_json(m.from_counts)},
                   {"from_euler", to_json(m.from_euler)},
                   {"euler_value", to_json(m.euler_value)},
                   {"pass", m.pass}});
  j["local"] = loc;
  j["lie_integral"] = to_json(t.lie_integral);
  j["lie_quotient"] = to_json(t.lie_quotient);
  j["lie_pass"] = t.lie_pass;
  j["quotient_is_q_inverse"] = t.riemann_roch_instance;
  j["volume"] = to_json(t.volume);
  j["volume_formula"] = to_json(t.volume_formula);
  j["euler_product"] = to_json(t.euler_product);
  j["volume_pass"] = t.volume_pass;
  return j;
}

inline ojson to_json(const bsd::ShaPath& p) {
  return {{"sha", optional_json(p.sha)}, {"chi_inverse", optional_json(p.chi_inverse)}, {"tamagawa_used", to_json(p.tamagawa_used)}};
}

inline ojson report_to_json(const bsd::BSDReport& r, const std::string& name = {}) {
  ojson j;
  j["schema"] = kReportSchema;
  if (!name.empty()) j["name"] = name;
  j["curve"] = {{"equation", r.curve}, {"q", r.q}, {"isotrivial", r.isotrivial}};

  ojson loc = ojson::array();
  for (std::size_t i = 0; i < r.local.size(); ++i) loc.push_back(to_json(r.local[i], r.prop41[i]));
  j["local"] = loc;

  const auto& g = r.invariants;
  j["invariants"] = {{"deg_omega", g.deg_omega},
                     {"deg_delta_min", g.deg_delta_min},
                     {"chi_lie", g.chi_lie},
                     {"tamagawa", to_json(g.tamagawa)},
                     {"conductor_degree", g.conductor_degree}};
  const auto& rr = r.riemann_roch;
  j["riemann_roch"] = {{"bundle_degree", rr.bundle_degree}, {"h0", rr.h0}, {"h1", rr.h1},
                       {"chi", rr.chi}, {"expected", rr.expected}, {"pass", rr.pass}};

  const auto& L = r.L;
  // L'-leading term in s: L(s) ~ M(1/q) (log q)^r (s - 1)^r
  j["lseries"] = {{"D", L.D},
                  {"coefficients", to_json(L.coeffs)},
                  {"computed_through", L.computed_through},
                  {"epsilon", L.epsilon},
                  {"r_an", L.r_an},
                  {"cofactor", to_json(L.cofactor)},
                  {"leading", to_json(L.leading)},
                  {"leading_in_s", {{"coefficient", to_json(L.leading)}, {"log_q_power", L.r_an}}}};

  ojson ms = ojson::array();
  for (const auto& m : r.measure) ms.push_back(to_json(m));
  j["measure"] = {{"traces", ms}, {"invariant_under_enlargement", r.measure_invariant}};

  const auto& t = r.torsion;
  ojson tp = ojson::array();
  for (const auto& P : t.points) tp.push_back(to_json(P));
  j["torsion"] = {{"order", t.order},
                  {"bound", t.bound},
                  {"searched", t.searched},
                  {"input_order", t.input_order ? ojson(*t.input_order) : ojson(nullptr)},
                  {"consistent", t.consistent},
                  {"points", tp}};

  const auto& reg = r.regulator;
  ojson pairing = ojson::array();
  for (const auto& row : reg.pairing) {
    ojson jr = ojson::array();
    for (const auto& e : row) jr.push_back(to_json(e));
    pairing.push_back(jr);
  }
  ojson heights = ojson::array(), minors = ojson::array();
  for (const auto& h : reg.heights) heights.push_back(to_json(h));
  for (const auto& h : reg.leading_minors) minors.push_back(to_json(h));
  j["regulator"] = {{"rank", reg.rank},
                    {"normalization", bsd::to_string(r.normalization)},
                    {"denominator_bound", to_json(reg.denominator_bound)},
                    {"heights", heights},
                    {"pairing", pairing},
                    {"leading_minors", minors},
                    {"det", to_json(reg.det)},
                    {"value", to_json(reg.value)}};

  j["index"] = {{"computed", r.index.computed}, {"value", r.index.computed ? to_json(r.index.index) : ojson(nullptr)}, {"note", r.index.note}};

  j["sha"] = {{"status", r.sha_status},
              {"analytic", optional_json(r.sha_analytic)},
              {"tamagawa_path", to_json(r.path_tamagawa)},
              {"weil_etale_path", to_json(r.path_weil_etale)},
              {"paths_agree", r.paths_agree},
              {"known", optional_json(r.known_sha)},
              {"known_check", r.known_sha_check ? ojson(*r.known_sha_check) : ojson(nullptr)}};
  j["flags"] = {{"r_alg", r.r_alg},
                {"rank_match", r.rank_match},
                {"sha_integral", r.sha_integral},
                {"sha_square", r.sha_square},
                {"index_caveat", r.index_caveat}};
  j["checks"] = {{"prop41", r.prop41_pass()},
                 {"riemann_roch", r.riemann_roch.pass},
                 {"measure", r.measure_pass()},
                 {"dual_method_L", true},
                 {"paths_agree", r.paths_agree},
                 {"known_sha", r.known_sha_check ? ojson(*r.known_sha_check) : ojson(nullptr)},
                 {"consistent", r.consistent()}};
  return j;
}

}  // namespace ffbsd::io
