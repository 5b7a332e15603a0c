#pragma once

// The ffbsd command line: `verify FILE` and `local FILE PLACE`.
// Exit codes: 0 ok, 2 unsupported or bad input, 3 internal cross-check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ffbsd/bsd/report.hpp"
#include "ffbsd/io/cache.hpp"
#include "ffbsd/io/report_json.hpp"
#include "ffbsd/io/spec_file.hpp"

namespace ffbsd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConsistency = 3;

struct VerifyFlags {
  std::string path;
  int max_n = 0;
  bool no_cache = false;
  bool validate_cache = false;
  int threads = 0;
  std::string normalization;
  std::string known_sha;
  std::string out;
  std::string cache_dir;
  bool allow_isotrivial = false;
  int doubling_cap = 12;
};

struct LocalFlags {
  std::string path;
  std::string place;
};

inline std::string cache_directory(const VerifyFlags& f) {
  if (f.no_cache) return {};
  if (!f.cache_dir.empty()) return f.cache_dir;
  if (const char* env = std::getenv("FFBSD_CACHE")) return env;
  return {};
}

inline void print_summary(const bsd::BSDReport& r, const std::string& name, std::ostream& err) {
  err << (name.empty() ? std::string("curve") : name) << ": " << r.curve << " over F_" << r.q << "\n";
  for (std::size_t i = 0; i < r.local.size(); ++i) {
    const auto& d = r.local[i];
    err << "  " << d.place.to_string() << ": " << d.kodaira.to_string() << "  f=" << d.f << " c=" << d.c
        << " v(omega)=" << d.v_omega << "  P=" << lseries::to_string(localred::euler_factor(d), "X")
        << (r.prop41[i].pass ? "" : "  [Euler factor/count MISMATCH]") << "\n";
  }
  const auto& g = r.invariants;
  err << "  deg n = " << g.conductor_degree << ", deg omega = " << g.deg_omega << ", chi(Lie) = " << g.chi_lie
      << ", c(A) = " << g.tamagawa << "\n";
  err << "  L(T) = " << lseries::to_string(r.L.coeffs) << "  (eps = " << r.L.epsilon << ", r_an = " << r.L.r_an
      << ", M(1/q) = " << r.L.leading << ")\n";
  err << "  torsion " << r.torsion.order << " (bound " << r.torsion.bound << "), regulator " << r.regulator.value
      << " [" << bsd::to_string(r.normalization) << "], rank " << r.r_alg << "\n";
  err << "  Sha: " << r.sha_status;
  if (r.sha_analytic) err << " = " << *r.sha_analytic;
  err << (r.paths_agree ? "" : "  [formula paths DISAGREE]") << "\n";
  if (r.known_sha_check) err << "  known Sha " << *r.known_sha << ": " << (*r.known_sha_check ? "consistent" : "INCONSISTENT") << "\n";
  if (r.index.computed && r.index.index != 1)
    err << "  note: the points reach non-identity components; index " << r.index.index << "\n";
  err << "  checks: " << (r.consistent() ? "all pass" : "FAILED") << "\n";
}

inline int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  auto spec = io::load_curve_spec(f.path);
  const auto& E = spec.curve;
  if (E.is_isotrivial() && !f.allow_isotrivial)
    throw UnsupportedError("isotrivial curve unsupported (pass --allow-isotrivial to run anyway)");

  bsd::ReportOptions ro;
  ro.doubling_cap = f.doubling_cap;
  ro.normalization = spec.normalization.value_or(bsd::Normalization::A);
  if (f.normalization == "A") ro.normalization = bsd::Normalization::A;
  if (f.normalization == "B") ro.normalization = bsd::Normalization::B;
  ro.known_sha = spec.known_sha;
  if (!f.known_sha.empty()) ro.known_sha = io::detail::parse_positive_integer(io::json(f.known_sha), "--known-sha");

  const int threads = f.threads > 0 ? f.threads : std::max(1u, std::thread::hardware_concurrency());
  io::CountCache cache(cache_directory(f), f.validate_cache, threads, err);

  auto local = localred::local_data_all(E);
  lseries::LOptions lo;
  lo.max_n = f.max_n;
  lo.threads = threads;
  if (cache.enabled()) lo.trace_provider = [&](const lseries::FiberModel& M, int n) { return cache.get_or_compute(M, n); };
  auto L = lseries::assemble_L(E, local, lo);
  auto report = bsd::assemble_report(E, local, L, spec.mw, ro);

  const std::string text = io::report_to_json(report, spec.name).dump(2) + "\n";
  if (f.out.empty()) {
    out << text;
  } else {
    std::ofstream o(f.out);
    if (!o) throw InputError("cannot write " + f.out);
    o << text;
  }
  print_summary(report, spec.name, err);
  if (cache.enabled()) {
    const auto& s = cache.stats();
    err << "  cache: " << s.hits << " hit(s), " << s.misses << " miss(es)";
    if (s.mismatches) err << ", " << s.mismatches << " failed validation";
    if (s.corrupt) err << ", " << s.corrupt << " corrupt";
    err << "\n";
  }
  if (!report.torsion.consistent && report.torsion.input_order) {
    err << "error: supplied torsion does not match the torsion subgroup\n";
    return kExitInput;
  }
  return report.consistent() ? kExitOk : kExitConsistency;
}

inline int cmd_local(const LocalFlags& f, std::ostream& out) {
  auto spec = io::load_curve_spec(f.path);
  const auto v = io::parse_place(spec.curve.field(), f.place);
  const auto d = localred::local_data(spec.curve, v);
  const auto p = localred::verify_prop41(d);
  out << "place " << v.to_string() << " (degree " << d.degree() << ", N = " << v.norm() << ")\n";
  out << "kodaira " << d.kodaira.to_string() << "\n";
  out << "f " << d.f << "\n";
  out << "c " << d.c << "\n";
  if (d.split) out << "split " << (*d.split ? "yes" : "no") << "\n";
  out << "v(Delta_min) " << d.v_delta_min << "\n";
  out << "v(omega) " << d.v_omega << "\n";
  out << "P_v(X) " << lseries::to_string(localred::euler_factor(d), "X") << "\n";
  out << "P_v(1/N) " << p.euler_side << "\n";
  out << "#A0(k(v))/N " << p.count_side << "\n";
  out << "check " << (p.pass ? "pass" : "FAIL") << "\n";
  return p.pass ? kExitOk : kExitConsistency;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Special-value formula for elliptic curves over F_q(t)", "ffbsd"};
  app.require_subcommand(1);

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "full pipeline; JSON report on stdout, summary on stderr");
  verify->add_option("file", vf.path, "curve file (JSON)")->required();
  verify->add_option("--max-n", vf.max_n, "count fibers only up to this degree; the rest from the functional equation")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-cache", vf.no_cache, "do not read or write the count cache");
  verify->add_flag("--validate-cache", vf.validate_cache, "spot-check cache hits by recounting");
  verify->add_option("--threads", vf.threads, "worker threads for fiber counting")->check(CLI::PositiveNumber);
  verify->add_option("--normalization", vf.normalization, "height calibration")->check(CLI::IsMember({"A", "B"}));
  verify->add_option("--known-sha", vf.known_sha, "independently known order of Sha");
  verify->add_option("--out", vf.out, "write the report here instead of stdout");
  verify->add_option("--cache-dir", vf.cache_dir, "count cache directory (default: $FFBSD_CACHE)");
  verify->add_flag("--allow-isotrivial", vf.allow_isotrivial, "run on isotrivial curves");
  verify->add_option("--doubling-cap", vf.doubling_cap, "maximum doublings per height")->check(CLI::PositiveNumber);

  LocalFlags lf;
  auto* local = app.add_subcommand("local", "local data and the Euler-factor/point-count check at one place");
  local->add_option("file", lf.path, "curve file (JSON)")->required();
  local->add_option("place", lf.place, "\"inf\" or a monic irreducible polynomial, e.g. \"t^2 + 2\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*verify) return cmd_verify(vf, out, err);
    return cmd_local(lf, out);
  } catch (const ConsistencyError& e) {
    err << "error: internal cross-check failed: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const HeightError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace ffbsd::cli
