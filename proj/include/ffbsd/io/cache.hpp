#pragma once

// On-disk memo of trace sums, one JSON file per (curve hash, n).

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ffbsd/lseries/trace_sum.hpp"

namespace ffbsd::io {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr int kCacheVersion = 1;

// FNV-1a over the fiber-relevant data: the finite-minimal model and the
// reduced model at Infinity.
inline std::string curve_hash(const lseries::FiberModel& M) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  const auto& F = M.finite.field();
  feed(F.p());
  feed(static_cast<std::uint64_t>(F.e()));
  for (const auto* poly : {&M.finite.a(), &M.finite.b()}) {
    feed(static_cast<std::uint64_t>(poly->degree() + 1));
    for (auto c : poly->coefficients()) feed(c.code);
  }
  feed(M.a_inf.code);
  feed(M.b_inf.code);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct CacheStats {
  int hits = 0;
  int misses = 0;
  int mismatches = 0;
  int corrupt = 0;
};

class CountCache {
 public:
  // An empty directory disables the cache.
  CountCache(std::string dir, bool validate, int threads, std::ostream& log = std::cerr)
      : dir_(std::move(dir)), validate_(validate), threads_(threads), log_(log) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }
  const CacheStats& stats() const { return stats_; }

  fs::path entry_path(const std::string& hash, int n) const { return fs::path(dir_) / (hash + "-n" + std::to_string(n) + ".json"); }

  std::optional<lseries::TraceSum> get(const lseries::FiberModel& M, int n) {
    if (!enabled()) return std::nullopt;
    const auto hash = curve_hash(M);
    const auto path = entry_path(hash, n);
    if (!fs::exists(path)) return std::nullopt;
    lseries::TraceSum ts;
    try {
      std::ifstream in(path);
      json j = json::parse(in);
      if (j.at("version").get<int>() != kCacheVersion || j.at("hash").get<std::string>() != hash || j.at("n").get<int>() != n)
        throw std::runtime_error("header mismatch");
      ts.n = n;
      ts.A = Integer(j.at("A").get<std::string>());
      ts.checksum = std::stoull(j.at("checksum").get<std::string>(), nullptr, 16);
      ts.fiber_traces = j.at("fiber_traces").get<std::vector<std::int32_t>>();
    } catch (const std::exception& e) {
      log_ << "warning: discarding corrupt cache entry " << path << " (" << e.what() << ")\n";
      ++stats_.corrupt;
      fs::remove(path);
      return std::nullopt;
    }
    if (validate_ && !validate(M, ts, hash)) {
      log_ << "warning: cache entry " << path << " failed validation; recomputing\n";
      ++stats_.mismatches;
      return std::nullopt;
    }
    return ts;
  }

  void put(const lseries::FiberModel& M, const lseries::TraceSum& ts) {
    if (!enabled()) return;
    const auto hash = curve_hash(M);
    const auto path = entry_path(hash, ts.n);
    json j;
    j["version"] = kCacheVersion;
    j["hash"] = hash;
    j["n"] = ts.n;
    j["A"] = ts.A.get_str();
    std::ostringstream cs;
    cs << std::hex << ts.checksum;
    j["checksum"] = cs.str();
    j["fiber_traces"] = ts.fiber_traces;

    // single writer: exclusive lock, write a temp file, rename into place
    const auto lock_path = fs::path(dir_) / ".lock";
    int fd = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd < 0) {
      log_ << "warning: cannot open cache lock " << lock_path << "; not caching\n";
      return;
    }
    ::flock(fd, LOCK_EX);
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
    ::flock(fd, LOCK_UN);
    ::close(fd);
  }

  lseries::TraceSum get_or_compute(const lseries::FiberModel& M, int n) {
    if (auto hit = get(M, n)) {
      ++stats_.hits;
      return *hit;
    }
    ++stats_.misses;
    auto ts = lseries::trace_sum(M, n, threads_);
    put(M, ts);
    return ts;
  }

  // Checksum, orbit-weighted sum, and a recount of ~1% of the fibers
  // (always including Infinity), chosen by a generator seeded from the entry.
  bool validate(const lseries::FiberModel& M, const lseries::TraceSum& ts, const std::string& hash) const {
    if (lseries::traces_checksum(ts.fiber_traces) != ts.checksum) return false;
    auto K = ff::build_tower(M.finite.field(), ts.n);
    auto orbits = lseries::frobenius_orbits(K);
    if (ts.fiber_traces.size() != orbits.size() + 1) return false;
    Integer A = ts.fiber_traces.back();
    for (std::size_t i = 0; i < orbits.size(); ++i) A += Integer(ts.fiber_traces[i]) * orbits[i].size;
    if (A != ts.A) return false;
    if (lseries::infinity_trace(M, K) != ts.fiber_traces.back()) return false;
    std::mt19937_64 rng(std::hash<std::string>{}(hash) ^ static_cast<std::uint64_t>(ts.n));
    const std::size_t samples = std::max<std::size_t>(1, orbits.size() / 100);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t i = rng() % orbits.size();
      if (lseries::orbit_trace(M, K, orbits[i].code) != ts.fiber_traces[i]) return false;
    }
    return true;
  }

 private:
  std::string dir_;
  bool validate_;
  int threads_;
  std::ostream& log_;
  CacheStats stats_;
};

}  // namespace ffbsd::io
