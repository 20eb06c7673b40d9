#pragma once
// Shared scalar types, error codes, deterministic RNG, small helpers.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sdpp {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class Err {
  SchemaViolation,
  RotationInconsistent,
  NonPlanar,
  Disconnected,
  TerminalNotOnFace,
  EvenTerminalCount,
  BadPairing,
  WeightOutOfRange,
  ContextMismatch,
  DegreeCapExceeded,
  SizeGuard,
  ModulusTooWide,
  NoAxis,
  ProbabilisticFailure,
  InternalInvariant,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::SchemaViolation: return "SchemaViolation";
    case Err::RotationInconsistent: return "RotationInconsistent";
    case Err::NonPlanar: return "NonPlanar";
    case Err::Disconnected: return "Disconnected";
    case Err::TerminalNotOnFace: return "TerminalNotOnFace";
    case Err::EvenTerminalCount: return "EvenTerminalCount";
    case Err::BadPairing: return "BadPairing";
    case Err::WeightOutOfRange: return "WeightOutOfRange";
    case Err::ContextMismatch: return "ContextMismatch";
    case Err::DegreeCapExceeded: return "DegreeCapExceeded";
    case Err::SizeGuard: return "SizeGuard";
    case Err::ModulusTooWide: return "ModulusTooWide";
    case Err::NoAxis: return "NoAxis";
    case Err::ProbabilisticFailure: return "ProbabilisticFailure";
    case Err::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what)
      : std::runtime_error(std::string(err_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& what) { throw Error(c, what); }

inline void require(bool ok, Err c, const std::string& what) {
  if (!ok) fail(c, what);
}

// Residues live in uint64 and wrap mod 2^64; reduction mod 2^c is a mask.
inline u64 mod_mask(unsigned c) { return c >= 64 ? ~0ull : ((1ull << c) - 1ull); }

inline int mod_pos(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

// splitmix64: stable stream derivation for seeds.
inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic generator independent of libstdc++ distribution internals.
struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next() {
    state += 0x9e3779b97f4a7c15ull;
    return splitmix64(state);
  }
  // uniform in [0, n)
  u64 below(u64 n) {
    // rejection sampling keeps the draw unbiased
    u64 lim = ~0ull - ~0ull % n;
    u64 v;
    do { v = next(); } while (v >= lim);
    return v % n;
  }
};

// Deterministic fork-join map: out[i] = fn(i). Worker count never changes results.
template <class Fn>
void parallel_for(unsigned jobs, std::size_t n, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned w = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += w) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline unsigned default_jobs() {
  if (const char* env = std::getenv("SDPP_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// next subset of same popcount (Gosper); 0 when exhausted
inline u64 next_combination(u64 v) {
  u64 c = v & int64_t(-int64_t(v));
  u64 r = v + c;
  if (r == 0) return 0;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace sdpp
