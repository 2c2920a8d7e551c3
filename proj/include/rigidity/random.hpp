#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace rigidity {

/// Fixed default seed; every random choice in the library is derived from a
/// caller-supplied seed through `derive_seed`.
inline constexpr std::uint64_t kDefaultSeed = 20250101;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for an independent stream `stream` of `parent`.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return splitmix64(splitmix64(parent) ^ (stream * 0xd1342543de82ef95ULL + 1));
}

/// Named streams so call sites do not collide.
enum class Stream : std::uint64_t {
  kRankSample = 1,
  kSpanningOrder,
  kRealisation,
  kGamma,
  kPatch,
  kPinChoice,
  kRealSample,
  kRetry,
  kCertificate,
};

inline std::uint64_t derive_seed(std::uint64_t parent, Stream s, std::uint64_t index = 0) {
  return derive_seed(derive_seed(parent, static_cast<std::uint64_t>(s)), index);
}

using Rng = std::mt19937_64;

// The standard distributions are implementation-defined; these are not, so
// reports stay byte-identical across standard libraries.

/// Uniform integer in [lo, hi] by rejection sampling.
inline long long uniform_int(Rng& rng, long long lo, long long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long long>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<long long>(x % span);
}

/// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random complex number of modulus one.
inline std::complex<double> random_unit_complex(Rng& rng) {
  return std::polar(1.0, 2.0 * 3.14159265358979323846 * uniform_unit(rng));
}

}  // namespace rigidity
