#pragma once

#include <cstdint>
#include <random>

namespace stmod {

// mt19937_64 is fully specified by the standard, and uniform() avoids the
// implementation-defined distributions, so streams are identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t uniform(std::uint64_t n) { return engine_() % n; }

  /// Independent child stream, e.g. for a sub-computation that must not
  /// perturb the caller's sequence.
  Rng fork() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stmod
