#pragma once

#include <cstdint>
#include <random>

namespace cg {

/// Seeded generator whose output is identical across standard libraries.
/// std::uniform_int_distribution is implementation-defined, so bounded
/// draws go through rejection sampling on the raw mt19937_64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  bool coin(unsigned percent_true = 50) {
    return uniform(0, 99) < static_cast<std::int64_t>(percent_true);
  }

  /// Derive an independent child stream (for per-check seeding).
  Rng fork() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cg
