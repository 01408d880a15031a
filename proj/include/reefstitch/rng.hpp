#pragma once

#include <cstdint>
#include <random>

namespace reefstitch {

// Deterministic seeded randomness. The engine is std::mt19937_64, whose
// output sequence is fixed by the standard; the value mappings below are
// implemented here instead of via std distributions, which are not
// bit-stable across standard libraries. Every run of the toolkit with the
// same seed therefore produces identical draws.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t nextU64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double nextUnit() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
  }

  double nextIn(double lo, double hi) { return lo + (hi - lo) * nextUnit(); }

  // Uniform in [0, n) via 128-bit multiply-shift.
  std::uint64_t nextBelow(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(nextU64()) * n) >> 64);
  }

  // Unit normal via Box-Muller.
  double nextGaussian();

  // splitmix64 finalizer; derives independent per-item seeds, so parallel
  // per-frame work stays a pure function of (seed, item index).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace reefstitch
