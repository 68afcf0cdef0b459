#pragma once

#include <cstdint>

namespace lsa {

// All randomness in this project flows through splitmix64. The generator is
// fully specified by these few lines, so two builds on different machines
// produce bit-identical streams for the same seed; that determinism is the
// reproducibility contract for every seeded artifact (alphabets, problems,
// retry jitter).

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic sub-stream derivation: seed for the index-th child of base.
/// Distinct indices give distinct seeds (the gamma is odd, so the affine map
/// is a bijection mod 2^64, and mix64 is itself a bijection).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base + kGoldenGamma * (index + 1));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Draw in [0, n). Plain modulo: for the tiny bounds used here (n <= 26)
  /// the bias is below 2^-58, and the fixed formula is part of the
  /// documented seed-to-permutation mapping.
  constexpr std::uint64_t bounded(std::uint64_t n) noexcept { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace lsa
