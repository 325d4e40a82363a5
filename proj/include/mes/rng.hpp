#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mes {

/// Deterministic random stream. All randomness in the project flows from a
/// single user seed; independent components draw from streams derived as
/// mt19937_64 seeded with seed_seq{seed, fnv1a64(tag)}. The Gaussian and
/// bounded-integer generators are hand-rolled so that streams are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::string_view tag);

  std::uint64_t next();

  /// Uniform on [0,1) with 53 random bits.
  double uniform01();

  /// Uniform on [0,n). n must be positive.
  std::uint64_t bounded(std::uint64_t n);

  /// Standard normal draw (Box-Muller, spare value cached).
  double gaussian();

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t fnv1a64(std::string_view s);

}  // namespace mes
