#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dctbch {

/// SplitMix64 finaliser; used to derive independent seeds from (key, index) pairs.
std::uint64_t splitmix64(std::uint64_t x);

/// Platform-independent random source. std::mt19937_64 output is fixed by the
/// standard; the distributions here are hand-rolled because the standard ones are not.
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Fisher-Yates permutation of [0, n) driven by KeyedRng(seed).
std::vector<std::size_t> keyed_permutation(std::size_t n, std::uint64_t seed);

}  // namespace dctbch
