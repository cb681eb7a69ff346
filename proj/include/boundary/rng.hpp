#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace boundary {

/// Seeded randomness with platform-independent derived quantities.
///
/// std::mt19937_64 output is fixed by the standard; the standard
/// distributions are not, so bounded integers and reals are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);

  /// Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed for sub-task `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace boundary
