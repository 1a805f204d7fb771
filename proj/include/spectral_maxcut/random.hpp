#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace smc {

/// 64-bit mixer used to derive independent seed streams from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x5bd1e995ULL));
}

/// Seeded generator with platform-independent draws (the std distributions
/// are implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Walker/Vose alias table: O(k) build, O(1) draws proportional to weights.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights);
  std::size_t size() const { return prob_.size(); }
  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace smc
