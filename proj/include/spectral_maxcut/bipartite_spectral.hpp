#pragma once

#include <cstdint>
#include <span>

#include "spectral_maxcut/eigensolver.hpp"
#include "spectral_maxcut/graph.hpp"

namespace smc {

struct SweepResult {
  SignedVector y;
  PartitionStats stats;
  /// Number of vertices with |x_i| <= threshold, i.e. the zero block of y
  /// in ascending |x| order.
  std::size_t threshold_index = 0;
  double threshold = 0.0;
  double eps_x = 0.0;
  /// sqrt(8 eps_x); stats.ratio never exceeds it.
  double bound = 0.0;
};

/// Two-threshold sweep: for every candidate threshold tau in {|x_k|} u {0}
/// forms y_i = sign(x_i) if |x_i| > tau and 0 otherwise, and keeps the y
/// with the smallest sum_{i,j} A_ij |y_i + y_j| / sum_i d_i |y_i|. Ties go
/// to the smaller threshold. Requires non-negative weights.
SweepResult two_threshold_sweep(const WeightedGraph& g, std::span<const double> x);

struct SpectralPartition {
  EmbeddingVector embedding;
  SweepResult sweep;
};

/// Eigenvector step at accuracy delta^2 / 8 followed by the sweep, so that
/// ratio <= 4 sqrt(eps) + delta when the Max Cut optimum is 1 - eps.
SpectralPartition spectral_partition(const WeightedGraph& g, double delta, std::uint64_t seed,
                                     const EigenOptions& options = {});

/// Bipartiteness ratio by enumeration of {-1,0,1}^V (up to global sign),
/// with the spectral sandwich 1/2 (1 - |l_n|) <= beta <= sqrt(2 (1 - |l_n|)).
struct BetaReport {
  double beta = 0.0;
  SignedVector witness;
  double lambda_n = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr std::size_t kMaxExactVertices = 20;

BetaReport beta_exact(const WeightedGraph& g);

/// min over nonempty S with |S| <= n/2 and positive volume of
/// w(S, V - S) / sum_{i in S} d_i.
double edge_expansion_exact(const WeightedGraph& g);

}  // namespace smc
