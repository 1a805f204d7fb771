#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectral_maxcut/graph.hpp"

namespace smc {

// Reduction to a bounded-degree unweighted multigraph. Each vertex v is
// split into one copy per incident edge; an edge (u, v) of weight w spreads
// over all copy pairs. G' samples that copy graph without building it.

struct ReductionArtifact {
  WeightedGraph gprime;
  /// Copies of vertex v are gprime vertices [copy_offset[v], copy_offset[v + 1]).
  std::vector<std::size_t> copy_offset;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
};

/// ceil(16 N ln(N + 1) / delta^2) with N the number of copies.
std::size_t reduction_sample_count(std::size_t copies, double delta);

ReductionArtifact reduce(const WeightedGraph& g, double delta, std::uint64_t seed);

struct LiftResult {
  Cut cut;
  std::vector<double> membership;       // fraction of copies of v on side 1
  double start_expectation = 0.0;       // expected cut fraction before any decision
  double final_fraction = 0.0;
  std::vector<double> expectation_trace; // after each vertex decision
};

/// Rounds copy memberships vertex by vertex (decreasing weighted degree,
/// ties by index), never letting the conditional expectation drop. Vertices
/// whose copies all sit on one side keep that side.
LiftResult lift_cut(std::span<const std::size_t> copy_offset, const WeightedGraph& g,
                    std::span<const std::uint8_t> side_prime);
LiftResult lift_cut(const ReductionArtifact& artifact, const WeightedGraph& g,
                    std::span<const std::uint8_t> side_prime);

/// Expected cut fraction when v lands on side 1 independently with prob p_v.
double fractional_cut_value(const WeightedGraph& g, std::span<const double> p);

}  // namespace smc
