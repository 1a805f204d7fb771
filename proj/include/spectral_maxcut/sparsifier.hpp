#pragma once

#include <cstdint>

#include "spectral_maxcut/graph.hpp"

namespace smc {

struct SparsifyParams {
  double delta = 0.05;      // additive cut accuracy
  double oversample = 16.0; // sample count = ceil(oversample * n / delta^2)
  std::uint64_t seed = 42;
};

std::size_t sparsify_sample_count(std::size_t num_vertices, const SparsifyParams& p);

/// Draws edges i.i.d. with replacement, proportionally to weight, into an
/// unweighted multigraph on the same vertex set. Every cut fraction of the
/// result matches the input to within delta with high probability.
WeightedGraph sparsify(const WeightedGraph& g, const SparsifyParams& p);

}  // namespace smc
