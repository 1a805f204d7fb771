#include "spectral_maxcut/sparsifier.hpp"

#include <cmath>
#include <stdexcept>

#include "spectral_maxcut/random.hpp"

namespace smc {

std::size_t sparsify_sample_count(std::size_t num_vertices, const SparsifyParams& p) {
  if (!(p.delta > 0.0) || p.delta > 1.0) throw std::invalid_argument("delta must be in (0, 1]");
  if (!(p.oversample >= 1.0)) throw std::invalid_argument("oversample must be >= 1");
  return static_cast<std::size_t>(
      std::ceil(p.oversample * static_cast<double>(num_vertices) / (p.delta * p.delta)));
}

WeightedGraph sparsify(const WeightedGraph& g, const SparsifyParams& p) {
  if (g.num_edges() == 0) throw GraphError("cannot sparsify a graph without edges");
  if (g.has_negative_weights()) throw GraphError("sparsification needs non-negative weights");
  const std::size_t samples = sparsify_sample_count(g.num_vertices(), p);

  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (const Edge& e : g.edges()) weights.push_back(e.w);
  const AliasTable table(weights);

  Rng rng(p.seed);
  std::vector<Edge> out;
  out.reserve(samples);
  const auto edges = g.edges();
  for (std::size_t s = 0; s < samples; ++s) {
    const Edge& e = edges[table.draw(rng)];
    out.push_back({e.u, e.v, 1.0});
  }
  return WeightedGraph(g.num_vertices(), std::move(out), WeightMode::max_cut);
}

}  // namespace smc
