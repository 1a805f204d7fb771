#include "spectral_maxcut/degree_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spectral_maxcut/random.hpp"

namespace smc {

std::size_t reduction_sample_count(std::size_t copies, double delta) {
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("delta must be in (0, 1]");
  const double n = static_cast<double>(copies);
  return static_cast<std::size_t>(std::ceil(16.0 * n * std::log(n + 1.0) / (delta * delta)));
}

ReductionArtifact reduce(const WeightedGraph& g, double delta, std::uint64_t seed) {
  if (g.num_edges() == 0) throw GraphError("cannot reduce a graph without edges");
  if (g.has_negative_weights()) throw GraphError("reduction needs non-negative weights");

  ReductionArtifact art;
  art.seed = seed;
  art.delta = delta;
  art.copy_offset.assign(g.num_vertices() + 1, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    art.copy_offset[v + 1] = art.copy_offset[v] + g.incidence_count(v);
  }
  const std::size_t copies = art.copy_offset.back();
  art.sample_count = reduction_sample_count(copies, delta);

  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (const Edge& e : g.edges()) weights.push_back(e.w);
  const AliasTable table(weights);

  Rng rng(seed);
  const auto edges = g.edges();
  std::vector<Edge> out;
  out.reserve(art.sample_count);
  for (std::size_t s = 0; s < art.sample_count; ++s) {
    const Edge& e = edges[table.draw(rng)];
    const std::size_t a = art.copy_offset[e.u] + rng.below(g.incidence_count(e.u));
    const std::size_t b = art.copy_offset[e.v] + rng.below(g.incidence_count(e.v));
    out.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), 1.0});
  }
  art.gprime = WeightedGraph(copies, std::move(out), WeightMode::max_cut);
  return art;
}

double fractional_cut_value(const WeightedGraph& g, std::span<const double> p) {
  if (p.size() != g.num_vertices()) throw std::invalid_argument("probability vector size mismatch");
  if (g.total_weight() <= 0.0) return 0.0;
  CompensatedSum s;
  for (const Edge& e : g.edges()) s.add(e.w * (p[e.u] * (1.0 - p[e.v]) + p[e.v] * (1.0 - p[e.u])));
  return s.value() / g.total_weight();
}

LiftResult lift_cut(std::span<const std::size_t> copy_offset, const WeightedGraph& g,
                    std::span<const std::uint8_t> side_prime) {
  const std::size_t n = g.num_vertices();
  if (copy_offset.size() != n + 1) throw std::invalid_argument("copy map size mismatch");
  if (side_prime.size() != copy_offset.back()) throw std::invalid_argument("cut size mismatch");

  LiftResult out;
  out.membership.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t lo = copy_offset[v], hi = copy_offset[v + 1];
    if (hi == lo) continue;
    std::size_t ones = 0;
    for (std::size_t c = lo; c < hi; ++c) ones += side_prime[c] != 0;
    out.membership[v] = static_cast<double>(ones) / static_cast<double>(hi - lo);
  }
  out.start_expectation = fractional_cut_value(g, out.membership);

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

  std::vector<double> p = out.membership;
  const double total = g.total_weight();
  double expectation = out.start_expectation * total;
  out.expectation_trace.reserve(n);
  for (Vertex v : order) {
    double if_one = 0.0, if_zero = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      if_one += nb.w * (1.0 - p[nb.vertex]);
      if_zero += nb.w * p[nb.vertex];
    }
    const double current = p[v] * if_one + (1.0 - p[v]) * if_zero;
    // Only randomised vertices are decided; integral ones keep their side.
    const double choice = (p[v] == 0.0 || p[v] == 1.0) ? p[v] : (if_one > if_zero ? 1.0 : 0.0);
    expectation += (choice > 0.0 ? if_one : if_zero) - current;
    p[v] = choice;
    out.expectation_trace.push_back(total > 0.0 ? expectation / total : 0.0);
  }

  std::vector<std::uint8_t> side(n);
  for (Vertex v = 0; v < n; ++v) side[v] = p[v] > 0.5 ? 1 : 0;
  out.cut = make_cut(g, std::move(side));
  out.final_fraction = out.cut.cut_fraction;
  return out;
}

LiftResult lift_cut(const ReductionArtifact& artifact, const WeightedGraph& g,
                    std::span<const std::uint8_t> side_prime) {
  return lift_cut(artifact.copy_offset, g, side_prime);
}

}  // namespace smc
