#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "spectral_maxcut/graph.hpp"
#include "spectral_maxcut/random.hpp"

namespace oracle {

using smc::WeightedGraph;

struct MaxCut {
  double weight = 0.0;
  double fraction = 0.0;
  std::vector<std::uint8_t> side;
};

/// Exhaustive Max Cut by Gray code over 2^(n-1) cuts (n <= 26).
MaxCut max_cut(const WeightedGraph& g);

/// Largest |cut fraction of a - cut fraction of b| over all cuts of the
/// common vertex set.
double max_cut_fraction_gap(const WeightedGraph& a, const WeightedGraph& b);

/// min over nonzero y in {-1,0,1}^n of sum_e w |y_u + y_v| / sum_i d_i |y_i|.
double beta(const WeightedGraph& g);
/// max over nonzero y of -2 sum_e w y_u y_v / sum_i d_i |y_i|.
double gamma(const WeightedGraph& g);
/// min over nonempty S, |S| <= n/2, vol(S) > 0 of w(S, V-S) / vol(S).
double edge_expansion(const WeightedGraph& g);

/// Spectrum of D^{-1/2} A D^{-1/2} on positive-degree vertices, ascending.
std::vector<double> normalized_spectrum(const WeightedGraph& g);
double lambda_min(const WeightedGraph& g);

/// Adaptive Simpson quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

/// Moments of the threshold rounding (t^2 uniform on [0, 1], vertex active
/// when t e^-ell <= |x| <= t, then Y = sign(x) with probability |x| / t) for
/// two entries with |x| <= 1.
struct PairMoments {
  double abs_i = 0.0;    // E |Y_i|
  double prod_ij = 0.0;  // E Y_i Y_j
};
/// By quadrature of the conditional moments over t.
PairMoments integrated_moments(double xi, double xj, double ell);
/// Exactly, over t and every point (a, b) of Z_p^2 with
/// u_k = ((a h_k + b) mod p) / p, h_i = 1, h_j = 2, and Y_k nonzero iff u_k < |x_k| / t.
PairMoments enumerated_moments(double xi, double xj, double ell, std::uint64_t p);

// Graph families.

/// Edge lists (0-based pairs) of all non-isomorphic connected graphs on
/// exactly n vertices, n <= 10.
std::vector<std::vector<std::pair<int, int>>> connected_graphs(int n);
/// Canonical code of a graph on n <= 11 vertices (equal iff isomorphic).
std::uint64_t canonical_code(int n, const std::vector<std::pair<int, int>>& edges);

WeightedGraph from_pairs(int n, const std::vector<std::pair<int, int>>& edges);
/// Every connected graph on 1..max_n vertices.
std::vector<WeightedGraph> connected_corpus(int max_n);

WeightedGraph cycle(int n);
WeightedGraph complete(int n);
WeightedGraph petersen();

/// G(n, p) with weights uniform in [lo, hi]; retries until there is an edge.
WeightedGraph random_graph(int n, double p, smc::Rng& rng, double lo = 1.0, double hi = 1.0);
/// G(n, p) with weights uniform in [-1, 1] \ small values.
WeightedGraph random_signed_graph(int n, double p, smc::Rng& rng);

struct Planted {
  WeightedGraph graph;
  double eps_bound = 0.0;  // noise edges / all edges, at least 1 - Max Cut
};
/// Random bipartite graph on parts of size `half` with `crossing` edges plus
/// `noise` edges inside the parts.
Planted planted_bipartite(int half, int crossing, int noise, smc::Rng& rng);

}  // namespace oracle
