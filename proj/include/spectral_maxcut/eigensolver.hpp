#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectral_maxcut/graph.hpp"

namespace smc {

enum class EigenMethod { automatic, power_iteration, dense };

const char* to_string(EigenMethod method);

struct EigenOptions {
  EigenMethod method = EigenMethod::automatic;
  /// Power iteration runs ceil(iteration_constant * ln(n) / delta) steps.
  double iteration_constant = 8.0;
  /// Optional hard cap on power iteration steps; 0 means none.
  std::size_t max_iterations = 0;
  /// `automatic` solves densely when at most this many vertices have
  /// positive degree.
  std::size_t dense_limit = 256;
};

/// Approximate minimiser of x^T (D + A) x / x^T D x.
struct EmbeddingVector {
  std::vector<double> x;  // zero on isolated vertices
  double eps_x = 0.0;     // measured quotient of x
  double delta_used = 0.0;
  std::size_t iterations = 0;
  EigenMethod method = EigenMethod::dense;
};

/// x^T (D + A) x / x^T D x, accumulated edge by edge as
/// sum_e |w|(x_u^2 + x_v^2) + 2 w x_u x_v, which is w (x_u + x_v)^2 for
/// non-negative w. Throws GraphError when x^T D x = 0.
double rayleigh_quotient(const WeightedGraph& g, std::span<const double> x);

/// Finds x with quotient at most (1 + lambda_min) + delta, where lambda_min
/// is the smallest eigenvalue of D^{-1/2} A D^{-1/2}, by maximising the
/// Rayleigh quotient of I - D^{-1/2} A D^{-1/2} from a random start and
/// mapping the result back through D^{-1/2}.
EmbeddingVector smallest_eigvec(const WeightedGraph& g, double delta, std::uint64_t seed,
                                const EigenOptions& options = {});

/// Eigenvalues of D^{-1/2} A D^{-1/2} restricted to positive-degree
/// vertices, ascending. Dense; intended for n up to a few thousand.
std::vector<double> normalized_adjacency_spectrum(const WeightedGraph& g);

/// Smallest eigenvalue of D^{-1/2} A D^{-1/2} by dense decomposition.
double dense_lambda_min(const WeightedGraph& g);

}  // namespace smc
