#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectral_maxcut/bipartite_spectral.hpp"
#include "spectral_maxcut/eigensolver.hpp"
#include "spectral_maxcut/graph.hpp"

namespace smc {

/// `paper` continues while C + X/2 > M/2. `relaxed` stops as soon as
/// U + X > M/2.
enum class StopRule { paper, relaxed };
enum class StopReason { weak_spectral_cut, empty_graph };

const char* to_string(StopRule rule);
const char* to_string(StopReason reason);
StopRule parse_stop_rule(const std::string& text);

/// One spectral round on the residual graph G_t.
struct IterationRecord {
  double rho = 1.0;            // weight of G_t / weight of G
  PartitionStats stats;        // of the sweep vector on G_t
  double eps_x = 0.0;          // quotient of the eigenvector step
  double residual_eps = 0.0;   // dual value on G_t: Max Cut(G_t) <= 1 - residual_eps
  double eps_t = 0.0;          // rho * residual_eps: Max Cut(G) <= 1 - eps_t
  bool accepted = false;
  std::size_t support_size = 0;
  std::size_t residual_vertices = 0;  // |V(G_t)|
  std::size_t eigen_iterations = 0;
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  StopReason stop_reason = StopReason::empty_graph;
  std::size_t depth = 0;  // accepted rounds
  double final_residual_weight = 0.0;
  bool certified = false;
};

struct SolveOptions {
  double delta = 0.05;
  std::uint64_t seed = 42;
  StopRule stop_rule = StopRule::paper;
  EigenOptions eigen;
  /// Compute the per-round dual values (one extra eigenvalue per round).
  bool certify = true;
  double certificate_tol = 1e-7;
};

struct SolveResult {
  Cut cut;
  SolveTrace trace;
};

/// Repeatedly partitions the residual graph spectrally, peels off (L, R)
/// while the continuation test holds, finishes the last residual greedily,
/// and reassembles by picking the better orientation at every level.
SolveResult recursive_spectral_cut(const WeightedGraph& g, const SolveOptions& options = {});

struct InducedSubgraph {
  WeightedGraph graph;
  std::vector<Vertex> to_parent;
};

/// Subgraph induced by the zero coordinates of y.
InducedSubgraph residual_graph(const WeightedGraph& g, const SignedVector& y);

/// Extends a cut of the residual graph by (L, R) in both orientations and
/// returns the better one on `parent`; the first orientation wins ties.
Cut assemble_cut(const WeightedGraph& parent, const InducedSubgraph& residual,
                 std::span<const std::uint8_t> sub_side, const SignedVector& y);

}  // namespace smc
