#include "spectral_maxcut/maxcut_solver.hpp"

#include <stdexcept>

#include "spectral_maxcut/certificates.hpp"
#include "spectral_maxcut/random.hpp"

namespace smc {

const char* to_string(StopRule rule) {
  return rule == StopRule::paper ? "paper" : "relaxed";
}

const char* to_string(StopReason reason) {
  return reason == StopReason::weak_spectral_cut ? "weak_spectral_cut" : "empty_graph";
}

StopRule parse_stop_rule(const std::string& text) {
  if (text == "paper") return StopRule::paper;
  if (text == "relaxed") return StopRule::relaxed;
  throw std::invalid_argument("unknown stop rule '" + text + "'");
}

InducedSubgraph residual_graph(const WeightedGraph& g, const SignedVector& y) {
  if (y.size() != g.num_vertices()) throw std::invalid_argument("signed vector size mismatch");
  InducedSubgraph out;
  std::vector<std::ptrdiff_t> local(g.num_vertices(), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (y[v] == 0) {
      local[v] = static_cast<std::ptrdiff_t>(out.to_parent.size());
      out.to_parent.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) {
      edges.push_back({static_cast<Vertex>(local[e.u]), static_cast<Vertex>(local[e.v]), e.w});
    }
  }
  out.graph = WeightedGraph(out.to_parent.size(), std::move(edges), g.mode());
  return out;
}

Cut assemble_cut(const WeightedGraph& parent, const InducedSubgraph& residual,
                 std::span<const std::uint8_t> sub_side, const SignedVector& y) {
  if (sub_side.size() != residual.to_parent.size()) {
    throw std::invalid_argument("residual cut size mismatch");
  }
  std::vector<std::uint8_t> first(parent.num_vertices(), 0);
  for (std::size_t k = 0; k < sub_side.size(); ++k) first[residual.to_parent[k]] = sub_side[k];
  std::vector<std::uint8_t> second = first;
  for (Vertex v = 0; v < parent.num_vertices(); ++v) {
    if (y[v] < 0) {        // L joins V1 (side 0), or V2 when flipped
      first[v] = 0;
      second[v] = 1;
    } else if (y[v] > 0) {
      first[v] = 1;
      second[v] = 0;
    }
  }
  Cut a = make_cut(parent, std::move(first));
  Cut b = make_cut(parent, std::move(second));
  return b.cut_weight > a.cut_weight ? b : a;
}

namespace {

bool continue_recursion(const PartitionStats& s, StopRule rule) {
  if (rule == StopRule::paper) return s.cut + 0.5 * s.cross > 0.5 * s.incident;
  return !(s.uncut + s.cross > 0.5 * s.incident);
}

struct Level {
  WeightedGraph graph;
  SignedVector y;
  InducedSubgraph residual;
};

}  // namespace

SolveResult recursive_spectral_cut(const WeightedGraph& g, const SolveOptions& options) {
  if (!(options.delta > 0.0 && options.delta < 0.5)) {
    throw std::invalid_argument("delta must be in (0, 1/2)");
  }
  if (g.has_negative_weights()) throw GraphError("max cut needs non-negative weights");

  SolveResult result;
  SolveTrace& trace = result.trace;
  trace.certified = options.certify;
  const double total = g.total_weight();

  std::vector<Level> levels;
  WeightedGraph current = g;
  std::vector<std::uint8_t> side;
  for (std::uint64_t round = 0;; ++round) {
    if (current.total_weight() <= 0.0) {
      trace.stop_reason = StopReason::empty_graph;
      side.assign(current.num_vertices(), 0);
      break;
    }
    IterationRecord rec;
    rec.rho = current.total_weight() / total;
    rec.residual_vertices = current.num_vertices();
    const SpectralPartition sp =
        spectral_partition(current, options.delta, derive_seed(options.seed, round), options.eigen);
    rec.stats = sp.sweep.stats;
    rec.eps_x = sp.embedding.eps_x;
    rec.eigen_iterations = sp.embedding.iterations;
    rec.support_size = sp.sweep.y.support_size();
    if (options.certify) {
      rec.residual_eps = best_certificate(current, options.certificate_tol).eps;
      rec.eps_t = rec.rho * rec.residual_eps;
    }
    rec.accepted = continue_recursion(rec.stats, options.stop_rule);
    trace.iterations.push_back(rec);

    if (!rec.accepted) {
      trace.stop_reason = StopReason::weak_spectral_cut;
      side = greedy_cut(current).side;
      break;
    }
    InducedSubgraph next = residual_graph(current, sp.sweep.y);
    WeightedGraph next_graph = next.graph;
    levels.push_back({std::move(current), sp.sweep.y, std::move(next)});
    current = std::move(next_graph);
    ++trace.depth;
  }
  trace.final_residual_weight = current.total_weight();

  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    side = assemble_cut(it->graph, it->residual, side, it->y).side;
  }
  result.cut = make_cut(g, std::move(side));
  return result;
}

}  // namespace smc
