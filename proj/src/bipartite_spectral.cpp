#include "spectral_maxcut/bipartite_spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace smc {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// a_num / a_den < b_num / b_den for positive denominators.
bool ratio_less(double a_num, double a_den, double b_num, double b_den) {
  return a_num * b_den < b_num * a_den;
}

void require_exact_size(const WeightedGraph& g) {
  if (g.num_vertices() > kMaxExactVertices) {
    throw std::invalid_argument("exact enumeration supports at most " +
                                std::to_string(kMaxExactVertices) +
                                " vertices; use the sweep-based upper bound instead");
  }
  if (g.num_edges() == 0 || g.total_weight() <= 0.0) throw GraphError("graph has no edges");
}

}  // namespace

SweepResult two_threshold_sweep(const WeightedGraph& g, std::span<const double> x) {
  const std::size_t n = g.num_vertices();
  if (x.size() != n) throw std::invalid_argument("vector size mismatch");
  if (g.has_negative_weights()) throw GraphError("sweep needs non-negative weights");

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return std::abs(x[a]) < std::abs(x[b]); });

  // Walk thresholds from the largest |x| down. Before the group of vertices
  // with |x| = tau is added, the support is exactly {i : |x_i| > tau}.
  std::vector<std::int8_t> y(n, 0);
  double num = 0.0;  // sum over edges of w |y_u + y_v|
  double den = 0.0;  // sum of d_i |y_i|
  bool found = false;
  double best_num = 0.0, best_den = 1.0;
  std::size_t best_zeros = 0;

  // The last candidate, tau = 0, keeps every nonzero entry; without it a
  // vector with no zero entries would never be tried at full support.
  auto consider = [&](std::size_t zeros) {
    if (den > 0.0 && (!found || !ratio_less(best_num, best_den, num, den))) {
      found = true;
      best_num = num;
      best_den = den;
      best_zeros = zeros;
    }
  };
  std::size_t hi = n;
  while (hi > 0) {
    std::size_t lo = hi - 1;
    const double tau = std::abs(x[order[lo]]);
    while (lo > 0 && std::abs(x[order[lo - 1]]) == tau) --lo;
    consider(hi);
    for (std::size_t k = lo; k < hi; ++k) {
      const Vertex v = order[k];
      const int s = sign_of(x[v]);
      if (s == 0) continue;
      for (const Neighbor& nb : g.neighbors(v)) {
        const int t = y[nb.vertex];
        num += nb.w * (std::abs(s + t) - std::abs(t));
      }
      y[v] = static_cast<std::int8_t>(s);
      den += g.degree(v);
    }
    hi = lo;
  }
  consider(0);
  if (!found) throw GraphError("every threshold yields the zero vector");

  SweepResult out;
  out.threshold_index = best_zeros;
  out.threshold = best_zeros == 0 ? 0.0 : std::abs(x[order[best_zeros - 1]]);
  std::vector<std::int8_t> best(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x[i]) > out.threshold) best[i] = static_cast<std::int8_t>(sign_of(x[i]));
  }
  out.y = SignedVector(std::move(best));
  out.stats = partition_stats(g, out.y);
  out.eps_x = rayleigh_quotient(g, x);
  out.bound = std::sqrt(8.0 * std::max(0.0, out.eps_x));
  return out;
}

SpectralPartition spectral_partition(const WeightedGraph& g, double delta, std::uint64_t seed,
                                     const EigenOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
  SpectralPartition out;
  out.embedding = smallest_eigvec(g, delta * delta / 8.0, seed, options);
  out.sweep = two_threshold_sweep(g, out.embedding.x);
  return out;
}

BetaReport beta_exact(const WeightedGraph& g) {
  require_exact_size(g);
  if (g.has_negative_weights()) throw GraphError("bipartiteness ratio needs non-negative weights");
  const std::size_t n = g.num_vertices();

  // Depth-first over coordinates n-1 .. 0. Until the first nonzero entry is
  // chosen only {0, +1} are tried, which removes the y -> -y duplicates.
  std::vector<int> y(n, 0);
  double num = 0.0, den = 0.0;
  double best_num = 0.0, best_den = 0.0;
  bool found = false;
  std::vector<int> best_y;

  auto assign = [&](Vertex v, int s) {
    for (const Neighbor& nb : g.neighbors(v)) {
      const int t = y[nb.vertex];
      num += nb.w * (std::abs(s + t) - std::abs(t));
    }
    y[v] = s;
    den += g.degree(v) * std::abs(s);
  };
  auto unassign = [&](Vertex v) {
    const int s = y[v];
    y[v] = 0;
    for (const Neighbor& nb : g.neighbors(v)) {
      const int t = y[nb.vertex];
      num -= nb.w * (std::abs(s + t) - std::abs(t));
    }
    den -= g.degree(v) * std::abs(s);
  };

  auto recurse = [&](auto&& self, std::ptrdiff_t pos, bool fixed) -> void {
    if (pos < 0) {
      if (den > 0.0 && (!found || ratio_less(num, den, best_num, best_den))) {
        found = true;
        best_num = num;
        best_den = den;
        best_y = y;
      }
      return;
    }
    const auto v = static_cast<Vertex>(pos);
    self(self, pos - 1, fixed);
    assign(v, 1);
    self(self, pos - 1, true);
    unassign(v);
    if (fixed) {
      assign(v, -1);
      self(self, pos - 1, true);
      unassign(v);
    }
  };
  recurse(recurse, static_cast<std::ptrdiff_t>(n) - 1, false);

  BetaReport r;
  // The ordered-pair numerator is 2 num; beta divides it by 2 den.
  r.beta = best_num / best_den;
  r.witness = SignedVector(std::vector<std::int8_t>(best_y.begin(), best_y.end()));
  r.lambda_n = dense_lambda_min(g);
  const double gap = 1.0 - std::min(1.0, std::abs(r.lambda_n));
  r.lower = 0.5 * gap;
  r.upper = std::sqrt(2.0 * gap);
  return r;
}

double edge_expansion_exact(const WeightedGraph& g) {
  require_exact_size(g);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> in(n, 0);
  double boundary = 0.0, volume = 0.0;
  std::size_t size = 0;
  bool found = false;
  double best_num = 0.0, best_den = 1.0;
  // Reflected Gray code: step k toggles the lowest set bit of k.
  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const auto v = static_cast<Vertex>(std::countr_zero(k));
    const bool entering = !in[v];
    for (const Neighbor& nb : g.neighbors(v)) {
      const double w = std::abs(nb.w);
      // Edge to a member leaves the boundary on entry, joins it on exit.
      boundary += (in[nb.vertex] != 0) == entering ? -w : w;
    }
    in[v] = entering;
    volume += entering ? g.degree(v) : -g.degree(v);
    size += entering ? 1 : std::size_t(-1);
    if (2 * size <= n && volume > 1e-9 * g.total_weight() &&
        (!found || ratio_less(boundary, volume, best_num, best_den))) {
      found = true;
      best_num = boundary;
      best_den = volume;
    }
  }
  if (!found) throw GraphError("no subset with positive volume");
  return best_num / best_den;
}

}  // namespace smc
