#include "spectral_maxcut/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral_maxcut/random.hpp"

namespace smc {

const char* to_string(EigenMethod method) {
  switch (method) {
    case EigenMethod::automatic: return "automatic";
    case EigenMethod::power_iteration: return "power_iteration";
    case EigenMethod::dense: return "dense";
  }
  return "unknown";
}

double rayleigh_quotient(const WeightedGraph& g, std::span<const double> x) {
  if (x.size() != g.num_vertices()) throw std::invalid_argument("vector size mismatch");
  CompensatedSum num, den;
  for (const Edge& e : g.edges()) {
    const double a = x[e.u], b = x[e.v];
    if (e.w >= 0.0) {
      num.add(e.w * (a + b) * (a + b));
    } else {
      num.add(-e.w * (a - b) * (a - b));
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) den.add(g.degree(static_cast<Vertex>(i)) * x[i] * x[i]);
  if (!(den.value() > 0.0)) throw GraphError("zero denominator");
  return num.value() / den.value();
}

namespace {

struct ActiveSet {
  std::vector<Vertex> vertices;         // positive-degree vertices
  std::vector<std::ptrdiff_t> index;    // vertex -> position or -1
  std::vector<double> inv_sqrt_degree;  // per active position
};

ActiveSet active_vertices(const WeightedGraph& g) {
  ActiveSet a;
  a.index.assign(g.num_vertices(), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > 0.0) {
      a.index[v] = static_cast<std::ptrdiff_t>(a.vertices.size());
      a.vertices.push_back(v);
      a.inv_sqrt_degree.push_back(1.0 / std::sqrt(g.degree(v)));
    }
  }
  return a;
}

Eigen::MatrixXd dense_normalized(const WeightedGraph& g, const ActiveSet& a) {
  const auto k = static_cast<Eigen::Index>(a.vertices.size());
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(k, k);
  for (const Edge& e : g.edges()) {
    const auto i = a.index[e.u], j = a.index[e.v];
    if (i < 0 || j < 0) continue;
    const double s = e.w * a.inv_sqrt_degree[i] * a.inv_sqrt_degree[j];
    n(i, j) += s;
    n(j, i) += s;
  }
  return n;
}

std::vector<double> to_vertex_space(const WeightedGraph& g, const ActiveSet& a,
                                    const std::vector<double>& z) {
  std::vector<double> x(g.num_vertices(), 0.0);
  for (std::size_t p = 0; p < a.vertices.size(); ++p) {
    x[a.vertices[p]] = z[p] * a.inv_sqrt_degree[p];
  }
  return x;
}

// Fixes the global sign so the first clearly nonzero entry is positive.
void canonical_sign(std::vector<double>& z) {
  double scale = 0.0;
  for (double v : z) scale = std::max(scale, std::abs(v));
  for (double& v : z) {
    if (std::abs(v) > 1e-9 * scale) {
      if (v < 0.0) for (double& u : z) u = -u;
      return;
    }
  }
}

std::vector<double> dense_smallest(const WeightedGraph& g, const ActiveSet& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_normalized(g, a));
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const Eigen::VectorXd col = solver.eigenvectors().col(0);
  std::vector<double> z(col.data(), col.data() + col.size());
  canonical_sign(z);
  return z;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct PowerResult {
  std::vector<double> z;
  std::size_t iterations;
};

// Power iteration on P = I - D^{-1/2} A D^{-1/2}, which is PSD with
// spectrum in [0, 2]; its top eigenvector is the bottom one of the
// normalized adjacency matrix.
PowerResult power_smallest(const WeightedGraph& g, const ActiveSet& a, double delta,
                           std::uint64_t seed, const EigenOptions& options) {
  const std::size_t k = a.vertices.size();
  const double log_n = std::log(std::max<double>(2.0, static_cast<double>(k)));
  auto steps = static_cast<std::size_t>(std::ceil(options.iteration_constant * log_n / delta));
  if (options.max_iterations > 0) steps = std::min(steps, options.max_iterations);
  steps = std::max<std::size_t>(steps, 1);

  Rng rng(seed);
  std::vector<double> z(k), w(k);
  for (double& v : z) v = 2.0 * rng.uniform() - 1.0;
  double norm = std::sqrt(dot(z, z));
  for (double& v : z) v /= norm;

  std::vector<double> best = z;
  double best_quotient = -1.0;
  std::size_t done = 0;
  for (; done < steps; ++done) {
    for (std::size_t p = 0; p < k; ++p) {
      const Vertex v = a.vertices[p];
      double acc = 0.0;
      for (const Neighbor& nb : g.neighbors(v)) {
        const auto q = a.index[nb.vertex];
        if (q < 0) continue;  // zero-weight edge to an isolated vertex
        acc +=nb.w * a.inv_sqrt_degree[q] * z[q];
      }
      w[p] = z[p] - a.inv_sqrt_degree[p] * acc;
    }
    const double theta = dot(z, w);
    if (theta > best_quotient) {
      best_quotient = theta;
      best = z;
    }
    double residual = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double r = w[p] - theta * z[p];
      residual += r * r;
    }
    norm = std::sqrt(dot(w, w));
    if (norm == 0.0) break;
    if (std::sqrt(residual) <= 1e-10 * std::max(theta, 1e-300)) {
      ++done;
      break;
    }
    for (std::size_t p = 0; p < k; ++p) z[p] = w[p] / norm;
  }
  return {std::move(best), done};
}

}  // namespace

EmbeddingVector smallest_eigvec(const WeightedGraph& g, double delta, std::uint64_t seed,
                                const EigenOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
  const ActiveSet a = active_vertices(g);
  if (a.vertices.empty()) throw GraphError("graph has no edges");

  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = a.vertices.size() <= options.dense_limit ? EigenMethod::dense
                                                      : EigenMethod::power_iteration;
  }
  EmbeddingVector out;
  out.delta_used = delta;
  out.method = method;
  if (method == EigenMethod::dense) {
    out.x = to_vertex_space(g, a, dense_smallest(g, a));
    out.iterations = 0;
  } else {
    PowerResult r = power_smallest(g, a, delta, seed, options);
    out.x = to_vertex_space(g, a, r.z);
    out.iterations = r.iterations;
  }
  out.eps_x = rayleigh_quotient(g, out.x);
  return out;
}

std::vector<double> normalized_adjacency_spectrum(const WeightedGraph& g) {
  const ActiveSet a = active_vertices(g);
  if (a.vertices.empty()) throw GraphError("graph has no edges");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_normalized(g, a),
                                                              Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

double dense_lambda_min(const WeightedGraph& g) {
  return normalized_adjacency_spectrum(g).front();
}

}  // namespace smc
