#include "spectral_maxcut/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smc {

namespace {

std::size_t active_count(const WeightedGraph& g) {
  std::size_t k = 0;
  for (double d : g.degrees()) k += d > 0.0;
  return k;
}

DualCertificate make_certificate(const WeightedGraph& g, double eps, double lambda_min,
                                 EigenMethod method, double tol) {
  DualCertificate c;
  c.eps = eps;
  c.lambda_min = lambda_min;
  c.method = method;
  c.psd_margin = (1.0 - 2.0 * eps) + lambda_min;
  c.feasible = c.psd_margin >= -tol;
  c.upper_bound = 1.0 - eps;
  // sum_i d_i = 2 |E|, so |E| - 1/4 sum_i 2 eps d_i = |E| (1 - eps).
  c.dual_objective = g.total_weight() * (1.0 - eps);
  return c;
}

}  // namespace

double estimate_lambda_min(const WeightedGraph& g, EigenMethod* method_used) {
  if (active_count(g) <= kDenseCertificateLimit) {
    if (method_used) *method_used = EigenMethod::dense;
    return dense_lambda_min(g);
  }
  if (method_used) *method_used = EigenMethod::power_iteration;
  EigenOptions options;
  options.method = EigenMethod::power_iteration;
  const EmbeddingVector v = smallest_eigvec(g, 1e-3, 0x6365727469667921ULL, options);
  return v.eps_x - 1.0;
}

DualCertificate certify_upper_bound(const WeightedGraph& g, double eps, double tol) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw std::invalid_argument("eps must be in [0, 1/2]");
  EigenMethod method;
  const double lambda_min = estimate_lambda_min(g, &method);
  return make_certificate(g, eps, lambda_min, method, tol);
}

DualCertificate best_certificate(const WeightedGraph& g, double tol) {
  EigenMethod method;
  const double lambda_min = estimate_lambda_min(g, &method);
  const double negative_part = std::min(lambda_min, 0.0);
  const double eps = std::clamp((1.0 - std::abs(negative_part)) / 2.0, 0.0, 0.5);
  return make_certificate(g, eps, lambda_min, method, tol);
}

PrimalDualReport primal_dual_report(const SolveResult& solve, const WeightedGraph& g,
                                    double delta) {
  if (!solve.trace.certified) throw std::invalid_argument("solve ran without certificates");
  PrimalDualReport r;
  r.achieved = solve.cut.cut_fraction;
  for (const IterationRecord& rec : solve.trace.iterations) r.eps = std::max(r.eps, rec.eps_t);
  if (solve.trace.iterations.empty() && g.total_weight() > 0.0) {
    r.eps = best_certificate(g).eps;
  }
  r.certified_upper_bound = 1.0 - r.eps;
  r.ratio = r.certified_upper_bound > 0.0 ? r.achieved / r.certified_upper_bound : 0.0;
  r.guarantee = 0.531 - delta;
  r.meets_guarantee = r.ratio >= r.guarantee;
  return r;
}

}  // namespace smc
