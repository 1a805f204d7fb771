#pragma once

#include "spectral_maxcut/eigensolver.hpp"
#include "spectral_maxcut/graph.hpp"
#include "spectral_maxcut/maxcut_solver.hpp"

namespace smc {

/// Dual solution y_i = 2 eps d_i of the Goemans-Williamson relaxation.
///
/// It is feasible iff (1 - 2 eps) D + A is PSD, i.e. iff
/// psd_margin = (1 - 2 eps) + lambda_min(D^{-1/2} A D^{-1/2}) >= -tol,
/// in which case the Max Cut optimum is at most (1 - eps) of the total weight.
struct DualCertificate {
  double eps = 0.0;
  double lambda_min = 0.0;
  double psd_margin = 0.0;
  bool feasible = false;
  double upper_bound = 1.0;      // 1 - eps, as a fraction of total weight
  double dual_objective = 0.0;   // total_weight - 1/4 sum_i 2 eps d_i
  EigenMethod method = EigenMethod::dense;
};

inline constexpr double kDefaultCertificateTol = 1e-7;
/// Graphs with at most this many active vertices get a dense eigenvalue.
inline constexpr std::size_t kDenseCertificateLimit = 500;

/// lambda_min of the normalized adjacency matrix, dense up to
/// kDenseCertificateLimit active vertices and by power iteration above.
double estimate_lambda_min(const WeightedGraph& g, EigenMethod* method_used = nullptr);

DualCertificate certify_upper_bound(const WeightedGraph& g, double eps,
                                    double tol = kDefaultCertificateTol);

/// Largest feasible eps: (1 - |min(lambda_min, 0)|) / 2.
DualCertificate best_certificate(const WeightedGraph& g, double tol = kDefaultCertificateTol);

struct PrimalDualReport {
  double achieved = 0.0;               // cut fraction of the solve
  double eps = 0.0;                    // max_t eps_t
  double certified_upper_bound = 1.0;  // 1 - eps
  double ratio = 0.0;                  // achieved / certified_upper_bound
  double guarantee = 0.0;              // 0.531 - delta
  bool meets_guarantee = false;
};

inline constexpr double kApproximationConstant = 0.531128;

PrimalDualReport primal_dual_report(const SolveResult& solve, const WeightedGraph& g,
                                    double delta);

}  // namespace smc
