#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spectral_maxcut/eigensolver.hpp"
#include "spectral_maxcut/graph.hpp"

namespace smc {

/// Raised when lambda_min(D^{-1/2} A D^{-1/2}) >= 0, so the gain ratio is 0.
class NoGainCertificate : public GraphError {
 public:
  using GraphError::GraphError;
};

// Threshold rounding. A threshold t is drawn with t^2 uniform on [0, 1];
// vertex i is active when t e^{-ell} <= |x_i| <= t and then, pairwise
// independently, Y_i = sign(x_i) with probability |x_i| / t (else 0).

struct RoundingExpectations {
  double abs_i = 0.0;   // E |Y_i|
  double prod_ij = 0.0; // E Y_i Y_j
};

/// Closed-form expectations for max|x| <= 1, including the truncation of the
/// active window at t = 1.
RoundingExpectations good_rounding_expectations(std::span<const double> x, double ell, Vertex i,
                                                Vertex j);

/// Worst-case check of the good-rounding conditions
///   |c1 E Y_iY_j - x_i x_j| <= delta (x_i^2 + x_j^2)   and   E|Y_i| <= c2 x_i^2
/// with c1 = 1/(2 ell), c2 = 2 e^ell, delta = 1/ell, for the rounding of x
/// rescaled so that max|x| = e^{-ell} (the largest scale at which no active
/// window is truncated; both conditions are homogeneous of degree two).
/// Conditions are reported as normalised values that must not exceed 1.
struct GoodRoundingReport {
  double ell = 0.0;
  double log_c2 = 0.0;             // ln(2 e^ell)
  double pair_condition_max = 0.0; // max |c1 E - x_i x_j| / (delta (x_i^2 + x_j^2))
  double abs_condition_max = 0.0;  // max E|Y_i| / (c2 x_i^2)
  double measured_delta = 0.0;     // max |c1 E - x_i x_j| / (x_i^2 + x_j^2)
  double log_measured_c2 = 0.0;    // ln max E|Y_i| / x_i^2
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  bool holds() const { return violations == 0; }
};

GoodRoundingReport check_good_rounding(std::span<const double> x, double ell);

/// Exactly pairwise independent uniforms u_i = ((a h_i + b) mod p) / p with
/// h_i = i + 1, indexed by the seed pair (a, b) in Z_p^2. Requires n < p.
class PairwiseFamily {
 public:
  explicit PairwiseFamily(std::uint64_t prime);
  std::uint64_t prime() const { return p_; }
  /// floor(p * u_i) for the point (a, b).
  std::uint64_t cell(std::uint64_t a, std::uint64_t b, Vertex i) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * (i + 1) + b) % p_);
  }
  /// Number of cells k with k / p < q, i.e. the event u_i < q has
  /// probability ceil(q p) / p.
  std::uint64_t cells_below(double q) const;

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);

struct GainOptions {
  double ell_override = 0.0;  // 0: ell = 10 / eps
  std::uint64_t prime = 2147483647;
  /// Points of the sample space drawn per threshold; ignored when
  /// `enumerate_space` is set.
  std::size_t samples_per_threshold = 128;
  /// Walk all p^2 points of every sample space (test scale only).
  bool enumerate_space = false;
  double eigen_delta = 0.01;
  EigenOptions eigen;
  double lambda_tol = 1e-9;
};

/// Candidate threshold: active window and the value t used for the
/// selection probabilities |x_i| / t, both on the rescaled vector.
struct ThresholdClass {
  double log_t = 0.0;
  std::vector<Vertex> window;
  double expected_ratio = 0.0;  // -E[Y^T A Y | t] / E[Y^T D Y | t]
};

/// One representative per combinatorially distinct window: for every
/// breakpoint t in {|x_i|} u {e^ell |x_i|} the closed window at t and the
/// window just above t, each evaluated at t.
std::vector<ThresholdClass> threshold_classes(const WeightedGraph& g, std::span<const double> x,
                                              double ell);

/// -E[Y^T A Y | t] / E[Y^T D Y | t] for the rescaled x at threshold e^{log_t}
/// with the given window.
double conditional_expected_ratio(const WeightedGraph& g, std::span<const double> x, double ell,
                                  double log_t, std::span<const Vertex> window);

struct GainResult {
  SignedVector y;
  double gain = 0.0;
  double eps_spectral = 0.0;   // -x^T A x / x^T D x of the eigenvector
  double ell = 0.0;
  double lambda_bound = 0.0;   // |lambda_n| estimate, an upper bound on the gain ratio
  std::size_t thresholds = 0;
  std::size_t samples = 0;
  double best_expected_ratio = 0.0;
  // Explicit lower bound (eps - 2 delta) / (c1 c2) with measured delta, c2.
  double measured_delta = 0.0;
  double log_c1c2 = 0.0;
  double claim_bound = 0.0;
  double pairwise_slack = 0.0;  // 0: the sample space is exactly pairwise independent
  bool fallback = false;        // no sampled vector had positive gain
};

GainResult four_threshold_spectral_cut(const WeightedGraph& g, std::uint64_t seed,
                                       const GainOptions& options = {});

struct IteratedGainResult {
  Cut cut;
  double gain = 0.0;  // -y^T A y / y^T D y of the full cut
  std::size_t rounds = 0;
};

/// Peels off (L_t, R_t) found by the four-threshold cut until no positive
/// certificate remains, places the rest greedily and reassembles.
IteratedGainResult iterated_gain_cut(const WeightedGraph& g, std::uint64_t seed,
                                     const GainOptions& options = {});

/// max over nonzero y in {-1,0,1}^V of -y^T A y / y^T D y.
inline constexpr std::size_t kMaxGammaVertices = 18;
double gamma_exact(const WeightedGraph& g, SignedVector* witness = nullptr);

}  // namespace smc
