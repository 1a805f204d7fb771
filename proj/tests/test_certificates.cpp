#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "spectral_maxcut/certificates.hpp"

using namespace smc;

TEST_CASE("certificates on named graphs") {
  const DualCertificate c4 = certify_upper_bound(oracle::cycle(4), 0.0);
  CHECK(c4.feasible);
  CHECK(c4.psd_margin == doctest::Approx(0.0));
  CHECK_FALSE(certify_upper_bound(oracle::cycle(4), 0.01).feasible);

  const DualCertificate quarter = certify_upper_bound(oracle::complete(3), 0.25);
  CHECK(quarter.feasible);
  CHECK(quarter.upper_bound == doctest::Approx(0.75));
  CHECK_FALSE(certify_upper_bound(oracle::complete(3), 0.3).feasible);
  CHECK_THROWS(certify_upper_bound(oracle::complete(3), 0.6));
}

TEST_CASE("best certificate") {
  CHECK(best_certificate(oracle::cycle(4)).eps == doctest::Approx(0.0));
  CHECK(best_certificate(oracle::cycle(4)).upper_bound == doctest::Approx(1.0));
  CHECK(best_certificate(oracle::complete(3)).eps == doctest::Approx(0.25));
  const DualCertificate c5 = best_certificate(oracle::cycle(5));
  CHECK(c5.eps == doctest::Approx((1 - std::cos(std::numbers::pi / 5)) / 2));
  CHECK(c5.upper_bound == doctest::Approx(0.904508).epsilon(1e-5));
  CHECK(c5.feasible);
}

TEST_CASE("weak duality against brute force") {
  Rng rng(59);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const WeightedGraph g = oracle::random_graph(n, 0.5, rng, 0.1, 2.0);
    const double opt = oracle::max_cut(g).fraction;
    const DualCertificate best = best_certificate(g);
    CHECK(best.feasible);
    CHECK(opt <= best.upper_bound + 1e-9);
    CHECK(best.eps == doctest::Approx((1 - std::abs(std::min(0.0, oracle::lambda_min(g)))) / 2)
                          .epsilon(1e-9));
    CHECK(best.dual_objective == doctest::Approx(g.total_weight() * best.upper_bound));
    for (double eps = 0.0; eps <= 0.5; eps += 0.05) {
      const DualCertificate c = certify_upper_bound(g, eps);
      if (c.feasible) CHECK(opt <= c.upper_bound + 1e-7);
      CHECK(c.feasible == (eps <= best.eps + 1e-7));
    }
  }
}

TEST_CASE("large graphs use power iteration") {
  Rng rng(61);
  const WeightedGraph g = oracle::random_graph(600, 0.02, rng);
  EigenMethod m;
  const double lmin = estimate_lambda_min(g, &m);
  CHECK(m == EigenMethod::power_iteration);
  CHECK(lmin >= dense_lambda_min(g) - 1e-9);
  CHECK(lmin <= dense_lambda_min(g) + 1e-3);
}

TEST_CASE("primal dual report") {
  const SolveResult c4 = recursive_spectral_cut(oracle::cycle(4));
  const PrimalDualReport r4 = primal_dual_report(c4, oracle::cycle(4), 0.05);
  CHECK(r4.achieved == 1.0);
  CHECK(r4.certified_upper_bound == doctest::Approx(1.0));
  CHECK(r4.ratio == doctest::Approx(1.0));

  const SolveResult tri = recursive_spectral_cut(oracle::complete(3));
  const PrimalDualReport rt = primal_dual_report(tri, oracle::complete(3), 0.05);
  CHECK(rt.achieved == doctest::Approx(2.0 / 3.0));
  CHECK(rt.certified_upper_bound == doctest::Approx(0.75));
  CHECK(rt.ratio == doctest::Approx(8.0 / 9.0));
  CHECK(rt.meets_guarantee);

  Rng rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(12));
    const WeightedGraph g = oracle::random_graph(n, 0.5, rng, 0.1, 2.0);
    const SolveResult s = recursive_spectral_cut(g);
    const PrimalDualReport r = primal_dual_report(s, g, 0.05);
    CHECK(r.meets_guarantee);
    CHECK(oracle::max_cut(g).fraction <= r.certified_upper_bound + 1e-7);
  }
}
