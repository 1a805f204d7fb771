#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "spectral_maxcut/certificates.hpp"
#include "spectral_maxcut/gain_solver.hpp"

using namespace smc;

namespace {

RoundingExpectations moments(double xi, double xj, double ell) {
  const std::vector<double> x{xi, xj};
  return good_rounding_expectations(x, ell, 0, 1);
}

double log_uniform_entry(Rng& rng) {
  const double mag = std::exp(-12.0 * rng.uniform());
  return rng.uniform() < 0.5 ? -mag : mag;
}

}  // namespace

TEST_CASE("closed-form expectations on hand examples") {
  const RoundingExpectations zero = moments(0.0, 0.5, 1.0 + 1e-12);
  CHECK(zero.abs_i == 0.0);
  CHECK(zero.prod_ij == 0.0);
  CHECK_THROWS(moments(0.1, 0.1, 1.0));  // ell must exceed 1

  const double ell = 1.0 + 1e-15;
  CHECK(moments(0.1, 0.1, ell).abs_i == doctest::Approx(2 * (std::exp(1.0) - 1) * 0.01).epsilon(1e-9));
  CHECK(moments(0.1, 0.1, ell).prod_ij == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(moments(0.1, -0.1, ell).prod_ij == doctest::Approx(-0.02).epsilon(1e-9));

  const double far = 0.9 * std::exp(-2.0) * 0.5;
  CHECK(moments(0.9, far, 2.0).prod_ij == 0.0);
  CHECK(0.9 * far <= 0.81 / 2.0);
}

TEST_CASE("closed forms match quadrature") {
  Rng rng(71);
  for (double ell : {2.0, 5.0, 10.0}) {
    for (int k = 0; k < 300; ++k) {
      const double xi = log_uniform_entry(rng), xj = log_uniform_entry(rng);
      const RoundingExpectations e = moments(xi, xj, ell);
      const oracle::PairMoments ref = oracle::integrated_moments(xi, xj, ell);
      CHECK(e.abs_i == doctest::Approx(ref.abs_i).epsilon(1e-8));
      CHECK(std::abs(e.prod_ij - ref.prod_ij) <= 1e-8);
    }
  }
}

TEST_CASE("closed forms match Monte Carlo sampling") {
  Rng rng(73);
  const double xi = 0.3, xj = -0.12, ell = 2.0;
  const RoundingExpectations e = moments(xi, xj, ell);
  const int samples = 1000000;
  double abs_sum = 0.0, prod_sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = std::sqrt(rng.uniform());
    int yi = 0, yj = 0;
    if (t * std::exp(-ell) <= std::abs(xi) && std::abs(xi) <= t && rng.uniform() < std::abs(xi) / t) yi = 1;
    if (t * std::exp(-ell) <= std::abs(xj) && std::abs(xj) <= t && rng.uniform() < std::abs(xj) / t) yj = -1;
    abs_sum += std::abs(yi);
    prod_sum += yi * yj;
  }
  const double sigma = 1.0 / std::sqrt(static_cast<double>(samples));
  CHECK(std::abs(abs_sum / samples - e.abs_i) <= 3 * sigma);
  CHECK(std::abs(prod_sum / samples - e.prod_ij) <= 3 * sigma);
}

TEST_CASE("pairwise family") {
  CHECK(is_prime(2));
  CHECK(is_prime(257));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(next_prime(90) == 97);
  CHECK_THROWS(PairwiseFamily(12));

  const PairwiseFamily f(13);
  CHECK(f.cells_below(0.0) == 0);
  CHECK(f.cells_below(1.0) == 13);
  CHECK(f.cells_below(1.0 / 13.0) == 1);
  CHECK(f.cells_below(1.5 / 13.0) == 2);
  // (u_i, u_j) takes every value of Z_p^2 exactly once for i != j.
  for (Vertex i = 0; i < 4; ++i) {
    for (Vertex j = i + 1; j < 5; ++j) {
      std::vector<int> seen(13 * 13, 0);
      for (std::uint64_t a = 0; a < 13; ++a)
        for (std::uint64_t b = 0; b < 13; ++b) ++seen[f.cell(a, b, i) * 13 + f.cell(a, b, j)];
      CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
  }
}

TEST_CASE("closed forms match the enumerated sample space") {
  Rng rng(79);
  const std::uint64_t p = 31;
  for (int k = 0; k < 30; ++k) {
    const double xi = log_uniform_entry(rng) * 0.99, xj = log_uniform_entry(rng) * 0.99;
    const RoundingExpectations e = moments(xi, xj, 2.0);
    const oracle::PairMoments ref = oracle::enumerated_moments(xi, xj, 2.0, p);
    CHECK(std::abs(e.abs_i - ref.abs_i) <= 1.0 / p);
    CHECK(std::abs(e.prod_ij - ref.prod_ij) <= 1.0 / p);
  }
}

TEST_CASE("good rounding conditions") {
  Rng rng(83);
  for (double ell : {2.0, 5.0, 10.0}) {
    for (int k = 0; k < 200; ++k) {
      std::vector<double> x(8);
      for (double& v : x) v = log_uniform_entry(rng);
      if (k % 10 == 0) x[3] = 0.0;
      const GoodRoundingReport r = check_good_rounding(x, ell);
      CHECK(r.holds());
      CHECK(r.pairs_checked == 28);
      CHECK(r.abs_condition_max <= 1.0);
      CHECK(r.measured_delta <= 1.0 / ell + 1e-15);
      CHECK(r.log_measured_c2 <= r.log_c2 + 1e-12);
    }
  }
  // Huge ell stays finite.
  const GoodRoundingReport big = check_good_rounding(std::vector<double>{1.0, 0.5, -1e-3}, 2000.0);
  CHECK(big.holds());
  CHECK(std::isfinite(big.log_measured_c2));
}

TEST_CASE("threshold classes dominate a fine grid") {
  Rng rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGraph g = oracle::random_signed_graph(10, 0.5, rng);
    std::vector<double> x(10);
    for (double& v : x) v = log_uniform_entry(rng);
    const double ell = 1.5 + 3 * rng.uniform();
    const auto classes = threshold_classes(g, x, ell);
    CHECK(classes.size() <= 4 * g.num_vertices());
    double best_class = -std::numeric_limits<double>::infinity();
    for (const ThresholdClass& c : classes) best_class = std::max(best_class, c.expected_ratio);

    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    double best_grid = -std::numeric_limits<double>::infinity();
    const int steps = 10000;
    for (int s = 0; s <= steps; ++s) {
      const double log_t = -(ell + 13.0) * s / steps;  // log t of the rescaled vector
      std::vector<Vertex> window;
      for (Vertex i = 0; i < 10; ++i) {
        const double lx = std::log(std::abs(x[i]) / m) - ell;
        if (x[i] != 0.0 && lx <= log_t && log_t - ell <= lx) window.push_back(i);
      }
      if (!window.empty()) {
        best_grid = std::max(best_grid, conditional_expected_ratio(g, x, ell, log_t, window));
      }
    }
    CHECK(best_grid <= best_class + 1e-12);
    CHECK(best_class <= best_grid + 1e-2 * std::max(1.0, std::abs(best_class)));
  }
}

TEST_CASE("four-threshold cut on small graphs") {
  const GainResult k2 = four_threshold_spectral_cut(oracle::complete(2), 1);
  CHECK(k2.gain == doctest::Approx(1.0));
  CHECK(k2.y.support_size() == 2);
  CHECK(k2.y[0] == -k2.y[1]);

  const GainResult tri = four_threshold_spectral_cut(oracle::complete(3), 1);
  CHECK(tri.gain > 0.0);
  CHECK(tri.gain <= 0.5 + 1e-12);

  const WeightedGraph anti(2, {{0, 1, -1.0}}, WeightMode::gain);
  const GainResult a = four_threshold_spectral_cut(anti, 1);
  CHECK(a.gain == doctest::Approx(1.0));
  CHECK(a.y[0] == a.y[1]);
  CHECK(a.y[0] != 0);

  CHECK_THROWS_AS(four_threshold_spectral_cut(WeightedGraph(3, {}, WeightMode::gain), 1),
                  NoGainCertificate);
}

TEST_CASE("four-threshold cut with the whole sample space") {
  Rng rng(97);
  GainOptions o;
  o.prime = 23;
  o.enumerate_space = true;
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedGraph g = oracle::random_signed_graph(8, 0.5, rng);
    const GainResult r = four_threshold_spectral_cut(g, trial, o);
    CHECK(r.pairwise_slack == 0.0);
    CHECK(r.samples > 0);
    CHECK(r.gain >= r.claim_bound);
    CHECK(r.gain <= oracle::gamma(g) + 1e-9);
    if (oracle::lambda_min(g) <= -0.1) CHECK(r.gain > 0.0);
  }
}

TEST_CASE("planted gain is found") {
  // Half of the edges form a complete bipartite overlay.
  Rng rng(101);
  std::vector<Edge> es;
  for (Vertex i = 0; i < 6; ++i)
    for (Vertex j = 6; j < 12; ++j) es.push_back({i, j, 1.0});
  for (int k = 0; k < 36;) {
    const auto u = static_cast<Vertex>(rng.below(12)), v = static_cast<Vertex>(rng.below(12));
    if (u == v) continue;
    es.push_back({u, v, rng.uniform() < 0.5 ? 1.0 : -1.0});
    ++k;
  }
  const WeightedGraph g(12, es, WeightMode::gain);
  const GainResult r = four_threshold_spectral_cut(g, 5);
  CHECK(r.gain > 0.0);
  CHECK(r.gain >= r.claim_bound);
  CHECK(r.lambda_bound == doctest::Approx(std::abs(oracle::lambda_min(g))));
}

TEST_CASE("iterated gain cut") {
  const IteratedGainResult c4 = iterated_gain_cut(oracle::cycle(4), 1);
  CHECK(c4.gain == doctest::Approx(1.0));
  CHECK(c4.cut.cut_fraction == 1.0);

  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const WeightedGraph g = oracle::random_signed_graph(n, 0.5, rng);
    const IteratedGainResult r = iterated_gain_cut(g, trial);
    // Best gain over full cuts by brute force.
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::vector<std::int8_t> y(n);
      for (int i = 0; i < n; ++i) y[i] = (mask >> i & 1U) ? 1 : -1;
      best = std::max(best, evaluate_gain(g, SignedVector(y)));
    }
    CHECK(r.gain <= best + 1e-9);
    CHECK(r.gain == doctest::Approx(evaluate_gain(g, to_signed(r.cut.side))));
  }
}

TEST_CASE("exact gain ratio") {
  CHECK(gamma_exact(oracle::cycle(4)) == doctest::Approx(1.0));
  SignedVector w;
  CHECK(gamma_exact(oracle::complete(3), &w) == doctest::Approx(0.5));
  CHECK(w.support_size() == 2);
  CHECK(gamma_exact(oracle::cycle(5)) == doctest::Approx(0.75));
  CHECK(evaluate_gain(oracle::cycle(5), SignedVector(std::vector<std::int8_t>{1, -1, 1, -1, -1})) ==
        doctest::Approx(0.6));

  Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    const WeightedGraph g = oracle::random_signed_graph(2 + static_cast<int>(rng.below(7)), 0.6, rng);
    SignedVector y;
    const double gamma = gamma_exact(g, &y);
    CHECK(gamma == doctest::Approx(oracle::gamma(g)).epsilon(1e-12));
    CHECK(evaluate_gain(g, y) == doctest::Approx(gamma));
    CHECK(gamma <= std::abs(oracle::lambda_min(g)) + 1e-7);
  }
  CHECK_THROWS(gamma_exact(oracle::cycle(static_cast<int>(kMaxGammaVertices) + 1)));
}
