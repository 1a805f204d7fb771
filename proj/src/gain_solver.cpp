#include "spectral_maxcut/gain_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral_maxcut/certificates.hpp"
#include "spectral_maxcut/maxcut_solver.hpp"
#include "spectral_maxcut/random.hpp"

namespace smc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Rounding math for a vector with entries r_i e^{log_scale}, |r_i| <= 1.
// Expectations are returned divided by e^{2 log_scale} so that nothing
// overflows when ell is large.
struct WindowMath {
  double ell;
  double log_scale;

  // ln of the upper end of the window of a vertex with |x| = r e^{log_scale}.
  double log_upper(double r) const { return std::min(0.0, std::log(r) + log_scale + ell); }

  // E|Y_i| / (c2 x_i^2) with c2 = 2 e^ell.
  double abs_condition(double r) const {
    if (r == 0.0) return 0.0;
    return (std::exp(log_upper(r) - log_scale - ell) - r * std::exp(-ell)) / r;
  }

  // ln(E|Y_i| / x_i^2).
  double log_abs_over_square(double r) const {
    const double u = log_upper(r) - log_scale;
    return std::log(2.0) + u + std::log1p(-r * std::exp(-u)) - std::log(r);
  }

  // E Y_i Y_j / e^{2 log_scale}; ri, rj carry the signs.
  double product(double ri, double rj) const {
    const double a = std::abs(ri), b = std::abs(rj);
    if (a == 0.0 || b == 0.0) return 0.0;
    const double lo = std::max(std::log(a), std::log(b)) + log_scale;
    const double hi = std::min(0.0, std::min(std::log(a), std::log(b)) + log_scale + ell);
    if (hi <= lo) return 0.0;
    return 2.0 * ri * rj * (hi - lo);
  }

  // |c1 E Y_iY_j - x_i x_j| / (x_i^2 + x_j^2) with c1 = 1 / (2 ell).
  double pair_deviation(double ri, double rj) const {
    const double sq = ri * ri + rj * rj;
    if (sq == 0.0) return 0.0;
    return std::abs(product(ri, rj) / (2.0 * ell) - ri * rj) / sq;
  }
};

std::vector<double> relative_entries(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) throw std::invalid_argument("rounding needs a nonzero vector");
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] / m;
  return r;
}

void require_ell(double ell) {
  if (!(ell > 1.0) || !std::isfinite(ell)) throw std::invalid_argument("ell must be a finite value > 1");
}

}  // namespace

RoundingExpectations good_rounding_expectations(std::span<const double> x, double ell, Vertex i,
                                                Vertex j) {
  require_ell(ell);
  for (double v : x) {
    if (std::abs(v) > 1.0 + 1e-12) throw std::invalid_argument("rounding expects max |x_i| <= 1");
  }
  const WindowMath math{ell, 0.0};
  const double a = std::abs(x[i]);
  RoundingExpectations e;
  if (a > 0.0) e.abs_i = 2.0 * a * (std::exp(math.log_upper(a)) - a);
  e.prod_ij = i == j ? e.abs_i : math.product(x[i], x[j]);
  return e;
}

GoodRoundingReport check_good_rounding(std::span<const double> x, double ell) {
  require_ell(ell);
  const std::vector<double> r = relative_entries(x);
  const WindowMath math{ell, -ell};
  GoodRoundingReport rep;
  rep.ell = ell;
  rep.log_c2 = std::log(2.0) + ell;
  rep.log_measured_c2 = kNegInf;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = std::abs(r[i]);
    if (a == 0.0) continue;
    const double cond = math.abs_condition(a);
    rep.abs_condition_max = std::max(rep.abs_condition_max, cond);
    rep.log_measured_c2 = std::max(rep.log_measured_c2, math.log_abs_over_square(a));
    if (cond > 1.0 + 1e-12) ++rep.violations;
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double dev = math.pair_deviation(r[i], r[j]);
      ++rep.pairs_checked;
      rep.measured_delta = std::max(rep.measured_delta, dev);
      const double cond = dev * ell;  // delta = 1 / ell
      rep.pair_condition_max = std::max(rep.pair_condition_max, cond);
      if (cond > 1.0 + 1e-12) ++rep.violations;
    }
  }
  return rep;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

PairwiseFamily::PairwiseFamily(std::uint64_t prime) : p_(prime) {
  if (!is_prime(prime)) throw std::invalid_argument("pairwise family needs a prime modulus");
}

std::uint64_t PairwiseFamily::cells_below(double q) const {
  if (q <= 0.0) return 0;
  const double c = std::ceil(q * static_cast<double>(p_));
  return c >= static_cast<double>(p_) ? p_ : static_cast<std::uint64_t>(c);
}

namespace {

double expected_ratio_relative(const WeightedGraph& g, const std::vector<double>& r, double ell,
                               double log_t, std::span<const Vertex> window,
                               std::vector<double>& q) {
  double den = 0.0;
  for (Vertex i : window) {
    // |x~_i| / t with |x~_i| = |r_i| e^{-ell}.
    q[i] = sign_of(r[i]) * std::exp(std::log(std::abs(r[i])) - ell - log_t);
    den += g.degree(i) * std::abs(q[i]);
  }
  double num = 0.0;
  for (Vertex u : window) {
    for (const Neighbor& nb : g.neighbors(u)) {
      if (nb.vertex > u) num -= 2.0 * nb.w * q[u] * q[nb.vertex];
    }
  }
  for (Vertex i : window) q[i] = 0.0;
  return den > 0.0 ? num / den : kNegInf;
}

}  // namespace

double conditional_expected_ratio(const WeightedGraph& g, std::span<const double> x, double ell,
                                  double log_t, std::span<const Vertex> window) {
  const std::vector<double> r = relative_entries(x);
  std::vector<double> q(g.num_vertices(), 0.0);
  return expected_ratio_relative(g, r, ell, log_t, window, q);
}

std::vector<ThresholdClass> threshold_classes(const WeightedGraph& g, std::span<const double> x,
                                              double ell) {
  require_ell(ell);
  const std::vector<double> r = relative_entries(x);
  // In log t, vertex i is active on [ln|r_i| - ell, ln|r_i|].
  std::vector<double> enter(r.size(), kNegInf), leave(r.size(), kNegInf);
  std::vector<double> breakpoints;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0.0) continue;
    leave[i] = std::log(std::abs(r[i]));
    enter[i] = leave[i] - ell;
    breakpoints.push_back(enter[i]);
    breakpoints.push_back(leave[i]);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  std::vector<ThresholdClass> out;
  std::vector<double> q(g.num_vertices(), 0.0);
  for (double b : breakpoints) {
    std::vector<Vertex> closed, open;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == 0.0 || enter[i] > b || leave[i] < b) continue;
      closed.push_back(static_cast<Vertex>(i));
      if (leave[i] > b) open.push_back(static_cast<Vertex>(i));
    }
    for (auto* w : {&closed, &open}) {
      if (w->empty()) continue;
      if (w == &open && open.size() == closed.size()) continue;
      ThresholdClass c;
      c.log_t = b;
      c.window = *w;
      c.expected_ratio = expected_ratio_relative(g, r, ell, b, c.window, q);
      out.push_back(std::move(c));
    }
  }
  return out;
}

GainResult four_threshold_spectral_cut(const WeightedGraph& g, std::uint64_t seed,
                                       const GainOptions& options) {
  const std::size_t n = g.num_vertices();
  if (g.total_weight() <= 0.0) throw NoGainCertificate("graph has no positive gain certificate");
  if (n >= options.prime) throw std::invalid_argument("prime must exceed the vertex count");
  const PairwiseFamily family(options.prime);

  const EmbeddingVector emb = smallest_eigvec(g, options.eigen_delta, seed, options.eigen);
  GainResult res;
  res.eps_spectral = 1.0 - emb.eps_x;
  if (!(res.eps_spectral > options.lambda_tol)) {
    throw NoGainCertificate("graph has no positive gain certificate");
  }
  res.lambda_bound = std::abs(std::min(0.0, estimate_lambda_min(g)));
  res.ell = options.ell_override > 0.0 ? options.ell_override : 10.0 / res.eps_spectral;
  require_ell(res.ell);

  // Explicit form of the existence bound with measured c2 and delta.
  {
    const std::vector<double> r = relative_entries(emb.x);
    const WindowMath math{res.ell, -res.ell};
    double log_c2 = kNegInf;
    for (double v : r) {
      if (v != 0.0) log_c2 = std::max(log_c2, math.log_abs_over_square(std::abs(v)));
    }
    for (const Edge& e : g.edges()) {
      res.measured_delta = std::max(res.measured_delta, math.pair_deviation(r[e.u], r[e.v]));
    }
    res.log_c1c2 = log_c2 - std::log(2.0 * res.ell);
    const double margin = res.eps_spectral - 2.0 * res.measured_delta;
    res.claim_bound = margin > 0.0 ? std::exp(std::log(margin) - res.log_c1c2) : 0.0;
  }

  const std::vector<ThresholdClass> classes = threshold_classes(g, emb.x, res.ell);
  res.thresholds = classes.size();
  const std::vector<double> r = relative_entries(emb.x);

  std::vector<std::int8_t> y(n, 0);
  std::vector<std::uint64_t> limit(n, 0);
  double best_gain = kNegInf;
  std::vector<std::int8_t> best_y;
  res.best_expected_ratio = kNegInf;

  for (std::size_t c = 0; c < classes.size(); ++c) {
    const ThresholdClass& cls = classes[c];
    res.best_expected_ratio = std::max(res.best_expected_ratio, cls.expected_ratio);
    for (Vertex i : cls.window) {
      limit[i] = family.cells_below(std::exp(std::log(std::abs(r[i])) - res.ell - cls.log_t));
    }
    auto evaluate = [&](std::uint64_t a, std::uint64_t b) {
      double den = 0.0;
      for (Vertex i : cls.window) {
        if (family.cell(a, b, i) < limit[i]) {
          y[i] = static_cast<std::int8_t>(sign_of(r[i]));
          den += g.degree(i);
        }
      }
      if (den > 0.0) {
        double num = 0.0;
        for (Vertex u : cls.window) {
          if (y[u] == 0) continue;
          for (const Neighbor& nb : g.neighbors(u)) {
            if (nb.vertex > u && y[nb.vertex] != 0) num -= 2.0 * nb.w * y[u] * y[nb.vertex];
          }
        }
        const double gain = num / den;
        ++res.samples;
        if (gain > best_gain) {
          best_gain = gain;
          best_y = y;
        }
      }
      for (Vertex i : cls.window) y[i] = 0;
    };
    if (options.enumerate_space) {
      for (std::uint64_t a = 0; a < family.prime(); ++a)
        for (std::uint64_t b = 0; b < family.prime(); ++b) evaluate(a, b);
    } else {
      Rng rng(derive_seed(seed, c + 1));
      for (std::size_t s = 0; s < options.samples_per_threshold; ++s) {
        const std::uint64_t a = rng.below(family.prime());
        const std::uint64_t b = rng.below(family.prime());
        evaluate(a, b);
      }
    }
  }

  if (best_gain > 0.0) {
    res.y = SignedVector(std::move(best_y));
    res.gain = evaluate_gain(g, res.y);
  } else {
    res.fallback = true;
    res.y = to_signed(greedy_cut(g).side);
    res.gain = evaluate_gain(g, res.y);
  }
  return res;
}

IteratedGainResult iterated_gain_cut(const WeightedGraph& g, std::uint64_t seed,
                                     const GainOptions& options) {
  struct Level {
    WeightedGraph graph;
    SignedVector y;
    InducedSubgraph residual;
  };
  std::vector<Level> levels;
  WeightedGraph current = g;
  IteratedGainResult out;
  for (std::uint64_t round = 0; current.total_weight() > 0.0; ++round) {
    GainResult step;
    try {
      step = four_threshold_spectral_cut(current, derive_seed(seed, round), options);
    } catch (const NoGainCertificate&) {
      break;
    }
    if (step.fallback) break;
    InducedSubgraph next = residual_graph(current, step.y);
    WeightedGraph next_graph = next.graph;
    levels.push_back({std::move(current), std::move(step.y), std::move(next)});
    current = std::move(next_graph);
    ++out.rounds;
  }
  std::vector<std::uint8_t> side = greedy_cut(current).side;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    side = assemble_cut(it->graph, it->residual, side, it->y).side;
  }
  out.cut = make_cut(g, std::move(side));
  out.gain = g.total_weight() > 0.0 ? evaluate_gain(g, to_signed(out.cut.side)) : 0.0;
  return out;
}

double gamma_exact(const WeightedGraph& g, SignedVector* witness) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxGammaVertices) {
    throw std::invalid_argument("exact gain ratio supports at most " +
                                std::to_string(kMaxGammaVertices) + " vertices");
  }
  if (g.total_weight() <= 0.0) throw GraphError("graph has no edges");

  std::vector<int> y(n, 0);
  double num = 0.0, den = 0.0;  // -y^T A y and y^T D y
  double best_num = 0.0, best_den = 0.0;
  bool found = false;
  std::vector<int> best_y;

  auto shift = [&](Vertex v, int s) {  // change y_v by s, assuming y_v = 0 on one side
    double acc = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) acc += nb.w * y[nb.vertex];
    num -= 2.0 * s * acc;
  };
  auto recurse = [&](auto&& self, std::ptrdiff_t pos, bool fixed) -> void {
    if (pos < 0) {
      if (den > 0.0 && (!found || num * best_den > best_num * den)) {
        found = true;
        best_num = num;
        best_den = den;
        best_y = y;
      }
      return;
    }
    const auto v = static_cast<Vertex>(pos);
    self(self, pos - 1, fixed);
    for (int s : {1, -1}) {
      if (s < 0 && !fixed) break;
      shift(v, s);
      den += g.degree(v);
      y[v] = s;
      self(self, pos - 1, true);
      y[v] = 0;
      shift(v, -s);
      den -= g.degree(v);
    }
  };
  recurse(recurse, static_cast<std::ptrdiff_t>(n) - 1, false);
  if (!found) throw GraphError("no vector with positive denominator");
  if (witness) *witness = SignedVector(std::vector<std::int8_t>(best_y.begin(), best_y.end()));
  return best_num / best_den;
}

}  // namespace smc
