#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "spectral_maxcut/graph.hpp"

using namespace smc;

namespace {

WeightedGraph parse(const std::string& text, WeightMode mode = WeightMode::max_cut) {
  std::istringstream in(text);
  return load_graph(in, GraphFormat::dimacs, mode);
}

const WeightedGraph kTriangle = oracle::complete(3);

}  // namespace

TEST_CASE("dimacs parsing") {
  const WeightedGraph k2 = parse("p edge 2 1\ne 1 2 1\n");
  CHECK(k2.num_vertices() == 2);
  CHECK(k2.num_edges() == 1);
  CHECK(k2.degree(0) == 1.0);
  CHECK(k2.degree(1) == 1.0);

  const WeightedGraph tri = parse("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  CHECK(tri.total_weight() == 3.0);
  for (Vertex v = 0; v < 3; ++v) CHECK(tri.degree(v) == 2.0);
}

TEST_CASE("dimacs errors carry the line number") {
  try {
    parse("p edge 2 1\ne 1 1 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("self-loop at line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("e 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("p edge 2 1\ne 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse("p edge 2 1\ne 1 2 -1\n"), ParseError);
  CHECK_THROWS_AS(parse("p edge 2 1\nx\n"), ParseError);
  CHECK_THROWS_AS(parse("p edge 2 2\ne 1 2\n"), ParseError);
  CHECK_NOTHROW(parse("p edge 2 1\ne 1 2 -1\n", WeightMode::gain));
}

TEST_CASE("edge list format and dimacs round trip") {
  std::istringstream in("# comment\n1 2 2.5\n2 3\n");
  const WeightedGraph g = load_graph(in, GraphFormat::edge_list);
  CHECK(g.num_vertices() == 3);
  CHECK(g.total_weight() == doctest::Approx(3.5));
  std::ostringstream out;
  write_dimacs(out, g);
  const WeightedGraph back = parse(out.str());
  REQUIRE(back.num_edges() == 2);
  CHECK(back.edges()[0].w == 2.5);
  CHECK(back.edges()[1].w == 1.0);
}

TEST_CASE("cut evaluation") {
  const WeightedGraph k2 = oracle::complete(2);
  CHECK(evaluate_cut(k2, std::vector<std::uint8_t>{0, 1}).cut_fraction == 1.0);
  CHECK(evaluate_cut(kTriangle, std::vector<std::uint8_t>{0, 1, 1}).cut_fraction ==
        doctest::Approx(2.0 / 3.0));
  const oracle::MaxCut best = oracle::max_cut(oracle::petersen());
  CHECK(evaluate_cut(oracle::petersen(), best.side).cut_fraction == doctest::Approx(12.0 / 15.0));
}

TEST_CASE("partition stats") {
  const PartitionStats c4 =
      partition_stats(oracle::cycle(4), SignedVector(std::vector<std::int8_t>{1, -1, 1, -1}));
  CHECK(c4.uncut == 0.0);
  CHECK(c4.cross == 0.0);
  CHECK(c4.cut == 4.0);
  CHECK(c4.incident == 4.0);
  CHECK(c4.ratio == 0.0);

  const PartitionStats a = partition_stats(kTriangle, SignedVector(std::vector<std::int8_t>{1, -1, 0}));
  CHECK(a.uncut == 0.0);
  CHECK(a.cut == 1.0);
  CHECK(a.cross == 2.0);
  CHECK(a.incident == 3.0);
  CHECK(a.ratio == doctest::Approx(1.0));

  const PartitionStats b = partition_stats(kTriangle, SignedVector(std::vector<std::int8_t>{1, -1, -1}));
  CHECK(b.uncut == 1.0);
  CHECK(b.cut == 2.0);
  CHECK(b.cross == 0.0);
  CHECK(b.ratio == doctest::Approx(2.0 / 3.0));

  CHECK(std::isinf(partition_stats(kTriangle, SignedVector(3)).ratio));
}

TEST_CASE("partition stats agree with the ordered-pair definition") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedGraph g = oracle::random_graph(9, 0.4, rng, 0.1, 3.0);
    std::vector<std::int8_t> y(9);
    for (auto& v : y) v = static_cast<std::int8_t>(static_cast<int>(rng.below(3)) - 1);
    const SignedVector sy(y);
    if (sy.is_zero()) continue;
    double num = 0.0, den = 0.0;
    for (const Edge& e : g.edges()) num += 2.0 * e.w * std::abs(y[e.u] + y[e.v]);
    for (Vertex i = 0; i < 9; ++i) den += g.degree(i) * std::abs(y[i]);
    const PartitionStats s = partition_stats(g, sy);
    CHECK(s.incident == doctest::Approx(s.uncut + s.cut + s.cross));
    CHECK(s.ratio == doctest::Approx(num / den));
  }
}

TEST_CASE("gain evaluation") {
  CHECK(evaluate_gain(oracle::complete(2), SignedVector(std::vector<std::int8_t>{1, -1})) == 1.0);
  CHECK(evaluate_gain(kTriangle, SignedVector(std::vector<std::int8_t>{1, -1, -1})) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(evaluate_gain(oracle::cycle(5), SignedVector(std::vector<std::int8_t>{1, -1, 1, -1, -1})) ==
        doctest::Approx(3.0 / 5.0));
  CHECK_THROWS_AS(evaluate_gain(kTriangle, SignedVector(3)), GraphError);
}

TEST_CASE("greedy cut reaches half the weight") {
  CHECK(greedy_cut(oracle::complete(2)).cut_fraction == 1.0);
  CHECK(greedy_cut(kTriangle).cut_fraction == doctest::Approx(2.0 / 3.0));
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(30));
    const WeightedGraph g = oracle::random_graph(n, 0.3, rng, 0.0, 5.0);
    CHECK(greedy_cut(g).cut_weight >= g.total_weight() / 2.0 - 1e-9);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = oracle::random_signed_graph(12, 0.5, rng);
    double signed_sum = 0.0;
    for (const Edge& e : g.edges()) signed_sum += e.w;
    const Cut c = greedy_cut(g);
    CHECK(c.cut_weight >= signed_sum / 2.0 - 1e-9);
  }
}
