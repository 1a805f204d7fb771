#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smc {

using Vertex = std::uint32_t;

/// Whether negative edge weights are admissible.
enum class WeightMode { max_cut, gain };

struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

struct Neighbor {
  Vertex vertex;
  double w;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text loaders; `line()` is 1-based.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

/// Immutable undirected weighted (multi)graph without self-loops.
///
/// Degrees are sums of absolute incident weights, so the same type carries
/// the non-negative Max Cut instances and the signed CutGain instances.
/// Each undirected edge is stored once; sums over ordered pairs are twice
/// the corresponding sums over `edges()`.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges,
                WeightMode mode = WeightMode::max_cut);

  std::size_t num_vertices() const { return degree_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> degrees() const { return degree_; }
  double degree(Vertex v) const { return degree_[v]; }
  /// Number of incident edge records (parallel edges counted separately).
  std::size_t incidence_count(Vertex v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], incidence_count(v)};
  }
  /// Sum of |w| over edges; equals the edge count for unit weights.
  double total_weight() const { return total_weight_; }
  WeightMode mode() const { return mode_; }
  bool has_negative_weights() const { return has_negative_; }

 private:
  std::vector<Edge> edges_;
  std::vector<double> degree_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  double total_weight_ = 0.0;
  WeightMode mode_ = WeightMode::max_cut;
  bool has_negative_ = false;
};

/// Vector in {-1, 0, +1}^V. Support S, L = {-1 entries}, R = {+1 entries}.
class SignedVector {
 public:
  SignedVector() = default;
  explicit SignedVector(std::size_t n) : values_(n, 0) {}
  explicit SignedVector(std::vector<std::int8_t> values);

  std::size_t size() const { return values_.size(); }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, int value);
  std::span<const std::int8_t> values() const { return values_; }

  std::size_t support_size() const;
  std::vector<Vertex> left() const;   // y_i = -1
  std::vector<Vertex> right() const;  // y_i = +1
  bool is_zero() const { return support_size() == 0; }

  friend bool operator==(const SignedVector&, const SignedVector&) = default;

 private:
  std::vector<std::int8_t> values_;
};

/// Weighted accounting of a SignedVector against a graph.
///
/// `incident` (M) = uncut (U) + cut (C) + cross (X). The ratio
/// sum_{i,j} A_ij |y_i + y_j| / sum_i d_i |y_i| equals
/// (4U + 2X) / (2(U + C) + X); it is +inf when y is zero.
struct PartitionStats {
  double incident = 0.0;
  double uncut = 0.0;
  double cut = 0.0;
  double cross = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = std::numeric_limits<double>::infinity();
};

struct Cut {
  std::vector<std::uint8_t> side;
  double cut_weight = 0.0;
  double cut_fraction = 0.0;
};

struct CutValue {
  double cut_weight;
  double cut_fraction;
};

CutValue evaluate_cut(const WeightedGraph& g, std::span<const std::uint8_t> side);
/// Builds a Cut with its value filled in.
Cut make_cut(const WeightedGraph& g, std::vector<std::uint8_t> side);

PartitionStats partition_stats(const WeightedGraph& g, const SignedVector& y);

/// -y^T A y / y^T D y. Throws GraphError on empty support.
double evaluate_gain(const WeightedGraph& g, const SignedVector& y);

/// Full-support sign vector of a cut: side 0 -> -1, side 1 -> +1.
SignedVector to_signed(std::span<const std::uint8_t> side);

/// Greedy placement followed by single-vertex flips until no flip helps.
/// Guarantees cut_weight >= (sum of signed weights) / 2.
Cut greedy_cut(const WeightedGraph& g);

enum class GraphFormat { dimacs, edge_list };

WeightedGraph load_graph(std::istream& in, GraphFormat format,
                         WeightMode mode = WeightMode::max_cut);
WeightedGraph load_graph_file(const std::string& path, GraphFormat format,
                              WeightMode mode = WeightMode::max_cut);
void write_dimacs(std::ostream& out, const WeightedGraph& g);

}  // namespace smc
