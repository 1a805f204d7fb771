#include "spectral_maxcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace smc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError(what + " at line " + std::to_string(line)), line_(line) {}

void CompensatedSum::add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    correction_ += (sum_ - t) + value;
  } else {
    correction_ += (value - t) + sum_;
  }
  sum_ = t;
}

WeightedGraph::WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges,
                             WeightMode mode)
    : edges_(std::move(edges)), degree_(num_vertices, 0.0), mode_(mode) {
  std::vector<CompensatedSum> deg(num_vertices);
  std::vector<std::size_t> count(num_vertices, 0);
  CompensatedSum total;
  for (const Edge& e : edges_) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw GraphError("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw GraphError("self-loop on vertex " + std::to_string(e.u + 1));
    }
    if (!std::isfinite(e.w)) {
      throw GraphError("non-finite edge weight");
    }
    if (e.w < 0.0) {
      if (mode == WeightMode::max_cut) {
        throw GraphError("negative weight in max-cut mode");
      }
      has_negative_ = true;
    }
    const double a = std::abs(e.w);
    deg[e.u].add(a);
    deg[e.v].add(a);
    total.add(a);
    ++count[e.u];
    ++count[e.v];
  }
  offsets_.assign(num_vertices + 1, 0);
  for (std::size_t v = 0; v < num_vertices; ++v) {
    degree_[v] = deg[v].value();
    offsets_[v + 1] = offsets_[v] + count[v];
  }
  total_weight_ = total.value();
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.w};
    adjacency_[fill[e.v]++] = {e.u, e.w};
  }
}

SignedVector::SignedVector(std::vector<std::int8_t> values)
    : values_(std::move(values)) {
  for (std::int8_t v : values_) {
    if (v < -1 || v > 1) throw std::invalid_argument("entry outside {-1,0,1}");
  }
}

void SignedVector::set(std::size_t i, int value) {
  if (value < -1 || value > 1) throw std::invalid_argument("entry outside {-1,0,1}");
  values_[i] = static_cast<std::int8_t>(value);
}

std::size_t SignedVector::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](auto v) { return v != 0; }));
}

std::vector<Vertex> SignedVector::left() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] < 0) out.push_back(static_cast<Vertex>(i));
  return out;
}

std::vector<Vertex> SignedVector::right() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0) out.push_back(static_cast<Vertex>(i));
  return out;
}

CutValue evaluate_cut(const WeightedGraph& g, std::span<const std::uint8_t> side) {
  if (side.size() != g.num_vertices()) {
    throw std::invalid_argument("cut size does not match vertex count");
  }
  CompensatedSum cut;
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v]) cut.add(e.w);
  }
  const double w = cut.value();
  const double total = g.total_weight();
  return {w, total > 0.0 ? w / total : 0.0};
}

Cut make_cut(const WeightedGraph& g, std::vector<std::uint8_t> side) {
  const CutValue value = evaluate_cut(g, side);
  return {std::move(side), value.cut_weight, value.cut_fraction};
}

PartitionStats partition_stats(const WeightedGraph& g, const SignedVector& y) {
  if (y.size() != g.num_vertices()) {
    throw std::invalid_argument("signed vector size does not match vertex count");
  }
  CompensatedSum uncut, cut, cross;
  for (const Edge& e : g.edges()) {
    const int a = y[e.u];
    const int b = y[e.v];
    const double w = std::abs(e.w);
    if (a == 0 && b == 0) continue;
    if (a == 0 || b == 0) {
      cross.add(w);
    } else if (a == b) {
      uncut.add(w);
    } else {
      cut.add(w);
    }
  }
  PartitionStats s;
  s.uncut = uncut.value();
  s.cut = cut.value();
  s.cross = cross.value();
  s.incident = s.uncut + s.cut + s.cross;
  s.numerator = 4.0 * s.uncut + 2.0 * s.cross;
  s.denominator = 2.0 * (s.uncut + s.cut) + s.cross;
  if (s.denominator > 0.0) s.ratio = s.numerator / s.denominator;
  return s;
}

double evaluate_gain(const WeightedGraph& g, const SignedVector& y) {
  if (y.size() != g.num_vertices()) {
    throw std::invalid_argument("signed vector size does not match vertex count");
  }
  CompensatedSum num, den;
  for (const Edge& e : g.edges()) {
    const int p = y[e.u] * y[e.v];
    if (p != 0) num.add(-2.0 * e.w * p);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0) den.add(g.degree(static_cast<Vertex>(i)));
  }
  if (den.value() <= 0.0) throw GraphError("zero denominator");
  return num.value() / den.value();
}

SignedVector to_signed(std::span<const std::uint8_t> side) {
  std::vector<std::int8_t> y(side.size());
  for (std::size_t i = 0; i < side.size(); ++i) y[i] = side[i] ? 1 : -1;
  return SignedVector(std::move(y));
}

Cut greedy_cut(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> side(n, 0);
  std::vector<std::uint8_t> placed(n, 0);

  auto place = [&](Vertex v) {
    // Weight we would cut by putting v on side 0 resp. side 1.
    double cut_if_0 = 0.0, cut_if_1 = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!placed[nb.vertex]) continue;
      if (side[nb.vertex] == 1) cut_if_0 += nb.w; else cut_if_1 += nb.w;
    }
    side[v] = cut_if_1 > cut_if_0 ? 1 : 0;
    placed[v] = 1;
  };
  for (Vertex v = 0; v < n; ++v)
    if (g.incidence_count(v) > 0) place(v);
  for (Vertex v = 0; v < n; ++v)
    if (g.incidence_count(v) == 0) place(v);

  // A flip changes the cut by (same-side weight) - (other-side weight).
  const double tol = 1e-12 * std::max(1.0, g.total_weight());
  bool improved = true;
  while (improved) {
    improved = false;
    for (Vertex v = 0; v < n; ++v) {
      double delta = 0.0;
      for (const Neighbor& nb : g.neighbors(v)) {
        delta += side[nb.vertex] == side[v] ? nb.w : -nb.w;
      }
      if (delta > tol) {
        side[v] ^= 1;
        improved = true;
      }
    }
  }
  return make_cut(g, std::move(side));
}

namespace {

std::string trim_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return line.substr(first);
}

double parse_weight(std::istringstream& fields, std::size_t line_no) {
  std::string token;
  if (!(fields >> token)) return 1.0;
  try {
    std::size_t used = 0;
    const double w = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "unexpected trailing token '" + extra + "'");
    return w;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line_no, "invalid weight '" + token + "'");
  }
}

long long parse_id(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "invalid vertex id '" + token + "'");
  }
}

void check_edge(long long i, long long j, double w, long long n, WeightMode mode,
                std::size_t line_no) {
  if (i < 1 || j < 1 || (n >= 0 && (i > n || j > n))) {
    throw ParseError(line_no, "vertex id out of range");
  }
  if (i == j) throw ParseError(line_no, "self-loop");
  if (!std::isfinite(w)) throw ParseError(line_no, "non-finite weight");
  if (w < 0.0 && mode == WeightMode::max_cut) {
    throw ParseError(line_no, "negative weight in max-cut mode");
  }
}

WeightedGraph load_dimacs(std::istream& in, WeightMode mode) {
  std::string raw;
  std::size_t line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim_comment(raw);
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate problem line");
      std::string kind, ns, ms;
      if (!(fields >> kind >> ns >> ms) || (kind != "edge" && kind != "col")) {
        throw ParseError(line_no, "malformed problem line");
      }
      n = parse_id(ns, line_no);
      m = parse_id(ms, line_no);
      if (n < 0 || m < 0) throw ParseError(line_no, "negative size in problem line");
      edges.reserve(static_cast<std::size_t>(m));
    } else if (tag == "e") {
      if (n < 0) throw ParseError(line_no, "edge before problem line");
      std::string a, b;
      if (!(fields >> a >> b)) throw ParseError(line_no, "malformed edge line");
      const long long i = parse_id(a, line_no);
      const long long j = parse_id(b, line_no);
      const double w = parse_weight(fields, line_no);
      check_edge(i, j, w, n, mode, line_no);
      edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1), w});
    } else {
      throw ParseError(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing problem line");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "problem line declares " + std::to_string(m) +
                                  " edges but " + std::to_string(edges.size()) +
                                  " were read");
  }
  return WeightedGraph(static_cast<std::size_t>(n), std::move(edges), mode);
}

WeightedGraph load_edge_list(std::istream& in, WeightMode mode) {
  std::string raw;
  std::size_t line_no = 0;
  long long n = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim_comment(raw);
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) throw ParseError(line_no, "malformed edge line");
    const long long i = parse_id(a, line_no);
    const long long j = parse_id(b, line_no);
    const double w = parse_weight(fields, line_no);
    check_edge(i, j, w, -1, mode, line_no);
    n = std::max({n, i, j});
    edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1), w});
  }
  return WeightedGraph(static_cast<std::size_t>(n), std::move(edges), mode);
}

}  // namespace

WeightedGraph load_graph(std::istream& in, GraphFormat format, WeightMode mode) {
  return format == GraphFormat::dimacs ? load_dimacs(in, mode) : load_edge_list(in, mode);
}

WeightedGraph load_graph_file(const std::string& path, GraphFormat format,
                              WeightMode mode) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return load_graph(in, format, mode);
}

void write_dimacs(std::ostream& out, const WeightedGraph& g) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  const auto precision = out.precision(17);
  for (const Edge& e : g.edges()) {
    out << "e " << e.u + 1 << ' ' << e.v + 1;
    if (e.w != 1.0) out << ' ' << e.w;
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace smc
