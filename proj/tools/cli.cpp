#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectral_maxcut/bipartite_spectral.hpp"
#include "spectral_maxcut/certificates.hpp"
#include "spectral_maxcut/degree_reduce.hpp"
#include "spectral_maxcut/eigensolver.hpp"
#include "spectral_maxcut/gain_solver.hpp"
#include "spectral_maxcut/graph.hpp"
#include "spectral_maxcut/maxcut_solver.hpp"
#include "spectral_maxcut/random.hpp"
#include "spectral_maxcut/sparsifier.hpp"

namespace smc::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input = "-";
  std::string format = "auto";
  std::uint64_t seed = 42;
  double delta = 0.05;
};

GraphFormat resolve_format(const std::string& format, const std::string& path) {
  if (format == "dimacs") return GraphFormat::dimacs;
  if (format == "edges") return GraphFormat::edge_list;
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".el" || ext == ".edges" || ext == ".txt") return GraphFormat::edge_list;
  return GraphFormat::dimacs;
}

WeightedGraph read_graph(const std::string& path, const std::string& format, std::istream& in,
                         WeightMode mode) {
  const GraphFormat f = resolve_format(format, path);
  if (path == "-") return load_graph(in, f, mode);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  return load_graph(file, f, mode);
}

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

json one_based(const std::vector<Vertex>& vs) {
  json a = json::array();
  for (Vertex v : vs) a.push_back(v + 1);
  return a;
}

json sides_json(std::span<const std::uint8_t> side) {
  json a = json::array();
  for (std::uint8_t s : side) a.push_back(static_cast<int>(s));
  return a;
}

json stats_json(const PartitionStats& s) {
  return {{"incident", s.incident}, {"uncut", s.uncut}, {"cut", s.cut},
          {"cross", s.cross},       {"ratio", s.ratio}};
}

void emit(std::ostream& out, json j) {
  j["schema"] = 1;
  out << j.dump(2) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

void add_common(CLI::App* sub, Common& c, bool with_delta = true) {
  sub->add_option("input", c.input, "graph file, or - for stdin");
  sub->add_option("--format", c.format, "dimacs, edges or auto")
      ->check(CLI::IsMember({"auto", "dimacs", "edges"}));
  sub->add_option("--seed", c.seed, "random seed");
  if (with_delta) sub->add_option("--delta", c.delta, "accuracy parameter");
}

EigenMethod parse_method(const std::string& m) {
  if (m == "power") return EigenMethod::power_iteration;
  if (m == "dense") return EigenMethod::dense;
  return EigenMethod::automatic;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string one_line(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char ch) { return ch == '\t' || ch == '\n'; }, ' ');
  return s;
}

json trace_json(const SolveTrace& t) {
  json its = json::array();
  for (const IterationRecord& r : t.iterations) {
    its.push_back({{"rho", r.rho},
                   {"stats", stats_json(r.stats)},
                   {"eps_x", r.eps_x},
                   {"residual_eps", r.residual_eps},
                   {"eps_t", r.eps_t},
                   {"accepted", r.accepted},
                   {"support_size", r.support_size},
                   {"residual_vertices", r.residual_vertices},
                   {"eigen_iterations", r.eigen_iterations}});
  }
  return {{"iterations", its},
          {"stop_reason", to_string(t.stop_reason)},
          {"depth", t.depth},
          {"final_residual_weight", t.final_residual_weight},
          {"certified", t.certified}};
}

std::size_t thread_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("SPECTRAL_MAXCUT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && v > 0) n = std::min<std::size_t>(n, v);
  }
  return std::max<std::size_t>(1, std::min(n, std::max<std::size_t>(jobs, 1)));
}

struct BenchRow {
  std::string file;
  bool ok = false;
  std::string error;
  std::size_t n = 0, m = 0, depth = 0;
  double fraction = 0.0, bound = 1.0, ratio = 0.0, wall_ms = 0.0;
};

BenchRow bench_one(const fs::path& path, const std::string& format, const SolveOptions& opts) {
  BenchRow row;
  row.file = path.filename().string();
  try {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open file");
    const WeightedGraph g = load_graph(file, resolve_format(format, path.string()));
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = recursive_spectral_cut(g, opts);
    const PrimalDualReport rep = primal_dual_report(res, g, opts.delta);
    const auto t1 = std::chrono::steady_clock::now();
    row.n = g.num_vertices();
    row.m = g.num_edges();
    row.depth = res.trace.depth;
    row.fraction = res.cut.cut_fraction;
    row.bound = rep.certified_upper_bound;
    // An edgeless instance is solved optimally by any cut.
    row.ratio = g.total_weight() > 0.0 ? rep.ratio : 1.0;
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.ok = true;
  } catch (const ParseError& e) {
    row.error = "line " + std::to_string(e.line()) + ": " + e.what();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spectral Max Cut toolkit", "spectral-maxcut"};
  app.require_subcommand(1);

  // eig
  Common eig_c;
  std::string eig_method = "auto";
  bool eig_vector = false;
  auto* eig = app.add_subcommand("eig", "approximate smallest eigenvector");
  add_common(eig, eig_c);
  eig->add_option("--method", eig_method)->check(CLI::IsMember({"auto", "power", "dense"}));
  eig->add_flag("--vector", eig_vector, "include the vector");

  // sweep
  Common sweep_c;
  auto* sweep = app.add_subcommand("sweep", "two-threshold spectral partition");
  add_common(sweep, sweep_c);

  // beta
  Common beta_c;
  auto* beta = app.add_subcommand("beta", "exact bipartiteness ratio (n <= 20)");
  add_common(beta, beta_c, false);

  // solve
  Common solve_c;
  std::string stop_rule = "paper", trace_path;
  bool sparsify_first = false;
  double sparsify_delta = 0.05, oversample = 16.0;
  auto* solve = app.add_subcommand("solve", "recursive spectral Max Cut");
  add_common(solve, solve_c);
  solve->add_option("--stop-rule", stop_rule)->check(CLI::IsMember({"paper", "relaxed"}));
  solve->add_option("--trace", trace_path, "write the iteration trace as JSON");
  solve->add_flag("--sparsify-first", sparsify_first);
  solve->add_option("--sparsify-delta", sparsify_delta);
  solve->add_option("--oversample", oversample);

  // certify
  Common cert_c;
  double cert_eps = -1.0, cert_bound = -1.0;
  auto* certify = app.add_subcommand("certify", "dual upper bound certificate");
  add_common(certify, cert_c, false);
  certify->add_option("--eps", cert_eps, "check this eps instead of the best one");
  certify->add_option("--bound", cert_bound, "check the claimed upper bound 1 - eps");

  // gain
  Common gain_c;
  GainOptions gain_opts;
  bool gain_iterate = false;
  auto* gain = app.add_subcommand("gain", "four-threshold Max CutGain rounding");
  add_common(gain, gain_c, false);
  gain->add_option("--ell-override", gain_opts.ell_override);
  gain->add_option("--samples", gain_opts.samples_per_threshold, "sample points per threshold");
  gain->add_option("--prime", gain_opts.prime, "modulus of the pairwise family");
  gain->add_flag("--enumerate", gain_opts.enumerate_space, "walk the whole sample space");
  gain->add_flag("--iterate", gain_iterate, "peel repeatedly and output a full cut");

  // sparsify
  Common sp_c;
  double sp_oversample = 16.0;
  std::string sp_output;
  auto* sparsify_cmd = app.add_subcommand("sparsify", "sample a cut-preserving multigraph");
  add_common(sparsify_cmd, sp_c);
  sparsify_cmd->add_option("--sparsify-delta", sp_c.delta, "same as --delta");
  sparsify_cmd->add_option("--oversample", sp_oversample);
  sparsify_cmd->add_option("-o,--output", sp_output);

  // reduce
  Common red_c;
  std::string red_map, red_output;
  auto* reduce_cmd = app.add_subcommand("reduce", "bounded-degree multigraph reduction");
  add_common(reduce_cmd, red_c);
  reduce_cmd->add_option("--copy-map", red_map, "sidecar JSON with the copy ranges")->required();
  reduce_cmd->add_option("-o,--output", red_output);

  // lift
  Common lift_c;
  std::string lift_map, lift_cut_path;
  auto* lift = app.add_subcommand("lift", "map a cut of the reduced graph back");
  add_common(lift, lift_c, false);
  lift->add_option("--copy-map", lift_map)->required();
  lift->add_option("--cut", lift_cut_path, "solve JSON or 0/1 list for the reduced graph")
      ->required();

  // bench
  std::string bench_dir, bench_format = "auto", bench_rule = "paper";
  double bench_delta = 0.05;
  std::uint64_t bench_seed = 42;
  std::size_t bench_threads = 0;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "solve every graph in a directory");
  bench->add_option("corpus", bench_dir)->required();
  bench->add_option("--format", bench_format)->check(CLI::IsMember({"auto", "dimacs", "edges"}));
  bench->add_option("--delta", bench_delta);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--stop-rule", bench_rule)->check(CLI::IsMember({"paper", "relaxed"}));
  bench->add_option("--threads", bench_threads);
  bench->add_flag("--no-timing", no_timing, "print 0 wall times");

  auto fail = [&](int code, const std::string& kind, const std::string& message,
                  std::size_t line = 0) {
    json j{{"error", kind}, {"message", message}};
    if (line) j["line"] = line;
    emit(err, j);
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(kInputError, "usage", e.what());
  }

  try {
    if (eig->parsed()) {
      const WeightedGraph g = read_graph(eig_c.input, eig_c.format, in, WeightMode::max_cut);
      EigenOptions eo;
      eo.method = parse_method(eig_method);
      const EmbeddingVector v = smallest_eigvec(g, eig_c.delta, eig_c.seed, eo);
      json j{{"eps_x", v.eps_x},
             {"delta", v.delta_used},
             {"iterations", v.iterations},
             {"method", to_string(v.method)},
             {"lambda_min_estimate", v.eps_x - 1.0},
             {"max_cut_upper_bound", std::clamp(1.0 - (v.eps_x - eig_c.delta) / 2.0, 0.5, 1.0)}};
      if (eig_vector) j["x"] = v.x;
      emit(out, j);
    } else if (sweep->parsed()) {
      const WeightedGraph g = read_graph(sweep_c.input, sweep_c.format, in, WeightMode::max_cut);
      const SpectralPartition sp = spectral_partition(g, sweep_c.delta, sweep_c.seed);
      emit(out, {{"ratio", sp.sweep.stats.ratio},
                 {"bound", sp.sweep.bound},
                 {"eps_x", sp.sweep.eps_x},
                 {"threshold", sp.sweep.threshold},
                 {"support_size", sp.sweep.y.support_size()},
                 {"L", one_based(sp.sweep.y.left())},
                 {"R", one_based(sp.sweep.y.right())}});
    } else if (beta->parsed()) {
      const WeightedGraph g = read_graph(beta_c.input, beta_c.format, in, WeightMode::max_cut);
      const BetaReport r = beta_exact(g);
      emit(out, {{"beta", r.beta},
                 {"lambda_n", r.lambda_n},
                 {"lower", r.lower},
                 {"upper", r.upper},
                 {"L", one_based(r.witness.left())},
                 {"R", one_based(r.witness.right())}});
    } else if (solve->parsed()) {
      const WeightedGraph g = read_graph(solve_c.input, solve_c.format, in, WeightMode::max_cut);
      SolveOptions opts;
      opts.delta = solve_c.delta;
      opts.seed = solve_c.seed;
      opts.stop_rule = parse_stop_rule(stop_rule);
      json j;
      SolveResult res;
      double bound = 1.0;
      if (sparsify_first && g.num_edges() > 0) {
        SparsifyParams sp{sparsify_delta, oversample, derive_seed(solve_c.seed, 0x5350)};
        const WeightedGraph h = sparsify(g, sp);
        opts.certify = false;
        res = recursive_spectral_cut(h, opts);
        res.cut = make_cut(g, std::move(res.cut.side));
        // Certificates on the sample say nothing exact about g.
        bound = best_certificate(g).upper_bound;
        j["sparsified_edges"] = h.num_edges();
      } else {
        res = recursive_spectral_cut(g, opts);
        bound = primal_dual_report(res, g, opts.delta).certified_upper_bound;
      }
      j.update({{"n", g.num_vertices()},
                {"m", g.num_edges()},
                {"cut_weight", res.cut.cut_weight},
                {"cut_fraction", res.cut.cut_fraction},
                {"certified_upper_bound", bound},
                {"ratio_lower_bound", bound > 0.0 ? res.cut.cut_fraction / bound : 0.0},
                {"depth", res.trace.depth},
                {"stop_reason", to_string(res.trace.stop_reason)},
                {"stop_rule", stop_rule},
                {"sparsify_first", sparsify_first},
                {"sides", sides_json(res.cut.side)}});
      if (!trace_path.empty()) {
        json t = trace_json(res.trace);
        t["schema"] = 1;
        write_file(trace_path, t.dump(2) + "\n");
      }
      emit(out, j);
    } else if (certify->parsed()) {
      const WeightedGraph g = read_graph(cert_c.input, cert_c.format, in, WeightMode::max_cut);
      if (cert_bound >= 0.0) cert_eps = 1.0 - cert_bound;
      const DualCertificate c = cert_eps >= 0.0 ? certify_upper_bound(g, cert_eps)
                                                : best_certificate(g);
      emit(out, {{"eps", c.eps},
                 {"upper_bound", c.upper_bound},
                 {"feasible", c.feasible},
                 {"psd_margin", c.psd_margin},
                 {"lambda_min", c.lambda_min},
                 {"dual_objective", c.dual_objective},
                 {"method", to_string(c.method)}});
    } else if (gain->parsed()) {
      const WeightedGraph g = read_graph(gain_c.input, gain_c.format, in, WeightMode::gain);
      if (gain_iterate) {
        const IteratedGainResult r = iterated_gain_cut(g, gain_c.seed, gain_opts);
        emit(out, {{"gain", r.gain},
                   {"rounds", r.rounds},
                   {"cut_fraction", r.cut.cut_fraction},
                   {"certificate", std::abs(std::min(0.0, estimate_lambda_min(g)))},
                   {"sides", sides_json(r.cut.side)}});
      } else {
        const GainResult r = four_threshold_spectral_cut(g, gain_c.seed, gain_opts);
        emit(out, {{"gain", r.gain},
                   {"support_size", r.y.support_size()},
                   {"eps_spectral", r.eps_spectral},
                   {"ell", r.ell},
                   {"certificate", r.lambda_bound},
                   {"thresholds", r.thresholds},
                   {"samples", r.samples},
                   {"measured_delta", r.measured_delta},
                   {"claim_bound", r.claim_bound},
                   {"fallback", r.fallback},
                   {"L", one_based(r.y.left())},
                   {"R", one_based(r.y.right())}});
      }
    } else if (sparsify_cmd->parsed()) {
      const WeightedGraph g = read_graph(sp_c.input, sp_c.format, in, WeightMode::max_cut);
      const WeightedGraph h = sparsify(g, {sp_c.delta, sp_oversample, sp_c.seed});
      std::ostringstream text;
      write_dimacs(text, h);
      if (sp_output.empty()) out << text.str();
      else write_file(sp_output, text.str());
    } else if (reduce_cmd->parsed()) {
      const WeightedGraph g = read_graph(red_c.input, red_c.format, in, WeightMode::max_cut);
      const ReductionArtifact art = reduce(g, red_c.delta, red_c.seed);
      json map{{"schema", 1},
               {"n", g.num_vertices()},
               {"copies", art.gprime.num_vertices()},
               {"copy_offsets", art.copy_offset},
               {"sample_count", art.sample_count},
               {"seed", art.seed},
               {"delta", art.delta}};
      write_file(red_map, map.dump(2) + "\n");
      std::ostringstream text;
      write_dimacs(text, art.gprime);
      if (red_output.empty()) out << text.str();
      else write_file(red_output, text.str());
    } else if (lift->parsed()) {
      if (lift_c.input == "-" && lift_cut_path == "-") {
        throw InputError("graph and cut cannot both come from stdin");
      }
      const WeightedGraph g = read_graph(lift_c.input, lift_c.format, in, WeightMode::max_cut);
      const json map = json::parse(read_text(lift_map, in));
      const auto offsets = map.at("copy_offsets").get<std::vector<std::size_t>>();
      const std::string cut_text = read_text(lift_cut_path, in);
      std::vector<std::uint8_t> side;
      const auto first = cut_text.find_first_not_of(" \t\r\n");
      if (first != std::string::npos && cut_text[first] == '{') {
        for (int s : json::parse(cut_text).at("sides").get<std::vector<int>>()) {
          side.push_back(s != 0);
        }
      } else {
        std::istringstream tokens(cut_text);
        int s;
        while (tokens >> s) side.push_back(s != 0);
        if (!tokens.eof()) throw InputError("cut file must hold 0/1 values");
      }
      const LiftResult r = lift_cut(offsets, g, side);
      emit(out, {{"cut_weight", r.cut.cut_weight},
                 {"cut_fraction", r.cut.cut_fraction},
                 {"start_expectation", r.start_expectation},
                 {"sides", sides_json(r.cut.side)}});
    } else if (bench->parsed()) {
      if (!fs::is_directory(bench_dir)) throw InputError("not a directory: '" + bench_dir + "'");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(bench_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end(),
                [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
      SolveOptions opts;
      opts.delta = bench_delta;
      opts.seed = bench_seed;
      opts.stop_rule = parse_stop_rule(bench_rule);
      if (!(opts.delta > 0.0 && opts.delta < 0.5)) {
        throw std::invalid_argument("delta must be in (0, 1/2)");
      }

      std::vector<BenchRow> rows(files.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
          rows[i] = bench_one(files[i], bench_format, opts);
        }
      };
      std::vector<std::thread> pool;
      const std::size_t threads = thread_count(bench_threads, files.size());
      for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();

      out << "file\tn\tm\tcut_fraction\tcertified_upper_bound\tratio\twall_ms\tdepth\n";
      double min_ratio = std::numeric_limits<double>::infinity();
      std::size_t errors = 0;
      for (const BenchRow& r : rows) {
        if (!r.ok) {
          ++errors;
          out << r.file << "\terror\t" << one_line(r.error) << '\n';
          continue;
        }
        min_ratio = std::min(min_ratio, r.ratio);
        out << r.file << '\t' << r.n << '\t' << r.m << '\t' << fmt(r.fraction) << '\t'
            << fmt(r.bound) << '\t' << fmt(r.ratio) << '\t'
            << (no_timing ? std::string("0") : fmt(r.wall_ms)) << '\t' << r.depth << '\n';
      }
      out << "# instances\t" << rows.size() - errors << '\n';
      out << "# errors\t" << errors << '\n';
      out << "# min_ratio\t" << (rows.size() > errors ? fmt(min_ratio) : std::string("nan"))
          << '\n';
    }
    return kOk;
  } catch (const ParseError& e) {
    return fail(kInputError, "parse_error", e.what(), e.line());
  } catch (const NoGainCertificate& e) {
    return fail(kNoGain, "no_gain_certificate", e.what());
  } catch (const json::exception& e) {
    return fail(kInputError, "invalid_json", e.what());
  } catch (const std::exception& e) {
    return fail(kInputError, "input_error", e.what());
  }
}

}  // namespace smc::cli
