#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "marker_tsp/instance.hpp"
#include "marker_tsp/marker.hpp"
#include "marker_tsp/report.hpp"
#include "marker_tsp/sweep.hpp"
#include "marker_tsp/tour_cost.hpp"
#include "marker_tsp/tsplib.hpp"

// Command-line front end: solve | bench | gen | check.

namespace marker_tsp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSweepFail = 2, kInternal = 3 };

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FileError("failed writing '" + path + "'");
}

inline Instance load_instance(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  try {
    Instance inst = parse_instance(read_file(path), &warnings);
    for (const auto& w : warnings) err << path << ": warning: " << w << "\n";
    return inst;
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

/// Edge list, one "i j" pair of 1-based cities per line; '#' starts a comment.
inline MarkerMatrix parse_edge_list(const std::string& text, std::size_t n) {
  std::vector<std::pair<City, City>> edges;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long i = 0, j = 0;
    if (!(fields >> i)) continue;
    if (!(fields >> j)) throw ParseError(lineno, "edge line needs two city indices");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
      throw ParseError(lineno, "edge city outside 1.." + std::to_string(n));
    edges.emplace_back(static_cast<City>(i - 1), static_cast<City>(j - 1));
  }
  try {
    return marker_from_edges(n, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

inline std::string format_solve(const SolveReport& r) {
  std::ostringstream o;
  o << "instance        " << r.instance_name << "\n";
  o << "cities          " << r.n << "\n";
  o << "neighbors (k)   " << (r.k ? std::to_string(r.k) : std::string("edge list")) << "\n";
  o << "start           " << r.start + 1 << "\n";
  o << "tour           ";
  for (City c : r.tour.order()) o << ' ' << c + 1;
  o << "\n";
  o.precision(12);
  o << "cost            " << r.cost << "\n";
  o << "cost (D . A)    " << r.cost_via_matrix << "\n";
  o << "fallbacks       " << r.fallback_count << "\n";
  o << "nn baseline     " << r.baseline_nn_cost << "\n";
  if (r.optimal_cost) {
    o << "optimal         " << *r.optimal_cost << "\n";
    o << "ratio           " << *r.ratio_to_optimal << "\n";
  }
  return o.str();
}

inline Fallback parse_fallback(const std::string& s) {
  return s == "fail" ? Fallback::fail : Fallback::nearest_unvisited_global;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Marker-method TSP construction heuristic"};
  app.require_subcommand(1);

  std::size_t k = 3;
  std::size_t start1 = 1;
  bool all_starts = false;
  std::string fallback = "global";
  std::uint64_t seed = 0;
  std::string report_path, tour_out;

  auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--k", k, "Nearest neighbors marked per city (clamped to n-1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--start", start1, "Start city, 1-based")->check(CLI::PositiveNumber);
    cmd->add_flag("--all-starts", all_starts, "Try every start city and keep the best tour");
    cmd->add_option("--fallback", fallback, "Dead-end handling")
        ->check(CLI::IsMember({"global", "fail"}));
    cmd->add_option("--report", report_path, "Write a structured JSON report here");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Build a tour for one instance");
  std::string instance_path, edges_path;
  solve_cmd->add_option("instance", instance_path, "TSPLIB instance file")->required();
  solve_cmd->add_option("--edges", edges_path, "Marker edge list (overrides --k)");
  solve_cmd->add_option("--tour-out", tour_out, "Write the tour in TSPLIB .tour format");
  add_sweep_flags(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Run the heuristic over many instances");
  std::vector<std::string> bench_files;
  std::size_t gen_count = 0, n_min = 10, n_max = 0;
  bool timings = false;
  bench_cmd->add_option("files", bench_files, "TSPLIB instance files");
  bench_cmd->add_option("--count", gen_count, "Number of generated instances");
  bench_cmd->add_option("--n", n_min, "Generated instance size (or lower bound with --n-max)");
  bench_cmd->add_option("--n-max", n_max, "Upper bound on generated instance size");
  bench_cmd->add_option("--seed", seed, "Generator seed");
  bench_cmd->add_flag("--timings", timings, "Include per-phase timings in the report");
  add_sweep_flags(bench_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Write a random EUC_2D instance");
  std::size_t gen_n = 0;
  double box = 1000.0;
  std::string gen_out, gen_name;
  gen_cmd->add_option("--n", gen_n, "Number of cities")->required();
  gen_cmd->add_option("--seed", seed, "Generator seed")->required();
  gen_cmd->add_option("--box", box, "Side of the square the points are drawn from");
  gen_cmd->add_option("--name", gen_name, "Instance NAME");
  gen_cmd->add_option("-o,--output", gen_out, "Output file (stdout if omitted)");

  auto* check_cmd = app.add_subcommand("check", "Validate a tour file against an instance");
  std::string check_tour, check_instance;
  check_cmd->add_option("tour", check_tour, "TSPLIB .tour file")->required();
  check_cmd->add_option("instance", check_instance, "TSPLIB instance file")->required();

  std::vector<const char*> argv{"marker_tsp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  auto options = [&] {
    SolveOptions o;
    o.k = k;
    o.start = start1 - 1;
    o.all_starts = all_starts;
    o.fallback = parse_fallback(fallback);
    return o;
  };

  try {
    if (*solve_cmd) {
      const Instance inst = load_instance(instance_path, err);
      SolveOptions o = options();
      if (!edges_path.empty()) o.marker_override = parse_edge_list(read_file(edges_path), inst.size());
      const SolveReport r = solve(inst, o);
      out << format_solve(r);
      if (!report_path.empty()) write_file(report_path, to_json(r).dump() + "\n");
      if (!tour_out.empty()) write_file(tour_out, write_tour(r.tour, inst.name()));
      return kOk;
    }
    if (*bench_cmd) {
      std::vector<BenchCase> cases;
      for (const auto& f : bench_files)
        cases.push_back({f, [f, &err] { return load_instance(f, err); }});
      if (gen_count > 0) {
        auto gen = generated_cases(gen_count, n_min, n_max ? n_max : n_min, seed);
        cases.insert(cases.end(), gen.begin(), gen.end());
      }
      if (cases.empty()) {
        err << "bench: no instances (give files or --count)\n";
        return kUsage;
      }
      const BenchResult b = run_bench(std::move(cases), options());
      out << format_bench_table(b);
      if (!report_path.empty()) write_file(report_path, format_bench_ndjson(b, timings));
      return b.failures ? kUsage : kOk;
    }
    if (*gen_cmd) {
      const Instance inst = random_euclidean_instance(gen_n, RngSeed{seed}, box, gen_name);
      const std::string text = render_instance(inst);
      if (gen_out.empty()) out << text;
      else write_file(gen_out, text);
      return kOk;
    }
    if (*check_cmd) {
      const Instance inst = load_instance(check_instance, err);
      Tour tour = [&] {
        try {
          return parse_tour(read_file(check_tour), inst.size());
        } catch (const ParseError& e) {
          const std::string what = e.defect() ? to_string(*e.defect()) : "malformed tour file";
          throw std::runtime_error("invalid tour (" + what + "): " + e.what());
        }
      }();
      std::ostringstream cost;
      cost.precision(12);
      cost << tour_length(tour, InstanceMetric(inst));
      out << "valid tour, " << tour.size() << " cities, cost " << cost.str() << "\n";
      return kOk;
    }
  } catch (const SweepStuck& e) {
    err << "error: " << e.what() << "\n";
    return kSweepFail;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace marker_tsp::cli
