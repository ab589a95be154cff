#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "marker_tsp/instance.hpp"
#include "marker_tsp/marker.hpp"
#include "marker_tsp/oracle.hpp"
#include "marker_tsp/sweep.hpp"
#include "marker_tsp/tour.hpp"
#include "marker_tsp/tour_cost.hpp"

namespace marker_tsp {

// Above this size the pipeline reads distances on demand instead of
// materializing an n x n matrix.
inline constexpr std::size_t kDenseMatrixLimit = 4096;

/// A post-condition of the pipeline failed (the two cost routes disagree, or
/// the answer matrix is not a single cycle).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolveOptions {
  std::size_t k = 3;  // clamped to n-1
  City start = 0;
  bool all_starts = false;
  Fallback fallback = Fallback::nearest_unvisited_global;
  std::optional<MarkerMatrix> marker_override;
  std::size_t oracle_limit = kHeldKarpLimit;
};

struct PhaseTimings {
  double cost_matrix_ms = 0;
  double marker_ms = 0;
  double sweep_ms = 0;
  double evaluate_ms = 0;
  double baseline_ms = 0;
  double oracle_ms = 0;
};

struct SolveReport {
  std::string instance_name;
  std::size_t n = 0;
  std::size_t k = 0;  // 0 when the marker matrix came from an edge list
  City start = 0;
  Tour tour;
  double cost = 0;
  double cost_via_matrix = 0;
  std::size_t fallback_count = 0;
  double baseline_nn_cost = 0;
  std::optional<double> optimal_cost;
  std::optional<double> ratio_to_optimal;
  std::vector<double> per_start_costs;  // filled in all-starts mode
  PhaseTimings elapsed_ms;
};

namespace detail {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <DistanceSource D>
SolveReport solve_with(const Instance& inst, const D& d, const SolveOptions& opt, Stopwatch& clock,
                       PhaseTimings t) {
  const std::size_t n = inst.size();
  if (opt.start >= n)
    throw std::invalid_argument("start city " + std::to_string(opt.start + 1) + " outside 1.." +
                                std::to_string(n));
  std::size_t k = 0;
  MarkerMatrix marker;
  if (opt.marker_override) {
    if (opt.marker_override->size() != n)
      throw std::invalid_argument("marker edge list is for " +
                                  std::to_string(opt.marker_override->size()) +
                                  " cities, instance has " + std::to_string(n));
    marker = *opt.marker_override;
  } else {
    k = std::clamp<std::size_t>(opt.k, 1, n - 1);
    marker = build_marker_matrix(d, k);
  }
  t.marker_ms = clock.lap();

  SweepConfig cfg;
  cfg.start = opt.start;
  cfg.fallback = opt.fallback;
  cfg.try_all_starts = opt.all_starts;
  std::vector<double> per_start;
  City start = opt.start;
  std::optional<SweepResult> sweep;
  if (opt.all_starts) {
    auto multi = construct_best_over_starts(d, marker, cfg);
    start = multi.best_start;
    per_start = std::move(multi.per_start_costs);
    sweep = std::move(multi.best);
  } else {
    sweep = construct_tour(d, marker, cfg);
  }
  t.sweep_ms = clock.lap();

  const double by_path = tour_length(sweep->tour, d);
  const double by_matrix = marker_tsp::cost_via_matrix(sweep->answer, d);
  if (!costs_agree(by_path, by_matrix))
    throw InvariantViolation("tour length " + std::to_string(by_path) +
                             " disagrees with matrix cost " + std::to_string(by_matrix));
  t.evaluate_ms = clock.lap();

  const double nn = tour_length(nearest_neighbor_tour(d, start), d);
  t.baseline_ms = clock.lap();

  std::optional<double> optimal, ratio;
  if (n <= opt.oracle_limit && n <= kHeldKarpLimit) {
    optimal = held_karp(d).optimal_cost;
    if (by_path + 1e-9 * std::max(1.0, by_path) < *optimal)
      throw InvariantViolation("heuristic tour beats the exact optimum");
    ratio = *optimal > 0 ? std::max(1.0, by_path / *optimal) : 1.0;
  }
  t.oracle_ms = clock.lap();

  return SolveReport{inst.name(), n,         k,     start, std::move(sweep->tour), by_path, by_matrix,
                     sweep->fallback_count,  nn,    optimal, ratio, std::move(per_start), t};
}

}  // namespace detail

/// parse output -> cost matrix -> marker matrix -> sweep -> both cost
/// evaluations, plus the nearest-neighbor baseline and (small n) the exact
/// optimum.
inline SolveReport solve(const Instance& inst, const SolveOptions& opt = {}) {
  detail::Stopwatch clock;
  PhaseTimings t;
  if (inst.size() <= kDenseMatrixLimit) {
    const CostMatrix d = build_cost_matrix(inst);
    t.cost_matrix_ms = clock.lap();
    return detail::solve_with(inst, d, opt, clock, t);
  }
  return detail::solve_with(inst, InstanceMetric(inst), opt, clock, t);
}

inline nlohmann::ordered_json to_json(const SolveReport& r, bool with_timings = true) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance_name;
  j["n"] = r.n;
  j["k"] = r.k;
  j["start"] = r.start + 1;
  std::vector<std::size_t> tour;
  tour.reserve(r.tour.size());
  for (City c : r.tour.order()) tour.push_back(c + 1);
  j["tour"] = tour;
  j["cost"] = r.cost;
  j["cost_via_matrix"] = r.cost_via_matrix;
  j["fallback_count"] = r.fallback_count;
  j["baseline_nn_cost"] = r.baseline_nn_cost;
  j["ratio_to_nn"] = r.baseline_nn_cost > 0 ? r.cost / r.baseline_nn_cost : 1.0;
  if (r.optimal_cost) j["optimal_cost"] = *r.optimal_cost;
  if (r.ratio_to_optimal) j["ratio_to_optimal"] = *r.ratio_to_optimal;
  if (!r.per_start_costs.empty()) j["per_start_costs"] = r.per_start_costs;
  if (with_timings) {
    const auto& t = r.elapsed_ms;
    j["elapsed_ms"] = {{"cost_matrix", t.cost_matrix_ms}, {"marker", t.marker_ms},
                       {"sweep", t.sweep_ms},             {"evaluate", t.evaluate_ms},
                       {"baseline", t.baseline_ms},       {"oracle", t.oracle_ms}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Batch benchmarking

struct BenchCase {
  std::string name;
  std::function<Instance()> load;
};

struct BenchRow {
  std::string name;
  std::optional<SolveReport> report;
  std::string error;
};

struct RatioStats {
  std::size_t count = 0;
  double min = 0, mean = 0, max = 0;

  void add(double v) {
    min = count ? std::min(min, v) : v;
    max = count ? std::max(max, v) : v;
    mean += (v - mean) / static_cast<double>(++count);
  }
};

struct BenchResult {
  std::vector<BenchRow> rows;  // ordered by instance name
  std::size_t failures = 0;
  RatioStats ratio_to_nn;
  RatioStats ratio_to_optimal;
};

inline BenchResult run_bench(std::vector<BenchCase> cases, const SolveOptions& opt) {
  std::stable_sort(cases.begin(), cases.end(),
                   [](const BenchCase& a, const BenchCase& b) { return a.name < b.name; });
  BenchResult out;
  for (auto& c : cases) {
    BenchRow row{c.name, std::nullopt, {}};
    try {
      const Instance inst = c.load();
      SolveOptions o = opt;
      if (o.start >= inst.size()) o.start = 0;
      row.report = solve(inst, o);
      const auto& r = *row.report;
      out.ratio_to_nn.add(r.baseline_nn_cost > 0 ? r.cost / r.baseline_nn_cost : 1.0);
      if (r.ratio_to_optimal) out.ratio_to_optimal.add(*r.ratio_to_optimal);
    } catch (const std::exception& e) {
      row.error = e.what();
      ++out.failures;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// `count` uniform instances with n drawn from [n_min, n_max]; a pure
/// function of the arguments.
inline std::vector<BenchCase> generated_cases(std::size_t count, std::size_t n_min,
                                              std::size_t n_max, std::uint64_t seed,
                                              double box = 1000.0) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("bad generator size range");
  detail::SplitMix64 rng(seed);
  std::vector<BenchCase> cases;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = n_min + rng.next() % (n_max - n_min + 1);
    const RngSeed s{rng.next()};
    char name[64];
    std::snprintf(name, sizeof name, "gen-%llu-%04zu", static_cast<unsigned long long>(seed), i);
    std::string nm = name;
    cases.push_back({nm, [=] { return random_euclidean_instance(n, s, box, nm); }});
  }
  return cases;
}

inline std::string format_bench_table(const BenchResult& b) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %6s %4s %14s %14s %14s %9s %9s %6s\n", "instance", "n", "k",
                "marker", "nn", "optimal", "vs_nn", "vs_opt", "fallbk");
  out += line;
  for (const auto& row : b.rows) {
    if (!row.report) {
      out += row.name + "  ERROR: " + row.error + "\n";
      continue;
    }
    const auto& r = *row.report;
    char opt[32] = "-", ropt[32] = "-";
    if (r.optimal_cost) std::snprintf(opt, sizeof opt, "%.3f", *r.optimal_cost);
    if (r.ratio_to_optimal) std::snprintf(ropt, sizeof ropt, "%.4f", *r.ratio_to_optimal);
    std::snprintf(line, sizeof line, "%-24s %6zu %4zu %14.3f %14.3f %14s %9.4f %9s %6zu\n",
                  r.instance_name.c_str(), r.n, r.k, r.cost, r.baseline_nn_cost, opt,
                  r.baseline_nn_cost > 0 ? r.cost / r.baseline_nn_cost : 1.0, ropt,
                  r.fallback_count);
    out += line;
  }
  std::snprintf(line, sizeof line,
                "instances %zu  failures %zu  vs_nn mean %.4f max %.4f  vs_opt (%zu) min %.4f mean %.4f max %.4f\n",
                b.rows.size(), b.failures, b.ratio_to_nn.mean, b.ratio_to_nn.max,
                b.ratio_to_optimal.count, b.ratio_to_optimal.min, b.ratio_to_optimal.mean,
                b.ratio_to_optimal.max);
  out += line;
  return out;
}

/// One JSON record per line, then a summary record.
inline std::string format_bench_ndjson(const BenchResult& b, bool with_timings = false) {
  std::string out;
  for (const auto& row : b.rows) {
    nlohmann::ordered_json j;
    if (row.report) j = to_json(*row.report, with_timings);
    else j = {{"instance", row.name}, {"error", row.error}};
    out += j.dump() + "\n";
  }
  auto stats = [](const RatioStats& s) {
    return nlohmann::ordered_json{{"count", s.count}, {"min", s.min}, {"mean", s.mean}, {"max", s.max}};
  };
  nlohmann::ordered_json summary;
  summary["summary"] = {{"instances", b.rows.size()},
                        {"failures", b.failures},
                        {"ratio_to_nn", stats(b.ratio_to_nn)},
                        {"ratio_to_optimal", stats(b.ratio_to_optimal)}};
  out += summary.dump() + "\n";
  return out;
}

}  // namespace marker_tsp
