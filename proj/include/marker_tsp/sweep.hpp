#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "marker_tsp/instance.hpp"
#include "marker_tsp/marker.hpp"
#include "marker_tsp/tour.hpp"
#include "marker_tsp/tour_cost.hpp"

namespace marker_tsp {

enum class TieRule { lowest_index };

enum class Fallback {
  nearest_unvisited_global,  // step to the globally nearest unvisited city
  fail,                      // throw SweepStuck
};

struct SweepConfig {
  City start = 0;
  TieRule tie_rule = TieRule::lowest_index;
  Fallback fallback = Fallback::nearest_unvisited_global;
  bool try_all_starts = false;
};

/// Raised under Fallback::fail when the current city has no unvisited
/// marked candidate.
class SweepStuck : public std::runtime_error {
 public:
  SweepStuck(City city, std::size_t visited)
      : std::runtime_error("sweep stuck at city " + std::to_string(city) + " after visiting " +
                           std::to_string(visited) + " cities"),
        city_(city),
        visited_(visited) {}

  City city() const { return city_; }
  std::size_t visited() const { return visited_; }

 private:
  City city_;
  std::size_t visited_;
};

struct SweepResult {
  Tour tour;
  SuccessorMatrix answer;
  std::size_t fallback_count = 0;
};

/*
 * Greedy row sweep over the marker matrix. From the current city, keep the
 * nearest marked candidate that is still unvisited and discard the rest;
 * move there and repeat. After n-1 moves the tour closes back to the start,
 * whether or not that pair is marked.
 *
 * The marker matrix is read, never modified: a visited set stands in for
 * zeroing the rows that have been consumed.
 */
template <DistanceSource D>
SweepResult construct_tour(const D& d, const MarkerMatrix& m, const SweepConfig& cfg = {}) {
  const std::size_t n = d.size();
  if (m.size() != n)
    throw std::invalid_argument("marker matrix is " + std::to_string(m.size()) +
                                " cities, distance matrix is " + std::to_string(n));
  if (n < 2) throw std::invalid_argument("sweep needs n >= 2");
  if (cfg.start >= n)
    throw std::invalid_argument("start city " + std::to_string(cfg.start) + " out of range");

  // unvisited[0, remaining) holds the open cities; where[c] is c's slot.
  std::vector<City> unvisited(n);
  std::vector<std::size_t> where(n);
  for (City c = 0; c < n; ++c) unvisited[c] = where[c] = c;
  std::size_t remaining = n;
  constexpr std::size_t kVisited = std::numeric_limits<std::size_t>::max();
  auto visit = [&](City c) {
    const std::size_t slot = where[c];
    const City last = unvisited[--remaining];
    unvisited[slot] = last;
    where[last] = slot;
    where[c] = kVisited;
  };

  std::vector<City> order;
  order.reserve(n);
  order.push_back(cfg.start);
  visit(cfg.start);
  std::size_t fallbacks = 0;
  City current = cfg.start;

  while (remaining > 0) {
    City best = n;
    double best_d = 0.0;
    for (City j : m.candidates(current)) {
      if (where[j] == kVisited) continue;
      const double dj = d(current, j);
      // candidates are ascending, so strict < keeps the lowest index on ties
      if (best == n || dj < best_d) {
        best = j;
        best_d = dj;
      }
    }
    if (best == n) {
      if (cfg.fallback == Fallback::fail) throw SweepStuck(current, order.size());
      ++fallbacks;
      for (std::size_t s = 0; s < remaining; ++s) {
        const City j = unvisited[s];
        const double dj = d(current, j);
        if (best == n || dj < best_d || (dj == best_d && j < best)) {
          best = j;
          best_d = dj;
        }
      }
    }
    order.push_back(best);
    visit(best);
    current = best;
  }

  Tour tour(std::move(order));
  SuccessorMatrix answer(tour);
  return SweepResult{std::move(tour), std::move(answer), fallbacks};
}

struct MultiStartResult {
  SweepResult best;
  City best_start = 0;
  std::vector<double> per_start_costs;
};

/// Runs the sweep from every start city and keeps the cheapest tour; equal
/// costs go to the lower start index.
template <DistanceSource D>
MultiStartResult construct_best_over_starts(const D& d, const MarkerMatrix& m,
                                            const SweepConfig& cfg = {}) {
  const std::size_t n = d.size();
  std::vector<double> costs;
  costs.reserve(n);
  std::optional<SweepResult> best;
  City best_start = 0;
  for (City s = 0; s < n; ++s) {
    SweepConfig c = cfg;
    c.start = s;
    c.try_all_starts = false;
    SweepResult r = construct_tour(d, m, c);
    const double cost = tour_length(r.tour, d);
    costs.push_back(cost);
    if (!best || cost < costs[best_start]) {
      best = std::move(r);
      best_start = s;
    }
  }
  return MultiStartResult{std::move(*best), best_start, std::move(costs)};
}

}  // namespace marker_tsp
