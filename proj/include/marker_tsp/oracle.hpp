#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "marker_tsp/instance.hpp"
#include "marker_tsp/tour.hpp"
#include "marker_tsp/tour_cost.hpp"

namespace marker_tsp {

inline constexpr std::size_t kHeldKarpLimit = 15;
inline constexpr std::size_t kEnumerationLimit = 10;

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class OracleMethod { enumeration, held_karp };

inline const char* to_string(OracleMethod m) {
  return m == OracleMethod::enumeration ? "ENUMERATION" : "HELD_KARP";
}

struct OracleResult {
  double optimal_cost = 0.0;
  Tour optimal_tour;
  OracleMethod method;
};

/// Classic nearest-neighbor construction over the full distance matrix.
template <DistanceSource D>
Tour nearest_neighbor_tour(const D& d, City start) {
  const std::size_t n = d.size();
  if (start >= n) throw std::out_of_range("start city " + std::to_string(start) + " out of range");
  std::vector<bool> visited(n, false);
  std::vector<City> order{start};
  visited[start] = true;
  City current = start;
  for (std::size_t step = 1; step < n; ++step) {
    City best = n;
    for (City j = 0; j < n; ++j) {
      if (visited[j]) continue;
      if (best == n || d(current, j) < d(current, best)) best = j;
    }
    visited[best] = true;
    order.push_back(best);
    current = best;
  }
  return Tour(std::move(order));
}

/// Tries every order that starts at city 0, in lexicographic order.
template <DistanceSource D>
OracleResult enumerate_optimal(const D& d) {
  const std::size_t n = d.size();
  if (n > kEnumerationLimit)
    throw CapacityError("enumeration limited to n <= " + std::to_string(kEnumerationLimit) +
                        ", got " + std::to_string(n));
  if (n < 2) throw std::invalid_argument("oracle needs n >= 2");
  std::vector<City> order(n);
  std::iota(order.begin(), order.end(), City{0});
  std::vector<City> best_order = order;
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    for (std::size_t t = 0; t < n; ++t) len += d(order[t], order[(t + 1) % n]);
    if (len < best) {
      best = len;
      best_order = order;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return OracleResult{best, Tour(std::move(best_order)), OracleMethod::enumeration};
}

/*
 * Held-Karp over subsets of cities 1..n-1. rest[mask][j] is the cheapest way
 * to leave j, visit every city not in mask, and return to 0 (j in mask).
 * Filling it backwards lets the forward reconstruction take the smallest
 * next city at each step, which yields the lexicographically smallest
 * optimal order.
 */
template <DistanceSource D>
OracleResult held_karp(const D& d) {
  const std::size_t n = d.size();
  if (n > kHeldKarpLimit)
    throw CapacityError("Held-Karp limited to n <= " + std::to_string(kHeldKarpLimit) + ", got " +
                        std::to_string(n));
  if (n < 2) throw std::invalid_argument("oracle needs n >= 2");

  const std::size_t m = n - 1;  // bit b <-> city b + 1
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> rest(static_cast<std::size_t>(full + 1) * m, kInf);
  auto at = [&](std::uint32_t mask, std::size_t b) -> double& { return rest[mask * m + b]; };

  for (std::size_t b = 0; b < m; ++b) at(full, b) = d(b + 1, 0);
  for (std::uint32_t mask = full; mask-- > 1;) {
    for (std::size_t b = 0; b < m; ++b) {
      if (!(mask >> b & 1u)) continue;
      double best = kInf;
      for (std::size_t c = 0; c < m; ++c) {
        if (mask >> c & 1u) continue;
        best = std::min(best, d(b + 1, c + 1) + at(mask | (1u << c), c));
      }
      at(mask, b) = best;
    }
  }

  double best = kInf;
  for (std::size_t c = 0; c < m; ++c) best = std::min(best, d(0, c + 1) + at(1u << c, c));

  std::vector<City> order{0};
  std::uint32_t mask = 0;
  double target = best;
  City current = 0;
  while (mask != full) {
    for (std::size_t c = 0; c < m; ++c) {
      if (mask >> c & 1u) continue;
      const std::uint32_t next = mask | (1u << c);
      if (d(current, c + 1) + at(next, c) == target) {
        mask = next;
        target = at(next, c);
        current = c + 1;
        order.push_back(current);
        break;
      }
    }
  }
  Tour tour(std::move(order));
  const double cost = tour_length(tour, d);
  return OracleResult{cost, std::move(tour), OracleMethod::held_karp};
}

template <DistanceSource D>
OracleResult exact_optimal(const D& d, std::size_t limit = kHeldKarpLimit,
                           OracleMethod method = OracleMethod::held_karp) {
  if (d.size() > limit)
    throw CapacityError("exact oracle limited to n <= " + std::to_string(limit) + ", got " +
                        std::to_string(d.size()));
  return method == OracleMethod::enumeration ? enumerate_optimal(d) : held_karp(d);
}

}  // namespace marker_tsp
