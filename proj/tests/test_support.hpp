#pragma once

// Fixtures and brute-force oracles shared by the test binaries. Nothing here
// calls into the code under test beyond its value types.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "marker_tsp/instance.hpp"
#include "marker_tsp/tour.hpp"

namespace marker_tsp::testing {

// The eight-city example graph, 1-based edge list.
inline const std::vector<std::pair<City, City>> kFig2Edges1 = {
    {1, 2}, {1, 5}, {1, 8}, {2, 3}, {2, 4}, {3, 4}, {3, 6},
    {4, 5}, {5, 6}, {5, 7}, {5, 8}, {6, 7}, {7, 8}};

inline std::vector<std::pair<City, City>> fig2_edges() {
  std::vector<std::pair<City, City>> e;
  for (auto [a, b] : kFig2Edges1) e.emplace_back(a - 1, b - 1);
  return e;
}

// Initial marker matrix, row by row as printed with the example.
inline const std::vector<std::vector<int>> kFig2Matrix = {
    {0, 1, 0, 0, 1, 0, 0, 1}, {1, 0, 1, 1, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 1, 0, 0},
    {0, 1, 1, 0, 1, 0, 0, 0}, {1, 0, 0, 1, 0, 1, 1, 1}, {0, 0, 1, 0, 1, 0, 1, 0},
    {0, 0, 0, 0, 1, 1, 0, 1}, {1, 0, 0, 0, 1, 0, 1, 0}};

// Distances for the eight-city fixture: short edges on marked pairs, 10
// elsewhere. Chosen so each greedy step lands on the published tour.
inline CostMatrix fixture8() {
  const std::vector<std::pair<std::pair<int, int>, double>> w = {
      {{1, 2}, 1}, {{1, 5}, 3}, {{1, 8}, 2}, {{2, 3}, 2}, {{2, 4}, 1}, {{4, 3}, 1}, {{4, 5}, 2},
      {{3, 6}, 1}, {{6, 5}, 2}, {{6, 7}, 1}, {{7, 5}, 2}, {{7, 8}, 1}, {{8, 5}, 1}};
  std::vector<double> d(64, 10.0);
  for (int i = 0; i < 8; ++i) d[i * 8 + i] = 0;
  for (auto [e, v] : w) {
    const int a = e.first - 1, b = e.second - 1;
    d[a * 8 + b] = d[b * 8 + a] = v;
  }
  return CostMatrix(8, d);
}

// Published tour, 1-based.
inline const std::vector<City> kPaperTour1 = {1, 2, 4, 3, 6, 7, 8, 5};

inline std::vector<City> to_zero_based(const std::vector<City>& one) {
  std::vector<City> z;
  for (City c : one) z.push_back(c - 1);
  return z;
}

inline Instance unit_square(WeightKind kind = WeightKind::euc2d_exact) {
  return Instance::from_coords("square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, kind);
}

inline Instance line4() {
  return Instance::from_coords("line", {{0, 0}, {1, 0}, {2, 0}, {3, 0}}, WeightKind::euc2d_exact);
}

// Every cyclic order, no start fixing, no symmetry reduction.
template <class D>
double brute_force_optimum(const D& d) {
  std::vector<City> p(d.size());
  std::iota(p.begin(), p.end(), City{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0;
    for (std::size_t t = 0; t < p.size(); ++t) len += d(p[t], p[(t + 1) % p.size()]);
    best = std::min(best, len);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Full sort of each row; a[i][j] = 1 if either endpoint ranks the other in
// its first k.
template <class D>
std::vector<std::vector<int>> brute_force_knn(const D& d, std::size_t k) {
  const std::size_t n = d.size();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (City i = 0; i < n; ++i) {
    std::vector<City> others;
    for (City j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    std::stable_sort(others.begin(), others.end(),
                     [&](City x, City y) { return d(i, x) < d(i, y); });
    for (std::size_t t = 0; t < k; ++t) a[i][others[t]] = a[others[t]][i] = 1;
  }
  return a;
}

inline CostMatrix random_integer_matrix(std::size_t n, std::mt19937_64& rng, int max_w = 100) {
  std::uniform_int_distribution<int> w(0, max_w);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = w(rng);
  return CostMatrix(n, d);
}

inline std::vector<City> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<City> p(n);
  std::iota(p.begin(), p.end(), City{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace marker_tsp::testing
