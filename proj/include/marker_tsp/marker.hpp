#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "marker_tsp/instance.hpp"

namespace marker_tsp {

/*
 * Symmetric 0/1 near-neighbor matrix. a(i, j) = 1 marks j as a candidate
 * successor of i. The diagonal is zero and every row holds at least one 1.
 *
 * Rows are stored as sorted candidate lists, so a marker matrix for a large
 * instance costs O(n k) memory rather than n^2.
 */
class MarkerMatrix {
 public:
  std::size_t size() const { return rows_.size(); }

  int operator()(City i, City j) const {
    const auto& r = rows_[i];
    return std::binary_search(r.begin(), r.end(), j) ? 1 : 0;
  }

  /// Marked columns of row i in ascending order.
  std::span<const City> candidates(City i) const { return rows_[i]; }
  std::size_t row_sum(City i) const { return rows_[i].size(); }

  std::vector<std::vector<int>> dense() const {
    std::vector<std::vector<int>> a(size(), std::vector<int>(size(), 0));
    for (City i = 0; i < size(); ++i)
      for (City j : rows_[i]) a[i][j] = 1;
    return a;
  }

  friend bool operator==(const MarkerMatrix&, const MarkerMatrix&) = default;

  // Takes possibly one-sided, unsorted arcs; symmetrizes by union.
  static MarkerMatrix from_arcs(std::size_t n, std::span<const std::pair<City, City>> arcs) {
    MarkerMatrix m;
    m.rows_.assign(n, {});
    for (auto [i, j] : arcs) {
      if (i >= n || j >= n)
        throw std::invalid_argument("marker arc (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") out of range for n=" + std::to_string(n));
      if (i == j) throw std::invalid_argument("marker self-loop at " + std::to_string(i));
      m.rows_[i].push_back(j);
      m.rows_[j].push_back(i);
    }
    for (City i = 0; i < n; ++i) {
      auto& r = m.rows_[i];
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      if (r.empty()) throw std::invalid_argument("city " + std::to_string(i) + " is isolated");
    }
    return m;
  }

 private:
  std::vector<std::vector<City>> rows_;
};

/// Marks j for i when j is among the k nearest cities of i, or i among the k
/// nearest of j. Equal distances are ordered by lower city index.
template <DistanceSource D>
MarkerMatrix build_marker_matrix(const D& d, std::size_t k) {
  const std::size_t n = d.size();
  if (n < 2) throw std::invalid_argument("marker matrix needs n >= 2");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("neighbor count k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(n - 1) + "]");

  std::vector<std::pair<City, City>> arcs;
  arcs.reserve(n * k);
  std::vector<std::pair<double, City>> row;
  row.reserve(n - 1);
  for (City i = 0; i < n; ++i) {
    row.clear();
    for (City j = 0; j < n; ++j)
      if (j != i) row.emplace_back(d(i, j), j);
    if (k < row.size())
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    for (std::size_t t = 0; t < k; ++t) arcs.emplace_back(i, row[t].second);
  }
  return MarkerMatrix::from_arcs(n, arcs);
}

/// Marker matrix straight from an undirected edge list (0-based).
inline MarkerMatrix marker_from_edges(std::size_t n, std::span<const std::pair<City, City>> edges) {
  if (n < 2) throw std::invalid_argument("marker matrix needs n >= 2");
  return MarkerMatrix::from_arcs(n, edges);
}

inline MarkerMatrix complete_marker(std::size_t n) {
  std::vector<std::pair<City, City>> edges;
  for (City i = 0; i < n; ++i)
    for (City j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return marker_from_edges(n, edges);
}

}  // namespace marker_tsp
