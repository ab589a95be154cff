#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "marker_tsp/instance.hpp"
#include "marker_tsp/tour.hpp"

namespace marker_tsp {

/// Sum of the n tour edges, closing edge included.
template <DistanceSource D>
double tour_length(const Tour& t, const D& d) {
  const std::size_t n = t.size();
  if (n != d.size()) throw std::invalid_argument("tour and distance matrix differ in size");
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) total += d(t[s], t[(s + 1) % n]);
  return total;
}

/// Frobenius inner product sum_ij d(i,j) * a(i,j). With a successor matrix
/// every directed tour edge contributes once, so this is the tour cost.
template <class Matrix, DistanceSource D>
double cost_via_matrix(const Matrix& a, const D& d) {
  const std::size_t n = a.size();
  if (n != d.size()) throw std::invalid_argument("answer and distance matrix differ in size");
  double total = 0.0;
  for (City i = 0; i < n; ++i)
    for (City j = 0; j < n; ++j) total += d(i, j) * a(i, j);
  return total;
}

/// Exact equality when both values are whole numbers, relative 1e-9 otherwise.
inline bool costs_agree(double a, double b, double rel_tol = 1e-9) {
  if (a == std::floor(a) && b == std::floor(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace marker_tsp
