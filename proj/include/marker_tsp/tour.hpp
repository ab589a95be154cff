#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "marker_tsp/instance.hpp"

namespace marker_tsp {

enum class TourDefect { too_small, count_mismatch, index_out_of_range, duplicate_city, missing_city };

inline const char* to_string(TourDefect defect) {
  switch (defect) {
    case TourDefect::too_small: return "tour needs at least 2 cities";
    case TourDefect::count_mismatch: return "count mismatch";
    case TourDefect::index_out_of_range: return "city index out of range";
    case TourDefect::duplicate_city: return "duplicate city";
    case TourDefect::missing_city: return "missing city";
  }
  return "?";
}

struct TourViolation {
  TourDefect defect;
  std::string detail;
};

/// Checks that `order` is a permutation of 0..n-1 with n >= 2. Reports the
/// first violation found, count problems before per-entry problems.
inline std::optional<TourViolation> check_order(std::span<const City> order, std::size_t n) {
  if (n < 2) return TourViolation{TourDefect::too_small, "n=" + std::to_string(n)};
  std::vector<bool> seen(n, false);
  for (std::size_t t = 0; t < order.size(); ++t) {
    const City c = order[t];
    if (c >= n)
      return TourViolation{TourDefect::index_out_of_range,
                           "entry " + std::to_string(t) + " is " + std::to_string(c) +
                               ", n=" + std::to_string(n)};
    if (seen[c])
      return TourViolation{TourDefect::duplicate_city,
                           "city " + std::to_string(c) + " at entry " + std::to_string(t)};
    seen[c] = true;
  }
  if (order.size() != n)
    return TourViolation{TourDefect::count_mismatch, "expected " + std::to_string(n) +
                                                         " cities, got " +
                                                         std::to_string(order.size())};
  for (City c = 0; c < n; ++c)
    if (!seen[c]) return TourViolation{TourDefect::missing_city, "city " + std::to_string(c)};
  return std::nullopt;
}

/// A Hamiltonian cycle given as a visiting order; the last city returns to the
/// first.
class Tour {
 public:
  explicit Tour(std::vector<City> order) : order_(std::move(order)) {
    if (auto v = check_order(order_, order_.size()))
      throw std::invalid_argument(std::string("invalid tour: ") + to_string(v->defect) + " (" +
                                  v->detail + ")");
  }

  std::size_t size() const { return order_.size(); }
  City operator[](std::size_t t) const { return order_[t]; }
  const std::vector<City>& order() const { return order_; }
  City front() const { return order_.front(); }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<City> order_;
};

/// The 0/1 "answer" matrix with a(p, q) = 1 iff the tour moves from p to q.
/// Stored as the successor permutation; entries are read through operator().
class SuccessorMatrix {
 public:
  explicit SuccessorMatrix(const Tour& tour) : succ_(tour.size()) {
    const std::size_t n = tour.size();
    for (std::size_t t = 0; t < n; ++t) succ_[tour[t]] = tour[(t + 1) % n];
  }

  std::size_t size() const { return succ_.size(); }
  int operator()(City i, City j) const { return succ_[i] == j ? 1 : 0; }
  City successor(City i) const { return succ_[i]; }

  std::vector<std::vector<int>> dense() const {
    std::vector<std::vector<int>> a(size(), std::vector<int>(size(), 0));
    for (City i = 0; i < size(); ++i) a[i][succ_[i]] = 1;
    return a;
  }

  friend bool operator==(const SuccessorMatrix&, const SuccessorMatrix&) = default;

 private:
  std::vector<City> succ_;
};

/// Row sums, column sums, zero diagonal and single n-cycle, read entry by
/// entry through the matrix interface. Returns the violated condition or
/// nullopt.
template <class Matrix>
std::optional<std::string> check_successor_matrix(const Matrix& a) {
  const std::size_t n = a.size();
  if (n < 2) return "matrix smaller than 2x2";
  std::vector<int> col(n, 0);
  std::vector<City> next(n, n);
  for (City i = 0; i < n; ++i) {
    int row = 0;
    for (City j = 0; j < n; ++j) {
      const int v = a(i, j);
      if (v != 0 && v != 1) return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") not 0/1";
      if (v == 1) {
        ++row;
        ++col[j];
        next[i] = j;
      }
    }
    if (a(i, i) != 0) return "nonzero diagonal at " + std::to_string(i);
    if (row != 1) return "row " + std::to_string(i) + " has " + std::to_string(row) + " ones";
  }
  for (City j = 0; j < n; ++j)
    if (col[j] != 1) return "column " + std::to_string(j) + " has " + std::to_string(col[j]) + " ones";
  std::size_t len = 0;
  City c = 0;
  do {
    c = next[c];
    ++len;
  } while (c != 0 && len <= n);
  if (len != n) return "subtour of length " + std::to_string(len);
  return std::nullopt;
}

}  // namespace marker_tsp
