#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace marker_tsp {

using City = std::size_t;

// Anything that answers d(i, j) for 0 <= i, j < size(). The dense CostMatrix
// and the on-demand InstanceMetric both model it.
template <class D>
concept DistanceSource = requires(const D& d, City i, City j) {
  { d.size() } -> std::convertible_to<std::size_t>;
  { d(i, j) } -> std::convertible_to<double>;
};

enum class WeightKind { euc2d_rounded, euc2d_exact, explicit_matrix };

inline const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::euc2d_rounded: return "EUC_2D_ROUNDED";
    case WeightKind::euc2d_exact: return "EUC_2D_EXACT";
    case WeightKind::explicit_matrix: return "EXPLICIT";
  }
  return "?";
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Dense n x n symmetric distance matrix with zero diagonal and nonnegative
/// entries. Validated on construction and immutable afterwards.
class CostMatrix {
 public:
  CostMatrix() = default;

  CostMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), d_(std::move(entries)) {
    if (d_.size() != n_ * n_)
      throw std::invalid_argument("cost matrix: expected " + std::to_string(n_ * n_) +
                                  " entries, got " + std::to_string(d_.size()));
    for (std::size_t i = 0; i < n_; ++i) {
      if (d_[i * n_ + i] != 0.0)
        throw std::invalid_argument("cost matrix: nonzero diagonal at " + std::to_string(i));
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = d_[i * n_ + j];
        if (!(v >= 0.0) || !std::isfinite(v))
          throw std::invalid_argument("cost matrix: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is negative or not finite");
        if (v != d_[j * n_ + i])
          throw std::invalid_argument("cost matrix: asymmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
      }
    }
  }

  CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : CostMatrix(rows.size(), flatten(rows)) {}

  std::size_t size() const { return n_; }
  double operator()(City i, City j) const { return d_[i * n_ + j]; }
  const std::vector<double>& entries() const { return d_; }

  double at(City i, City j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("cost matrix index out of range");
    return (*this)(i, j);
  }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  static std::vector<double> flatten(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<double> out;
    for (const auto& row : rows) {
      if (row.size() != rows.size())
        throw std::invalid_argument("cost matrix: ragged row");
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }

  std::size_t n_ = 0;
  std::vector<double> d_;
};

static_assert(DistanceSource<CostMatrix>);

/// A named symmetric TSP instance: either planar coordinates or an explicit
/// weight matrix.
class Instance {
 public:
  static Instance from_coords(std::string name, std::vector<Point> coords,
                              WeightKind kind = WeightKind::euc2d_rounded) {
    if (kind == WeightKind::explicit_matrix)
      throw std::invalid_argument("coordinate instance cannot use EXPLICIT weights");
    if (coords.size() < 2)
      throw std::invalid_argument("instance needs at least 2 cities");
    for (const auto& p : coords)
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("instance coordinates must be finite");
    Instance inst;
    inst.name_ = std::move(name);
    inst.kind_ = kind;
    inst.payload_ = std::move(coords);
    return inst;
  }

  static Instance from_matrix(std::string name, CostMatrix matrix) {
    if (matrix.size() < 2)
      throw std::invalid_argument("instance needs at least 2 cities");
    Instance inst;
    inst.name_ = std::move(name);
    inst.kind_ = WeightKind::explicit_matrix;
    inst.payload_ = std::move(matrix);
    return inst;
  }

  const std::string& name() const { return name_; }
  WeightKind kind() const { return kind_; }

  std::size_t size() const {
    if (const auto* c = std::get_if<std::vector<Point>>(&payload_)) return c->size();
    return std::get<CostMatrix>(payload_).size();
  }

  bool has_coords() const { return std::holds_alternative<std::vector<Point>>(payload_); }
  const std::vector<Point>& coords() const { return std::get<std::vector<Point>>(payload_); }
  const CostMatrix& matrix() const { return std::get<CostMatrix>(payload_); }

  // Unchecked; callers validate indices.
  double weight(City i, City j) const {
    if (kind_ == WeightKind::explicit_matrix) return std::get<CostMatrix>(payload_)(i, j);
    const auto& c = std::get<std::vector<Point>>(payload_);
    const double dx = c[i].x - c[j].x;
    const double dy = c[i].y - c[j].y;
    const double e = std::sqrt(dx * dx + dy * dy);
    // TSPLIB nint
    return kind_ == WeightKind::euc2d_rounded ? std::floor(e + 0.5) : e;
  }

 private:
  Instance() = default;

  std::string name_;
  WeightKind kind_ = WeightKind::euc2d_rounded;
  std::variant<std::vector<Point>, CostMatrix> payload_;
};

inline double distance(const Instance& inst, City i, City j) {
  if (i >= inst.size() || j >= inst.size())
    throw std::out_of_range("city index out of range: (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") for n=" + std::to_string(inst.size()));
  return inst.weight(i, j);
}

/// Distances computed on demand from an instance; no n x n storage.
class InstanceMetric {
 public:
  explicit InstanceMetric(const Instance& inst) : inst_(&inst) {}
  std::size_t size() const { return inst_->size(); }
  double operator()(City i, City j) const { return inst_->weight(i, j); }

 private:
  const Instance* inst_;
};

static_assert(DistanceSource<InstanceMetric>);

inline CostMatrix build_cost_matrix(const Instance& inst) {
  if (inst.kind() == WeightKind::explicit_matrix) return inst.matrix();
  const std::size_t n = inst.size();
  std::vector<double> d(n * n, 0.0);
  for (City i = 0; i < n; ++i)
    for (City j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = inst.weight(i, j);
  return CostMatrix(n, std::move(d));
}

struct RngSeed {
  std::uint64_t value = 0;
};

namespace detail {

// splitmix64; portable across standard libraries, unlike the <random>
// distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace detail

/// n points uniform in [0, box]^2 with exact Euclidean weights.
inline Instance random_euclidean_instance(std::size_t n, RngSeed seed, double box = 1000.0,
                                          std::string name = {}) {
  if (n < 2) throw std::invalid_argument("random instance needs n >= 2");
  if (!(box > 0.0) || !std::isfinite(box))
    throw std::invalid_argument("random instance needs a positive box side");
  detail::SplitMix64 rng(seed.value);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.unit() * box;
    p.y = rng.unit() * box;
  }
  if (name.empty()) name = "rand" + std::to_string(n) + "_s" + std::to_string(seed.value);
  return Instance::from_coords(std::move(name), std::move(pts), WeightKind::euc2d_exact);
}

}  // namespace marker_tsp
