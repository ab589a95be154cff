#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "marker_tsp/oracle.hpp"
#include "marker_tsp/sweep.hpp"
#include "test_support.hpp"

using namespace marker_tsp;
namespace mt = marker_tsp::testing;

TEST(ExactOptimal, UnitSquareIsPerimeter) {
  const auto d = build_cost_matrix(mt::unit_square());
  ASSERT_DOUBLE_EQ(mt::brute_force_optimum(d), 4.0);
  const auto hk = exact_optimal(d);
  EXPECT_DOUBLE_EQ(hk.optimal_cost, 4.0);
  EXPECT_EQ(hk.method, OracleMethod::held_karp);
  EXPECT_EQ(hk.optimal_tour.order(), (std::vector<City>{0, 1, 2, 3}));
  const auto en = exact_optimal(d, 10, OracleMethod::enumeration);
  EXPECT_DOUBLE_EQ(en.optimal_cost, 4.0);
  EXPECT_EQ(en.optimal_tour.order(), (std::vector<City>{0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(tour_length(Tour({0, 2, 1, 3}), d), 2 + 2 * std::sqrt(2.0));  // crossing
}

TEST(ExactOptimal, TriangleEveryOrderEqual) {
  CostMatrix d{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  EXPECT_EQ(held_karp(d).optimal_cost, 6.0);
  EXPECT_EQ(enumerate_optimal(d).optimal_cost, 6.0);
  EXPECT_EQ(tour_length(Tour({0, 2, 1}), d), 6.0);
}

TEST(ExactOptimal, CollinearOutAndBack) {
  const auto d = build_cost_matrix(mt::line4());
  ASSERT_DOUBLE_EQ(mt::brute_force_optimum(d), 6.0);
  EXPECT_DOUBLE_EQ(held_karp(d).optimal_cost, 6.0);
  EXPECT_DOUBLE_EQ(enumerate_optimal(d).optimal_cost, 6.0);
}

TEST(ExactOptimal, TwoCities) {
  CostMatrix d{{0, 4}, {4, 0}};
  EXPECT_EQ(held_karp(d).optimal_cost, 8.0);
  EXPECT_EQ(held_karp(d).optimal_tour.order(), (std::vector<City>{0, 1}));
}

TEST(ExactOptimal, CapacityLimits) {
  const auto d16 = build_cost_matrix(random_euclidean_instance(16, RngSeed{1}));
  EXPECT_THROW(held_karp(d16), CapacityError);
  EXPECT_THROW(exact_optimal(d16), CapacityError);
  const auto d11 = build_cost_matrix(random_euclidean_instance(11, RngSeed{1}));
  EXPECT_THROW(enumerate_optimal(d11), CapacityError);
  EXPECT_THROW(exact_optimal(d11, 10), CapacityError);
  EXPECT_NO_THROW(exact_optimal(d11));
}

TEST(ExactOptimal, LexSmallestAmongOptima) {
  // all tours cost the same; lexicographically first is the identity
  CostMatrix d(5, std::vector<double>{0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1,
                                      1, 1, 1, 0, 1, 1, 1, 1, 1, 0});
  EXPECT_EQ(held_karp(d).optimal_tour.order(), (std::vector<City>{0, 1, 2, 3, 4}));
  EXPECT_EQ(enumerate_optimal(d).optimal_tour.order(), (std::vector<City>{0, 1, 2, 3, 4}));
}

TEST(HeldKarp, AgreesWithEnumerationAndBruteForce) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 7;  // 3..9
    const auto d = mt::random_integer_matrix(n, rng, 50);
    const auto hk = held_karp(d);
    const auto en = enumerate_optimal(d);
    ASSERT_EQ(hk.optimal_cost, en.optimal_cost) << "n=" << n;
    ASSERT_EQ(hk.optimal_tour, en.optimal_tour) << "n=" << n;
    ASSERT_EQ(hk.optimal_cost, tour_length(hk.optimal_tour, d));
    if (n <= 8) {
      ASSERT_EQ(hk.optimal_cost, mt::brute_force_optimum(d));
    }
  }
}

TEST(NearestNeighbor, TwoCities) {
  CostMatrix d{{0, 3}, {3, 0}};
  EXPECT_EQ(nearest_neighbor_tour(d, 1).order(), (std::vector<City>{1, 0}));
  EXPECT_THROW(nearest_neighbor_tour(d, 2), std::out_of_range);
}

TEST(NearestNeighbor, FixtureMatchesPaperTour) {
  EXPECT_EQ(nearest_neighbor_tour(mt::fixture8(), 0).order(), mt::to_zero_based(mt::kPaperTour1));
}

TEST(OracleProperty, DominatesMarkerTour) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng() % 9;
    const auto d = build_cost_matrix(random_euclidean_instance(n, RngSeed{rng()}));
    const auto opt = held_karp(d).optimal_cost;
    const auto m = build_marker_matrix(d, 1 + rng() % (n - 1));
    const auto r = construct_tour(d, m);
    ASSERT_LE(opt, tour_length(r.tour, d) * (1 + 1e-9));
  }
}
