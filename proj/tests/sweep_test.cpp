#include <gtest/gtest.h>

#include <random>

#include "marker_tsp/oracle.hpp"
#include "marker_tsp/sweep.hpp"
#include "test_support.hpp"

using namespace marker_tsp;
namespace mt = marker_tsp::testing;

TEST(ConstructTour, PaperExample) {
  const auto d = mt::fixture8();
  const auto m = marker_from_edges(8, mt::fig2_edges());
  const auto r = construct_tour(d, m, SweepConfig{});
  EXPECT_EQ(r.tour.order(), mt::to_zero_based(mt::kPaperTour1));
  EXPECT_EQ(r.fallback_count, 0u);
  EXPECT_FALSE(check_successor_matrix(r.answer));
  // 1->2, 2->4, 4->3, 3->6, 6->7, 7->8, 8->5, 5->1
  const std::vector<std::pair<City, City>> arcs = {{1, 2}, {2, 4}, {4, 3}, {3, 6},
                                                    {6, 7}, {7, 8}, {8, 5}, {5, 1}};
  for (auto [p, q] : arcs) EXPECT_EQ(r.answer(p - 1, q - 1), 1);
}

TEST(ConstructTour, PaperExampleFailModeNeverTriggers) {
  SweepConfig cfg;
  cfg.fallback = Fallback::fail;
  const auto r = construct_tour(mt::fixture8(), marker_from_edges(8, mt::fig2_edges()), cfg);
  EXPECT_EQ(r.tour.order(), mt::to_zero_based(mt::kPaperTour1));
}

TEST(ConstructTour, TwoCities) {
  CostMatrix d{{0, 7}, {7, 0}};
  const auto r = construct_tour(d, complete_marker(2));
  EXPECT_EQ(r.tour.order(), (std::vector<City>{0, 1}));
  EXPECT_EQ(r.answer.dense(), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
}

TEST(ConstructTour, HamiltonianPathMarker) {
  CostMatrix d{{0, 1, 10, 10}, {1, 0, 1, 10}, {10, 1, 0, 1}, {10, 10, 1, 0}};
  const std::vector<std::pair<City, City>> path = {{0, 1}, {1, 2}, {2, 3}};
  const auto r = construct_tour(d, marker_from_edges(4, path));
  EXPECT_EQ(r.tour.order(), (std::vector<City>{0, 1, 2, 3}));
  EXPECT_EQ(r.fallback_count, 0u);
  EXPECT_EQ(r.answer(3, 0), 1);
}

TEST(ConstructTour, DeadEndUsesGlobalFallback) {
  // star marker around city 0: after 0 -> 1 the sweep is stuck at 1
  CostMatrix d{{0, 1, 2, 3}, {1, 0, 4, 5}, {2, 4, 0, 6}, {3, 5, 6, 0}};
  const std::vector<std::pair<City, City>> star = {{0, 1}, {0, 2}, {0, 3}};
  const auto m = marker_from_edges(4, star);
  const auto r = construct_tour(d, m);
  EXPECT_EQ(r.tour.order(), (std::vector<City>{0, 1, 2, 3}));
  EXPECT_EQ(r.fallback_count, 2u);

  SweepConfig fail;
  fail.fallback = Fallback::fail;
  try {
    construct_tour(d, m, fail);
    FAIL();
  } catch (const SweepStuck& e) {
    EXPECT_EQ(e.city(), 1u);
    EXPECT_EQ(e.visited(), 2u);
  }
}

TEST(ConstructTour, Errors) {
  CostMatrix d{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  EXPECT_THROW(construct_tour(d, complete_marker(4)), std::invalid_argument);
  SweepConfig cfg;
  cfg.start = 3;
  EXPECT_THROW(construct_tour(d, complete_marker(3), cfg), std::invalid_argument);
}

TEST(ConstructTour, StartIsHonored) {
  SweepConfig cfg;
  cfg.start = 4;
  const auto r = construct_tour(mt::fixture8(), marker_from_edges(8, mt::fig2_edges()), cfg);
  EXPECT_EQ(r.tour.front(), 4u);
}

TEST(BestOverStarts, TwoCities) {
  CostMatrix d{{0, 5}, {5, 0}};
  const auto r = construct_best_over_starts(d, complete_marker(2));
  EXPECT_EQ(r.best_start, 0u);
  EXPECT_EQ(r.per_start_costs, (std::vector<double>{10, 10}));
}

TEST(BestOverStarts, FixtureStartOneCostsTen) {
  const auto d = mt::fixture8();
  const auto r = construct_best_over_starts(d, marker_from_edges(8, mt::fig2_edges()));
  ASSERT_EQ(r.per_start_costs.size(), 8u);
  EXPECT_EQ(r.per_start_costs[0], 10.0);
  const double lo = *std::min_element(r.per_start_costs.begin(), r.per_start_costs.end());
  EXPECT_EQ(tour_length(r.best.tour, d), lo);
  EXPECT_EQ(r.per_start_costs[r.best_start], lo);
  for (City s = 0; s < r.best_start; ++s) EXPECT_GT(r.per_start_costs[s], lo);
}

TEST(SweepProperty, ValidCoherentDeterministic) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    const auto d = mt::random_integer_matrix(n, rng, 20);
    const std::size_t k = 1 + rng() % (n - 1);
    const auto m = build_marker_matrix(d, k);
    SweepConfig cfg;
    cfg.start = rng() % n;
    const auto r = construct_tour(d, m, cfg);
    ASSERT_EQ(r.tour.size(), n);
    ASSERT_EQ(r.tour.front(), cfg.start);
    ASSERT_FALSE(check_successor_matrix(r.answer));
    std::size_t ones = 0;
    for (City i = 0; i < n; ++i)
      for (City j = 0; j < n; ++j) ones += r.answer(i, j);
    ASSERT_EQ(ones, n);
    for (std::size_t t = 0; t < n; ++t) ASSERT_EQ(r.answer(r.tour[t], r.tour[(t + 1) % n]), 1);
    const auto again = construct_tour(d, m, cfg);
    ASSERT_EQ(again.tour, r.tour);
    ASSERT_EQ(again.fallback_count, r.fallback_count);
  }
}

TEST(SweepProperty, CompleteMarkerIsNearestNeighbor) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const auto d = trial % 2 ? mt::random_integer_matrix(n, rng, 5)
                             : build_cost_matrix(random_euclidean_instance(n, RngSeed{rng()}));
    const auto m = complete_marker(n);
    for (City s = 0; s < n; ++s) {
      SweepConfig cfg;
      cfg.start = s;
      const auto r = construct_tour(d, m, cfg);
      ASSERT_EQ(r.tour, nearest_neighbor_tour(d, s));
      ASSERT_EQ(r.fallback_count, 0u);
    }
  }
}
