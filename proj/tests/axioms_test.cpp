#include <gtest/gtest.h>

#include <random>

#include "dspace/axioms.hpp"
#include "dspace/error.hpp"
#include "dspace/gallery.hpp"
#include "oracles.hpp"

using namespace dspace;

namespace {

const Point P = Point::atom("p", 0), Q = Point::atom("q", 1), R = Point::atom("r", 2);

DistanceSpace single_point() {
  return DistanceSpace("single", Domain::finite({Point::atom("x", 0)}), [](const Point&, const Point&) {
    return Scalar(0);
  });
}

DistanceSpace two_point_metric() {
  return DistanceSpace("pair", Domain::finite({P, Q}),
                       [](const Point& x, const Point& y) { return x == y ? Scalar(0) : Scalar(1); });
}

Window whole(const DistanceSpace& s) { return enumerate(s, {}); }

}  // namespace

TEST(CoreAxioms, Example32SymmetryFailsAtZeroOne) {
  const auto g = example_3_2();
  const auto r = check_core_axioms(g.space, enumerate(g.space, {.nat_max = 8}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(r[0].holds());
  EXPECT_TRUE(r[1].holds());
  EXPECT_FALSE(r[2].holds());
  EXPECT_EQ(r[2].witness, (std::vector<Point>{Point::nat(0), Point::nat(1)}));
  ASSERT_EQ(r[2].evidence.size(), 2u);
  EXPECT_EQ(r[2].evidence[0].value, Scalar(1, 2));
  EXPECT_EQ(r[2].evidence[1].value, Scalar(1));
  EXPECT_TRUE(replay(g.space, r[2]));
}

TEST(CoreAxioms, Example31NonnegAndSeparationHold) {
  const auto g = example_3_1();
  const auto r = check_core_axioms(g.space, enumerate(g.space, {.nat_max = 8}));
  EXPECT_TRUE(r[0].holds());
  EXPECT_TRUE(r[1].holds());
  EXPECT_FALSE(r[2].holds());
}

TEST(CoreAxioms, SinglePointHoldsEverything) {
  const auto s = single_point();
  for (const auto& r : check_core_axioms(s, whole(s))) EXPECT_TRUE(r.holds());
}

TEST(CoreAxioms, MatrixVariantCatchesSeparationFailure) {
  // A matrix may be built from raw values; separation is checked there.
  const DistanceMatrix m(Window({P, Q}, "pq"), {Scalar(0), Scalar(0), Scalar(0), Scalar(0)});
  const auto r = check_core_axioms(m);
  EXPECT_TRUE(r[0].holds());
  EXPECT_FALSE(r[1].holds());
  EXPECT_EQ(r[1].witness, (std::vector<Point>{P, Q}));
}

TEST(Triangle, Example32HoldsWithExtremalAtMostOne) {
  const auto g = example_3_2();
  const auto r = check_triangle(g.space, enumerate(g.space, {.nat_max = 32}));
  EXPECT_TRUE(r.holds());
  ASSERT_TRUE(r.extremal);
  EXPECT_LE(*r.extremal, Scalar(1));
}

TEST(Triangle, Example34Holds) {
  const auto g = example_3_4(4, 12);
  EXPECT_TRUE(check_triangle(g.space, g.default_window()).holds());
}

TEST(Triangle, ThreePointFailsWithRatioFive) {
  const auto s = three_point_space();
  const auto r = check_triangle(s, whole(s));
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.witness, (std::vector<Point>{P, Q, R}));
  ASSERT_TRUE(r.extremal);
  EXPECT_EQ(*r.extremal, Scalar(5));
  EXPECT_TRUE(replay(s, r));
}

TEST(Triangle, MatchesNaiveOracleOnRandomSpaces) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto d = oracle::random_distance(rng, n);
    const auto m = oracle::matrix_of(d, n);
    const auto expect = oracle::naive_triangle(d, n);
    for (unsigned workers : {1u, 3u, 8u}) {
      const auto r = check_triangle(m, Exec{workers});
      EXPECT_EQ(r.holds(), !expect.first_violation) << "trial " << trial;
      if (expect.first_violation) {
        const auto& [x, y, z] = *expect.first_violation;
        EXPECT_EQ(r.witness, (std::vector<Point>{m.window()[x], m.window()[y], m.window()[z]}));
      }
      ASSERT_EQ(r.extremal.has_value(), expect.max_ratio.has_value()) << "trial " << trial;
      if (r.extremal) EXPECT_EQ(*r.extremal, *expect.max_ratio) << "trial " << trial;
    }
  }
}

TEST(RelaxedTriangle, ThreePointConstants) {
  const auto s = three_point_space();
  EXPECT_TRUE(check_relaxed_triangle(s, whole(s), Scalar(5), Scalar(2)).holds());
  const auto r = check_relaxed_triangle(s, whole(s), Scalar(4), Scalar(2));
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.witness, (std::vector<Point>{P, Q, R}));
  EXPECT_THROW(check_relaxed_triangle(s, whole(s), Scalar(1, 2), Scalar(2)), ArgumentError);
  EXPECT_THROW(check_relaxed_triangle(s, whole(s), Scalar(1), Scalar(0)), ArgumentError);
}

TEST(RelaxedTriangle, TriangleSpacesPassWithAOne) {
  const auto g = example_3_2();
  const auto w = enumerate(g.space, {.nat_max = 12});
  for (const auto& delta : {Scalar(1, 64), Scalar(1, 2), Scalar(3)}) {
    EXPECT_TRUE(check_relaxed_triangle(g.space, w, Scalar(1), delta).holds());
  }
}

TEST(NDistance, MetricGetsHalfEpsilon) {
  const auto s = dyadic_control().space;
  const std::vector<Scalar> grid{Scalar(1, 2), Scalar(1, 4), Scalar(1, 8), Scalar(1, 16)};
  const Window w = whole(s);
  for (const auto& x : w.points()) {
    const auto r = check_N(s, w, x, Scalar(1, 4), grid);
    EXPECT_TRUE(r.holds());
    ASSERT_TRUE(r.extremal);
    EXPECT_GE(*r.extremal, Scalar(1, 8));
  }
}

TEST(NDistance, Example32ReturnsGridDelta) {
  const auto g = example_3_2();
  const auto w = enumerate(g.space, {.nat_max = 16});
  const auto r = check_N(g.space, w, Point::nat(0), Scalar(1, 4), default_delta_grid());
  EXPECT_TRUE(r.holds());
  ASSERT_TRUE(r.extremal);
  EXPECT_GE(*r.extremal, Scalar(1, 8));
}

TEST(NDistance, DegenerateWindowGivesLargestDelta) {
  const auto s = single_point();
  const auto r = check_N(s, whole(s), Point::atom("x", 0), Scalar(1, 4), default_delta_grid());
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(*r.extremal, Scalar(1, 2));
}

TEST(NDistance, FailsWhenNoGridDeltaWorks) {
  // d(p,q) = 0 and d(q,r) = 0 but d(p,r) = 1: no delta escapes.
  const auto s = DistanceSpace("chain", Domain::finite({P, Q, R}), [](const Point& x, const Point& y) {
    if (x == y) return Scalar(0);
    if ((x == P && y == Q) || (x == Q && y == R)) return Scalar(0);
    return Scalar(1);
  });
  const auto r = check_N(s, whole(s), P, Scalar(1, 2), default_delta_grid());
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.witness, (std::vector<Point>{P, Q, R}));
  EXPECT_TRUE(replay(s, r));
}

TEST(NDistance, RejectsBadGrids) {
  const auto s = two_point_metric();
  EXPECT_THROW(check_N(s, whole(s), P, Scalar(1), {}), ArgumentError);
  EXPECT_THROW(check_N(s, whole(s), P, Scalar(1), {Scalar(1, 4), Scalar(1, 2)}), ArgumentError);
  EXPECT_THROW(check_N(s, whole(s), P, Scalar(1), {Scalar(0)}), ArgumentError);
}

TEST(NDistance, TriangleImpliesHalfEpsilonOnRandomQuasimetrics) {
  // Shortest-path closure of a random distance is a quasimetric on the window.
  std::mt19937_64 rng(7);
  const std::vector<Scalar> grid{Scalar(1), Scalar(1, 2), Scalar(1, 4), Scalar(1, 8)};
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 4;
    auto d = oracle::random_distance(rng, n, 0);
    std::vector<Scalar> closed(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) closed[i * n + j] = oracle::brute_chain_min(d, n, i, j, n);
    }
    const auto m = oracle::matrix_of(closed, n);
    ASSERT_TRUE(check_triangle(m).holds());
    for (const auto& x : m.window().points()) {
      const auto r = check_N(m, x, Scalar(1, 2), grid);
      EXPECT_TRUE(r.holds());
      EXPECT_GE(*r.extremal, Scalar(1, 4));
    }
  }
}

TEST(FDistance, MetricAndSinglePoint) {
  const auto s = dyadic_control().space;
  const std::vector<Scalar> grid{Scalar(1, 2), Scalar(1, 4), Scalar(1, 8)};
  const auto r = check_F(s, whole(s), Scalar(1, 4), grid);
  EXPECT_TRUE(r.holds());
  EXPECT_GE(*r.extremal, Scalar(1, 8));
  const auto one = single_point();
  EXPECT_EQ(*check_F(one, whole(one), Scalar(1, 4), grid).extremal, Scalar(1, 2));
}

TEST(FDistance, Example31IsMinOfPointwiseDeltas) {
  const auto g = example_3_1();
  const auto w = enumerate(g.space, {.nat_max = 20});
  const auto grid = default_delta_grid();
  const auto f = check_F(g.space, w, Scalar(1, 2), grid, Exec{4});
  ASSERT_TRUE(f.holds());
  std::optional<Scalar> least;
  for (const auto& x : w.points()) {
    const auto r = check_N(g.space, w, x, Scalar(1, 2), grid);
    ASSERT_TRUE(r.holds());
    if (!least || *r.extremal < *least) least = *r.extremal;
  }
  EXPECT_EQ(*f.extremal, *least);
  EXPECT_EQ(f, check_F(g.space, w, Scalar(1, 2), grid, Exec{1}));
}

TEST(HDistance, Example31DecaysWithWindow) {
  const auto g = example_3_1();
  const Point a = Point::atom("a", 0), b = Point::atom("b", 1);
  const auto r = check_H(g.space, enumerate(g.space, {.nat_max = 20}), a, b);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(*r.extremal, Scalar::dyadic(19));
  EXPECT_EQ(r.witness.back(), Point::nat(20));
  // the profile is non-increasing and ends at the extremal
  for (std::size_t i = 1; i < r.profile.size(); ++i) EXPECT_LE(r.profile[i], r.profile[i - 1]);
  EXPECT_EQ(r.profile.back(), *r.extremal);
}

TEST(HDistance, Example32AndPairMetric) {
  const auto g = example_3_2();
  const auto r = check_H(g.space, enumerate(g.space, {.nat_max = 20}), Point::nat(0), Point::nat(1));
  EXPECT_EQ(*r.extremal, Scalar(2) * Scalar::dyadic(20));
  EXPECT_EQ(r.witness.back(), Point::nat(20));
  const auto s = two_point_metric();
  EXPECT_EQ(*check_H(s, whole(s), P, Q).extremal, Scalar(1));
  EXPECT_THROW(check_H(s, whole(s), P, P), ArgumentError);
}

TEST(HDistance, ZeroMinimumFails) {
  const auto s = zero_cycle_space();
  const auto r = check_H(s, whole(s), P, Q);
  // d(p,r) + d(q,r) = 0 + 1, d(p,p) + d(q,p) = 0 + 0
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.witness.back(), P);
}

TEST(Monotonicity, EnlargingWindowOnlyBreaksVerdicts) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 7;
    const auto d = oracle::random_distance(rng, n);
    const auto big = oracle::matrix_of(d, n);
    const auto big_tri = check_triangle(big);
    for (std::size_t k = 2; k < n; ++k) {
      std::vector<Scalar> sub;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub.push_back(d[i * n + j]);
      }
      const auto small = oracle::matrix_of(sub, k);
      if (!check_triangle(small).holds()) EXPECT_FALSE(big_tri.holds());
      EXPECT_GE(*check_H(small, small.window()[0], small.window()[1]).extremal,
                *check_H(big, big.window()[0], big.window()[1]).extremal);
    }
  }
}
