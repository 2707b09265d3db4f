#include <gtest/gtest.h>

#include "dspace/dynamics.hpp"
#include "dspace/error.hpp"
#include "dspace/gallery.hpp"

using namespace dspace;

namespace {

std::vector<Point> nats(std::initializer_list<std::uint64_t> xs) {
  std::vector<Point> v;
  for (auto x : xs) v.push_back(Point::nat(x));
  return v;
}

SelfMap identity() {
  return {"id", [](const Point& p) { return p; }};
}

}  // namespace

TEST(Picard, Example32) {
  const auto g = example_3_2();
  const auto t = picard_orbit(g.space, g.map, Point::nat(0), 4);
  EXPECT_EQ(t.points, nats({0, 1, 2, 3, 4}));
  EXPECT_EQ(t.gaps, (std::vector<Scalar>{Scalar(1, 2), Scalar(1, 4), Scalar(1, 8), Scalar(1, 16)}));
  EXPECT_EQ(t.horizon, 4u);
}

TEST(Picard, Example33Gaps) {
  const auto g = example_3_3();
  const auto t = picard_orbit(g.space, g.map, Point::nat(1), 5);
  EXPECT_EQ(t.gaps, (std::vector<Scalar>{Scalar(1, 2), Scalar(1, 3), Scalar(1, 4), Scalar(1, 5), Scalar(1, 6)}));
}

TEST(Picard, FixedStartIsConstant) {
  const auto s = three_point_space();
  const auto t = picard_orbit(s, identity(), Point::atom("q", 1), 6);
  for (const auto& p : t.points) EXPECT_EQ(p, Point::atom("q", 1));
  for (const auto& gap : t.gaps) EXPECT_TRUE(gap.is_zero());
}

TEST(Picard, Errors) {
  const auto g = example_3_3(1);
  // the domain ends one interval past the window
  EXPECT_THROW(picard_orbit(g.space, g.map, Point::nat(1), 100000), DomainError);
  EXPECT_THROW(picard_orbit(g.space, g.map, Point::nat(1), 0), ArgumentError);
  EXPECT_THROW(picard_orbit(g.space, g.map, Point::nat(0), 3), DomainError);
}

TEST(Convergence, Example32NonUniqueLimitsNoDislocated) {
  const auto g = example_3_2();
  const auto t = picard_orbit(g.space, g.map, Point::nat(0), 64);
  const auto v = analyze_convergence(g.space, t, g.default_window(), Scalar::dyadic(20), 32);
  EXPECT_TRUE(v.cauchy);
  EXPECT_GE(v.limits.size(), 2u);
  // d(m, x_n) = 2^-x_n for x_n != m, so every point well below the tail is a limit
  EXPECT_EQ(v.limits.front(), Point::nat(0));
  EXPECT_TRUE(v.dislocated_limits.empty());
  EXPECT_TRUE(v.gaps_vanish);
  for (const auto& d : v.dislocated_limits) {
    EXPECT_NE(std::find(v.limits.begin(), v.limits.end(), d), v.limits.end());
  }
}

TEST(Convergence, Example31LimitsAAndB) {
  const auto g = example_3_1();
  const auto t = picard_orbit(g.space, g.map, Point::nat(1), 64);
  const auto v = analyze_convergence(g.space, t, g.default_window(), Scalar::dyadic(20), 32);
  EXPECT_TRUE(v.cauchy);
  EXPECT_NE(std::find(v.limits.begin(), v.limits.end(), Point::atom("a", 0)), v.limits.end());
  EXPECT_NE(std::find(v.limits.begin(), v.limits.end(), Point::atom("b", 1)), v.limits.end());
  EXPECT_TRUE(v.dislocated_limits.empty());
}

TEST(Convergence, ConstantTraceAtFixedPoint) {
  const auto g = example_3_3();
  const Point mu = Point::atom("mu", 0);
  const auto t = picard_orbit(g.space, g.map, mu, 16);
  const auto v = analyze_convergence(g.space, t, g.default_window(), Scalar::dyadic(20), 8);
  EXPECT_TRUE(v.cauchy);
  EXPECT_EQ(v.limits, std::vector<Point>{mu});
  EXPECT_EQ(v.dislocated_limits, std::vector<Point>{mu});
  EXPECT_EQ(v.accumulation, std::vector<Point>{mu});
}

TEST(Convergence, Preconditions) {
  const auto g = example_3_2();
  const auto t = picard_orbit(g.space, g.map, Point::nat(0), 8);
  EXPECT_THROW(analyze_convergence(g.space, t, g.default_window(), Scalar(1, 4), 8), ArgumentError);
  EXPECT_THROW(analyze_convergence(g.space, t, g.default_window(), Scalar(0), 4), ArgumentError);
}

TEST(Convergence, DefaultLadder) {
  EXPECT_EQ(default_ladder(32, 64), (std::vector<std::size_t>{32, 48, 56}));
  EXPECT_EQ(default_ladder(3, 4), (std::vector<std::size_t>{3, 4}));
}

TEST(Lipschitz, Examples) {
  const auto g32 = example_3_2();
  const auto l32 = lipschitz_estimate(g32.space, g32.map, enumerate(g32.space, {.nat_max = 32}));
  EXPECT_EQ(l32.value, Scalar(1, 2));
  EXPECT_EQ(l32.x, Point::nat(0));
  EXPECT_EQ(l32.y, Point::nat(1));

  const auto g34 = example_3_4();
  EXPECT_LT(lipschitz_estimate(g34.space, g34.map, g34.default_window(), Exec{4}).value, Scalar(1));

  const auto s = three_point_space();
  EXPECT_EQ(lipschitz_estimate(s, identity(), enumerate(s, {})).value, Scalar(1));
}

TEST(Lipschitz, Errors) {
  const auto s = DistanceSpace("single", Domain::finite({Point::atom("x", 0)}),
                               [](const Point&, const Point&) { return Scalar(0); });
  EXPECT_THROW(lipschitz_estimate(s, identity(), enumerate(s, {})), ArgumentError);
}

TEST(Lipschitz, WorkerCountDoesNotMatter) {
  const auto g = example_3_3(2);
  const auto w = g.default_window();
  const auto a = lipschitz_estimate(g.space, g.map, w, Exec{1});
  const auto b = lipschitz_estimate(g.space, g.map, w, Exec{8});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(Lipschitz, MatrixOverloadMatchesWhenImagesLeaveTheWindow) {
  const auto g = example_3_2();
  const auto w = enumerate(g.space, {.nat_max = 12});
  const auto m = DistanceMatrix::materialize(g.space, w);
  const auto a = lipschitz_estimate(g.space, g.map, w);
  const auto b = lipschitz_estimate(g.space, g.map, m);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(Convergence, MatrixOverloadMatchesWhenTheOrbitLeavesTheWindow) {
  for (const auto& id : {"3.1", "3.2"}) {
    const auto g = gallery_instance(id);
    const auto w = enumerate(g.space, {.nat_max = 16});
    const auto t = picard_orbit(g.space, g.map, g.defaults.start, 40);
    const auto a = analyze_convergence(g.space, t, w, Scalar::dyadic(10), 20);
    const auto b = analyze_convergence(g.space, t, DistanceMatrix::materialize(g.space, w), Scalar::dyadic(10), 20);
    EXPECT_EQ(a.cauchy_max, b.cauchy_max) << id;
    EXPECT_EQ(a.limits, b.limits) << id;
    EXPECT_EQ(a.dislocated_limits, b.dislocated_limits) << id;
    EXPECT_EQ(a.accumulation, b.accumulation) << id;
    EXPECT_EQ(a.unresolved, b.unresolved) << id;
  }
}

TEST(FixedPoints, Examples) {
  const auto g32 = example_3_2();
  const auto r32 = fixed_and_periodic_points(g32.space, g32.map, g32.default_window(), 4);
  EXPECT_TRUE(r32.fixed.empty());
  EXPECT_TRUE(r32.periodic.empty());

  const auto g33 = example_3_3();
  const auto r33 = fixed_and_periodic_points(g33.space, g33.map, g33.default_window(), 4);
  EXPECT_EQ(r33.fixed, (std::vector<Point>{Point::atom("mu", 0), Point::atom("nu", 1)}));

  const auto g31 = example_3_1();
  const auto r31 = fixed_and_periodic_points(g31.space, g31.map, g31.default_window(), 4);
  EXPECT_TRUE(r31.fixed.empty());
  EXPECT_EQ(r31.non_fixed_periodic(),
            (std::vector<PeriodicPoint>{{Point::atom("a", 0), 2}, {Point::atom("b", 1), 2}}));
  EXPECT_THROW(fixed_and_periodic_points(g31.space, g31.map, g31.default_window(), 0), ArgumentError);
}
