#include <gtest/gtest.h>

#include <unordered_set>

#include "dspace/error.hpp"
#include "dspace/point.hpp"
#include "dspace/scalar.hpp"

using dspace::Point;
using dspace::Scalar;

TEST(Scalar, CanonicalForm) {
  const Scalar x(6, -4);
  EXPECT_EQ(x.str(), "-3/2");
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ(Scalar(10, 5).str(), "2");
  EXPECT_EQ(Scalar(0, 7).str(), "0");
}

TEST(Scalar, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(Scalar::parse("3/6"), Scalar(1, 2));
  EXPECT_EQ(Scalar::parse("-4"), Scalar(-4));
  EXPECT_EQ(Scalar::parse("+5/10").str(), "1/2");
  EXPECT_THROW(Scalar::parse("1/0"), dspace::ArgumentError);
  EXPECT_THROW(Scalar::parse("0.5"), dspace::ArgumentError);
  EXPECT_THROW(Scalar::parse("1/-2"), dspace::ArgumentError);
  EXPECT_THROW(Scalar::parse(""), dspace::ArgumentError);
}

TEST(Scalar, ExactArithmeticAndOrder) {
  const Scalar a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Scalar(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Scalar(1, 18));
  EXPECT_EQ(a / b, Scalar(2));
  EXPECT_THROW(a / Scalar(0), dspace::ArgumentError);
  EXPECT_LT(b, a);
  EXPECT_EQ(dspace::min(a, b), b);
  EXPECT_EQ(dspace::max(a, b), a);
  EXPECT_EQ(dspace::abs(b - a), b);
}

TEST(Scalar, DyadicIsExact) {
  EXPECT_EQ(Scalar::dyadic(0), Scalar(1));
  EXPECT_EQ(Scalar::dyadic(5), Scalar(1, 32));
  const Scalar tiny = Scalar::dyadic(200);
  EXPECT_EQ(tiny * Scalar(2), Scalar::dyadic(199));
  EXPECT_GT(tiny, Scalar(0));
}

TEST(Point, OrderAtomsThenNaturalsThenOrdinals) {
  const Point a = Point::atom("a", 0), b = Point::atom("b", 1);
  EXPECT_LT(a, b);
  EXPECT_LT(b, Point::nat(0));
  EXPECT_LT(Point::nat(1000), Point::ord(0, 0));
  EXPECT_LT(Point::ord(0, 99), Point::ord(1, 0));
  EXPECT_LT(Point::ord(1, 0), Point::ord(1, 1));
}

TEST(Point, LabelsAndDecomposition) {
  const Point alpha = Point::ord(3, 7);
  EXPECT_EQ(alpha.label(), "w*3+7");
  EXPECT_EQ(alpha.limit_index(), 3u);
  EXPECT_EQ(alpha.offset(), 7u);
  EXPECT_EQ(Point::nat(12).label(), "12");
  EXPECT_EQ(Point::atom("mu", 0).label(), "mu");
}

TEST(Point, StructuralEqualityAndHash) {
  std::unordered_set<Point> s{Point::nat(1), Point::nat(1), Point::ord(0, 1), Point::atom("x", 0)};
  EXPECT_EQ(s.size(), 3u);
  EXPECT_NE(Point::nat(1), Point::ord(0, 1));
}
