#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dspace/point.hpp"
#include "dspace/scalar.hpp"
#include "dspace/window.hpp"

namespace dspace {

/// Shape of the underlying set of a distance space.
class Domain {
 public:
  enum class Kind { Finite, Naturals, NaturalsPlusAtoms, OrdinalGrid };

  /// An explicit finite set; points are sorted and must be distinct.
  static Domain finite(std::vector<Point> points);
  /// {first, first+1, ...}, optionally capped at `last`.
  static Domain naturals(std::uint64_t first, std::optional<std::uint64_t> last = std::nullopt);
  /// Atoms (in rank order) followed by naturals.
  static Domain naturals_plus_atoms(std::vector<Point> atoms, std::uint64_t first,
                                    std::optional<std::uint64_t> last = std::nullopt);
  /// Ordinals omega*q + r below omega^2, optionally bounded in q and r.
  static Domain ordinal_grid(std::optional<std::uint64_t> q_max = std::nullopt,
                             std::optional<std::uint64_t> r_max = std::nullopt);

  Kind kind() const noexcept { return kind_; }
  bool contains(const Point& p) const;
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  /// Atoms of an atom-bearing domain, or every point of a finite one.
  const std::vector<Point>& listed_points() const noexcept { return listed_; }
  std::uint64_t first_natural() const noexcept { return nat_first_; }
  std::optional<std::uint64_t> last_natural() const noexcept { return nat_last_; }
  std::optional<std::uint64_t> q_max() const noexcept { return q_max_; }
  std::optional<std::uint64_t> r_max() const noexcept { return r_max_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Finite;
  std::vector<Point> listed_;
  std::uint64_t nat_first_ = 0;
  std::optional<std::uint64_t> nat_last_;
  std::optional<std::uint64_t> q_max_;
  std::optional<std::uint64_t> r_max_;
};

/// How completeness of a space is known. Completeness quantifies over all
/// Cauchy sequences and is never decided from window evidence.
enum class Completeness {
  Unknown,
  FiniteDomain,              // every Cauchy sequence in a finite distance space is eventually constant
  AssumedFromGalleryMetadata,
};

std::string_view to_string(Completeness c);

/// A set with a distance d satisfying d >= 0 and d(x,y) + d(y,x) = 0 iff
/// x = y. The distance function must be pure; spaces are immutable and may
/// be shared between threads.
class DistanceSpace {
 public:
  using DistanceFn = std::function<Scalar(const Point&, const Point&)>;

  /// For finite domains every pair is evaluated up front; a distance
  /// function that throws or returns a negative value is rejected here.
  DistanceSpace(std::string name, Domain domain, DistanceFn dist,
                std::optional<Completeness> completeness = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const Domain& domain() const noexcept { return domain_; }
  Completeness completeness() const noexcept { return completeness_; }

  /// d(x, y). Throws DomainError if either point lies outside the domain.
  Scalar distance(const Point& x, const Point& y) const;
  /// d(x, y) + d(y, x).
  Scalar symmetric_distance(const Point& x, const Point& y) const;

  /// Resolves a command-line label ("a", "mu", "17", "w*2+3") to a domain
  /// point. Throws DomainError when the label names nothing in the domain.
  Point parse_point(std::string_view label) const;

  /// Same space under a different name and completeness tag.
  DistanceSpace with_metadata(std::string name, Completeness completeness) const;

 private:
  std::string name_;
  Domain domain_;
  std::shared_ptr<const DistanceFn> dist_;
  Completeness completeness_;
};

/// Per-domain truncation bounds for `enumerate`.
struct WindowLimits {
  std::optional<std::uint64_t> nat_max;
  std::optional<std::uint64_t> q_max;
  std::optional<std::uint64_t> r_max;
};

/// Deterministic sorted window of the domain. Atoms are always included.
/// Throws ArgumentError when the limits do not fit the domain kind.
Window enumerate(const DistanceSpace& space, const WindowLimits& limits);

/// True iff d(center, y) < radius. Throws ArgumentError for radius <= 0.
bool ball_contains(const DistanceSpace& space, const Point& center, const Scalar& radius,
                   const Point& y);

}  // namespace dspace
