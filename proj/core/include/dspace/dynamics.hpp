#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dspace/matrix.hpp"
#include "dspace/parallel.hpp"
#include "dspace/point.hpp"
#include "dspace/scalar.hpp"
#include "dspace/space.hpp"
#include "dspace/window.hpp"

namespace dspace {

/// A pure self-map of a space's domain.
struct SelfMap {
  std::string name;
  std::function<Point(const Point&)> apply;
};

/// Picard orbit x_0 = start, x_{n+1} = apply(x_n), n < horizon.
struct OrbitTrace {
  Point start;
  std::vector<Point> points;  // x_0 .. x_horizon
  std::vector<Scalar> gaps;   // d(x_n, x_{n+1}), n < horizon
  std::size_t horizon = 0;
};

/// Throws DomainError when the map leaves the domain and ArgumentError
/// for horizon == 0.
OrbitTrace picard_orbit(const DistanceSpace& space, const SelfMap& map, const Point& start, std::size_t horizon);

/// Finite-horizon convergence verdict of an orbit against window points.
///
/// A window point is *resolved* at `tol` when every other window point is
/// more than `tol` away from it in d_s; unresolved points cannot be told
/// apart from a neighbour at this tolerance and are listed separately
/// instead of being reported as limits. A point equal to every tail entry
/// of the orbit is always a limit.
struct ConvergenceVerdict {
  std::size_t tail = 0;
  Scalar tol;
  bool cauchy = false;
  Scalar cauchy_max;  // max over tail pairs n != m of d(x_n, x_m)
  std::vector<Point> limits;             // sup over tail of d(x, x_n) <= tol
  std::vector<Point> dislocated_limits;  // same with d_s
  std::vector<Point> accumulation;       // within tol past every ladder cut
  std::vector<Point> unresolved;
  std::vector<std::size_t> ladder;
  bool gaps_vanish = false;
  Scalar max_tail_gap;
};

/// Cuts tail, tail + (T - tail)/2 and T - (T - tail)/4.
std::vector<std::size_t> default_ladder(std::size_t tail, std::size_t horizon);

/// Requires tail < trace.horizon and tol > 0. An empty `ladder` means
/// default_ladder(tail, horizon).
ConvergenceVerdict analyze_convergence(const DistanceSpace& space, const OrbitTrace& trace, const Window& window,
                                       const Scalar& tol, std::size_t tail,
                                       std::vector<std::size_t> ladder = {}, const Exec& exec = {});
/// As above, reading window distances from a precomputed matrix.
ConvergenceVerdict analyze_convergence(const DistanceSpace& space, const OrbitTrace& trace,
                                       const DistanceMatrix& window_matrix, const Scalar& tol, std::size_t tail,
                                       std::vector<std::size_t> ladder = {}, const Exec& exec = {});

struct LipschitzEstimate {
  Scalar value;
  Point x;
  Point y;
};

/// Exact max over window pairs with d(x,y) > 0 of d(fx, fy) / d(x, y).
/// The witness is the lexicographically smallest maximizing pair.
LipschitzEstimate lipschitz_estimate(const DistanceSpace& space, const SelfMap& map, const Window& window,
                                     const Exec& exec = {});
/// As above, reading distances from a precomputed matrix where possible.
LipschitzEstimate lipschitz_estimate(const DistanceSpace& space, const SelfMap& map,
                                     const DistanceMatrix& window_matrix, const Exec& exec = {});

struct PeriodicPoint {
  Point point;
  std::size_t period = 0;  // least period

  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

struct FixedPointReport {
  std::vector<Point> fixed;              // d_s(x, apply x) = 0
  std::vector<PeriodicPoint> periodic;   // least period p, 1 <= p <= max_period
  std::size_t max_period = 0;

  /// Periodic points that are not fixed.
  std::vector<PeriodicPoint> non_fixed_periodic() const;
};

FixedPointReport fixed_and_periodic_points(const DistanceSpace& space, const SelfMap& map, const Window& window,
                                           std::size_t max_period);

}  // namespace dspace
