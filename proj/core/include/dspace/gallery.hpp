#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dspace/dynamics.hpp"
#include "dspace/harness.hpp"
#include "dspace/parallel.hpp"
#include "dspace/scalar.hpp"
#include "dspace/space.hpp"

namespace dspace {

/// Exact sum of 1/m for lo <= m <= hi; zero when hi < lo. Requires lo >= 1.
Scalar harmonic_sum(std::int64_t lo, std::int64_t hi);

/// Interval boundaries for the harmonic-interval quasimetric. Stored
/// 0-based: starts[n] is i_{n+1}, middles[n] is k_{n+1}. A table with
/// `count()` intervals has count()+1 starts so the last interval is closed
/// off.
struct IntervalTable {
  std::vector<std::uint64_t> starts;
  std::vector<std::uint64_t> middles;

  std::size_t count() const noexcept { return middles.size(); }
  /// Index n (0-based) of the half-open interval [i_n, i_{n+1}) holding m.
  std::optional<std::size_t> interval_of(std::uint64_t m) const;

  friend bool operator==(const IntervalTable&, const IntervalTable&) = default;
};

/// Greedy-minimal table: k_n is the least k with sum_{i_n <= m < k} 1/m >= 1,
/// i_{n+1} the least i with sum_{k_n < m <= i} 1/m >= 1.
IntervalTable build_intervals(std::size_t count);

/// Empty when the table satisfies i_1 = 1, i_n < k_n < i_{n+1} and the four
/// harmonic-sum bounds; otherwise a description of the first violation.
std::optional<std::string> interval_table_violation(const IntervalTable& table);

struct PropertyOutcome {
  std::string observed;
  bool agrees = false;
  nlohmann::json evidence = nlohmann::json::object();
};

struct GalleryInstance;

/// One enumerated property of a gallery space: an id such as "Ex3.2/P4",
/// the verdict the construction promises and the checker reproducing it.
struct PropertyCheck {
  std::string id;
  std::string description;
  std::string expected;
  std::function<PropertyOutcome(const GalleryInstance&, const Exec&)> run;
};

struct GalleryDefaults {
  WindowLimits window;
  std::size_t horizon = 64;
  Scalar tol = Scalar::dyadic(20);
  std::size_t tail = 32;
  Point start = Point::nat(0);
  std::size_t max_period = 4;
};

struct GalleryInstance {
  std::string id;
  DistanceSpace space;
  SelfMap map;
  std::vector<PropertyCheck> expected;
  GalleryDefaults defaults;
  std::vector<std::string> conventions;
  std::optional<IntervalTable> intervals;

  Window default_window() const;
  HarnessConfig harness_config() const;
};

/// X = {a, b} + {1, 2, ...}: d(m,n) = |2^-n - 2^-m|, d(a,n) = d(b,n) = 2^-n,
/// every other distinct pair at distance 1; phi swaps a and b and shifts
/// the naturals.
GalleryInstance example_3_1();
/// X = {0, 1, 2, ...}: d(n, m) = 2^-m for n != m; g(n) = n + 1.
GalleryInstance example_3_2();
/// X = {mu, nu} + {1, 2, ...} with the harmonic-interval distance; phi fixes
/// mu and nu and shifts the naturals. `intervals` sets the default window
/// (naturals up to i_{intervals+1}); the domain holds one more interval.
GalleryInstance example_3_3(std::size_t intervals = 3);
/// Ordinals w*q + r below w^2 with the limit-part distance; g(a) = a + 1.
GalleryInstance example_3_4(std::uint64_t q_max = 4, std::uint64_t r_max = 12);

/// Positive control: {0} + {2^-j : j <= levels} with d(x, y) = max(x, y)
/// for x != y (an ultrametric) and the halving map, 2^-levels -> 0.
GalleryInstance dyadic_control(std::uint64_t levels = 12);

/// Gallery ids accepted by gallery_instance(): "3.1", "3.2", "3.3", "3.4",
/// "control".
std::vector<std::string> gallery_ids();
GalleryInstance gallery_instance(std::string_view id);

struct PropertyResult {
  std::string id;
  std::string description;
  std::string expected;
  std::string observed;
  bool agrees = false;
  nlohmann::json evidence;
};

struct GalleryVerification {
  std::string instance;
  std::string space;
  std::string window;
  std::vector<PropertyResult> properties;
  std::vector<std::string> conventions;

  bool all_agree() const;
};

GalleryVerification verify_gallery(const GalleryInstance& instance, const Exec& exec = {});

/// Three points p, q, r with symmetric d(p,q) = d(q,r) = 1, d(p,r) = 10:
/// a distance that breaks the triangle inequality.
DistanceSpace three_point_space();
/// Three points p, q, r with d(p,r) = d(r,q) = d(q,p) = 0 and 1 in the
/// reverse directions. Its chain-infimum functional is zero on (p,q) and
/// (q,p), so it is not even a distance.
DistanceSpace zero_cycle_space();
/// Two points with d(p,q) = 0, d(q,p) = 1.
DistanceSpace two_point_asymmetric_space();

}  // namespace dspace
