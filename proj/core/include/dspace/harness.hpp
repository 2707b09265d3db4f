#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dspace/dynamics.hpp"
#include "dspace/parallel.hpp"
#include "dspace/scalar.hpp"
#include "dspace/space.hpp"
#include "dspace/window.hpp"

namespace dspace {

/// Windows, horizons and tolerances for the theorem harness.
struct HarnessConfig {
  Window window;
  std::size_t horizon = 64;
  Scalar tol = Scalar::dyadic(20);
  std::size_t tail = 32;
  std::vector<std::size_t> ladder;  // empty: default ladder
  std::vector<Point> starts;        // orbit starts; the first is the distinguished start e
  std::size_t max_period = 4;

  Scalar epsilon = Scalar(1, 4);    // N-distance probe radius
  std::vector<Scalar> delta_grid;   // empty: default dyadic grid
  std::vector<Point> n_probes;      // centres for check_N

  std::vector<std::pair<Point, Point>> h_probes;
  std::vector<Window> h_windows;    // nested, ascending; decay evidence for check_H

  Scalar relaxed_a = Scalar(1);
  Scalar relaxed_delta = Scalar(1);
};

/// Default config: horizon 64, tail horizon/2, tolerance 2^-20, starts and
/// probes drawn from the first few window points, H-windows the window's
/// prefixes of sizes n/4, n/2 and n.
HarnessConfig default_harness_config(const Window& window);

struct NamedVerdict {
  std::string name;
  bool holds = false;
  std::string evidence;

  friend bool operator==(const NamedVerdict&, const NamedVerdict&) = default;
};

enum class Consistency { Ok, CounterexampleFlag };

struct TheoremReport {
  std::string theorem;  // P2.1 | T2.2 | T2.3 | C2.5 | T2.4 | L4.1
  std::vector<NamedVerdict> hypotheses;
  std::vector<NamedVerdict> conclusions;
  Consistency consistency = Consistency::Ok;
  std::vector<std::string> notes;

  const NamedVerdict* hypothesis(std::string_view name) const;
  const NamedVerdict* conclusion(std::string_view name) const;

  friend bool operator==(const TheoremReport&, const TheoremReport&) = default;
};

/// Evaluates the hypotheses and conclusions of each fixed-point theorem on
/// the configured window. A report is flagged only when every hypothesis
/// holds on the window and some conclusion fails there.
std::vector<TheoremReport> theorem_harness(const DistanceSpace& space, const SelfMap& map,
                                           const HarnessConfig& config, const Exec& exec = {});

/// True when every pair of orbits from `starts` obeys
/// d(x_n, y_n) <= lambda^n d(x_0, y_0) and every orbit obeys
/// d(x_n, x_{n+1}) <= lambda^n d(x_0, x_1), for n <= horizon.
bool geometric_decay_holds(const DistanceSpace& space, const SelfMap& map, const std::vector<Point>& starts,
                           const Scalar& lambda, std::size_t horizon, std::string* detail = nullptr);

}  // namespace dspace
