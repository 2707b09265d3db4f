#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dspace/matrix.hpp"
#include "dspace/parallel.hpp"
#include "dspace/point.hpp"
#include "dspace/scalar.hpp"
#include "dspace/space.hpp"
#include "dspace/window.hpp"

namespace dspace {

enum class Axiom {
  Nonneg,
  Separation,
  Symmetry,
  Triangle,
  RelaxedTriangle,
  NDistance,
  FDistance,
  HDistance,
};

/// Window verdicts never claim more than the window shows.
enum class Verdict { HoldsOnWindow, Fails };

std::string_view to_string(Axiom a);
std::string_view to_string(Verdict v);

/// One directed distance quoted as evidence: d(from, to) = value.
struct Evidence {
  Point from;
  Point to;
  Scalar value;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct AxiomReport {
  Axiom axiom = Axiom::Nonneg;
  Verdict verdict = Verdict::HoldsOnWindow;
  /// Lexicographically smallest violating tuple (or extremal tuple).
  std::vector<Point> witness;
  /// Directed distances that reproduce the verdict for `witness`.
  std::vector<Evidence> evidence;
  std::optional<Scalar> extremal;
  std::string window;
  /// Named inputs of the check (epsilon, delta, a, x, ...), as text.
  std::vector<std::pair<std::string, std::string>> parameters;
  /// check_H only: the H-minimum over each window prefix, by prefix length.
  std::vector<Scalar> profile;

  bool holds() const noexcept { return verdict == Verdict::HoldsOnWindow; }

  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

/// Nonnegativity, separation (ii_m) and symmetry, in that order.
std::vector<AxiomReport> check_core_axioms(const DistanceMatrix& m, const Exec& exec = {});
std::vector<AxiomReport> check_core_axioms(const DistanceSpace& space, const Window& window, const Exec& exec = {});

/// d(x,z) <= d(x,y) + d(y,z) over all ordered triples, repeated points
/// included. `extremal` is the exact maximum of d(x,z) / (d(x,y) + d(y,z))
/// over triples with a positive denominator.
AxiomReport check_triangle(const DistanceMatrix& m, const Exec& exec = {});
AxiomReport check_triangle(const DistanceSpace& space, const Window& window, const Exec& exec = {});

/// d(x,z) <= a (d(x,y) + d(y,z)) for triples with d(x,y) <= delta and
/// d(y,z) <= delta. Requires a >= 1 and delta > 0.
AxiomReport check_relaxed_triangle(const DistanceMatrix& m, const Scalar& a, const Scalar& delta,
                                   const Exec& exec = {});
AxiomReport check_relaxed_triangle(const DistanceSpace& space, const Window& window, const Scalar& a,
                                   const Scalar& delta, const Exec& exec = {});

/// 2^-1, 2^-2, ..., 2^-24.
std::vector<Scalar> default_delta_grid();

/// Largest grid delta such that d(x,y) <= delta and d(y,z) <= delta imply
/// d(x,z) <= epsilon on the window. The grid must be strictly descending
/// and positive. `extremal` holds the delta found.
AxiomReport check_N(const DistanceMatrix& m, const Point& x, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid);
AxiomReport check_N(const DistanceSpace& space, const Window& window, const Point& x, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid);

/// Uniform version of check_N: one delta for every x in the window.
AxiomReport check_F(const DistanceMatrix& m, const Scalar& epsilon, const std::vector<Scalar>& delta_grid,
                    const Exec& exec = {});
AxiomReport check_F(const DistanceSpace& space, const Window& window, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid, const Exec& exec = {});

/// min over z of d(x,z) + d(y,z) (extremal) and its smallest argmin
/// (witness = x, y, z). `profile[k]` is the same minimum over the first
/// k+1 window points. Fails only when the minimum is zero.
AxiomReport check_H(const DistanceMatrix& m, const Point& x, const Point& y);
AxiomReport check_H(const DistanceSpace& space, const Window& window, const Point& x, const Point& y);

/// Re-evaluates every evidence entry of a report against the space.
bool replay(const DistanceSpace& space, const AxiomReport& report);

}  // namespace dspace
