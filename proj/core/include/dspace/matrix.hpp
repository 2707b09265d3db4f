#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dspace/parallel.hpp"
#include "dspace/scalar.hpp"
#include "dspace/space.hpp"
#include "dspace/window.hpp"

namespace dspace {

/// Exact distances of a space restricted to a window, row-major by window
/// position. values[i][i] = 0 and values[i][j] >= 0.
class DistanceMatrix {
 public:
  DistanceMatrix(Window window, std::vector<Scalar> values);

  /// Evaluates d on every ordered pair of the window.
  static DistanceMatrix materialize(const DistanceSpace& space, const Window& window, const Exec& exec = {});

  const Window& window() const noexcept { return window_; }
  std::size_t size() const noexcept { return window_.size(); }
  const Scalar& at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  const std::vector<Scalar>& values() const noexcept { return values_; }

  /// The same distances restricted to `sub`, whose points must all lie in
  /// this window.
  DistanceMatrix restrict_to(const Window& sub) const;

  /// Finite space over the window's points whose distance is this matrix.
  DistanceSpace to_space(std::string name) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  Window window_;
  std::vector<Scalar> values_;
};

/// d read from a precomputed matrix when both points lie in its window,
/// evaluated on the space otherwise.
class CachedDistance {
 public:
  CachedDistance(const DistanceSpace& space, const DistanceMatrix& matrix) : space_(space), matrix_(matrix) {}

  Scalar operator()(const Point& x, const Point& y) const;
  /// Window position of p, if any; pass it to at() to skip the search.
  std::optional<std::size_t> index_of(const Point& p) const { return matrix_.window().index_of(p); }
  Scalar at(std::optional<std::size_t> i, std::optional<std::size_t> j, const Point& x, const Point& y) const {
    return i && j ? matrix_.at(*i, *j) : space_.distance(x, y);
  }

 private:
  const DistanceSpace& space_;
  const DistanceMatrix& matrix_;
};

/// Integer image of a DistanceMatrix: every entry scaled by the common
/// denominator of the matrix, plus a double shadow of each entry.
///
/// Comparisons of the form v(a) vs v(b) + v(c) are decided on the doubles
/// when the gap exceeds a proven rounding bound, and on the integers
/// otherwise, so every answer is exact.
class ScaledMatrix {
 public:
  explicit ScaledMatrix(const DistanceMatrix& m);

  std::size_t size() const noexcept { return n_; }
  const mpz_class& numerator(std::size_t i, std::size_t j) const { return num_[i * n_ + j]; }
  double approx(std::size_t i, std::size_t j) const { return approx_[i * n_ + j]; }
  const mpz_class& denominator() const noexcept { return den_; }

  /// Sign of v(lhs) - (v(a) + v(b)) where each argument is a flat index
  /// i*n + j.
  int compare_to_sum(std::size_t lhs, std::size_t a, std::size_t b, mpz_class& scratch) const;
  /// Sign of v(a) - v(b).
  int compare(std::size_t a, std::size_t b) const;

  std::size_t flat(std::size_t i, std::size_t j) const noexcept { return i * n_ + j; }

 private:
  std::size_t n_ = 0;
  mpz_class den_;
  std::vector<mpz_class> num_;
  std::vector<double> approx_;
};

/// Half-width of the band around a double comparison inside which the
/// exact integer path is taken: |lhs| + |rhs| scaled by 2^-45, plus a
/// subnormal guard.
double rounding_band(double lhs, double rhs) noexcept;

}  // namespace dspace
