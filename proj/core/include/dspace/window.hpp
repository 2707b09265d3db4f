#pragma once

#include <cstddef>
#include <optional>
#include <vector>
#include <string>
#include <vector>

#include "dspace/point.hpp"

namespace dspace {

/// Finite truncation of a (possibly countable) domain. Points are
/// non-empty, duplicate-free and sorted by the Point order.
class Window {
 public:
  Window(std::vector<Point> points, std::string description);

  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::string& description() const noexcept { return description_; }

  std::optional<std::size_t> index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p).has_value(); }

  /// The first `count` points, as a window of its own.
  Window prefix(std::size_t count) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::vector<Point> points_;
  std::string description_;
};

}  // namespace dspace
