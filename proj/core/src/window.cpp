#include "dspace/window.hpp"

#include <algorithm>

#include "dspace/error.hpp"

namespace dspace {

Window::Window(std::vector<Point> points, std::string description)
    : points_(std::move(points)), description_(std::move(description)) {
  if (points_.empty()) throw ArgumentError("window must not be empty");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i])) {
      throw ArgumentError("window points must be strictly increasing (at '" + points_[i].label() + "')");
    }
  }
}

std::optional<std::size_t> Window::index_of(const Point& p) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || !(*it == p)) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

Window Window::prefix(std::size_t count) const {
  if (count == 0 || count > points_.size()) throw ArgumentError("window prefix out of range");
  std::vector<Point> pts(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(count));
  return Window(std::move(pts), description_ + " [first " + std::to_string(count) + "]");
}

}  // namespace dspace
