#include <map>
#include <utility>

#include "dspace/gallery.hpp"

namespace dspace {

namespace {

/// Finite space on atoms named in `names` (ranked in that order) with the
/// listed directed distances; unlisted distinct pairs get `fallback`.
DistanceSpace finite_atoms(std::string name, const std::vector<std::string>& names,
                           std::map<std::pair<std::string, std::string>, Scalar> table, const Scalar& fallback) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < names.size(); ++i) pts.push_back(Point::atom(names[i], static_cast<std::uint32_t>(i)));
  auto dist = [table = std::move(table), fallback](const Point& x, const Point& y) -> Scalar {
    if (x == y) return Scalar(0);
    const auto it = table.find({x.name(), y.name()});
    return it == table.end() ? fallback : it->second;
  };
  return DistanceSpace(std::move(name), Domain::finite(std::move(pts)), std::move(dist));
}

}  // namespace

DistanceSpace three_point_space() {
  return finite_atoms("three-point", {"p", "q", "r"}, {{{"p", "r"}, Scalar(10)}, {{"r", "p"}, Scalar(10)}},
                      Scalar(1));
}

DistanceSpace zero_cycle_space() {
  return finite_atoms("zero-cycle", {"p", "q", "r"},
                      {{{"p", "r"}, Scalar(0)}, {{"r", "q"}, Scalar(0)}, {{"q", "p"}, Scalar(0)}}, Scalar(1));
}

DistanceSpace two_point_asymmetric_space() {
  return finite_atoms("two-point-asymmetric", {"p", "q"}, {{{"p", "q"}, Scalar(0)}}, Scalar(1));
}

}  // namespace dspace
