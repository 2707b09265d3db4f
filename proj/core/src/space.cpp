#include "dspace/space.hpp"

#include <algorithm>
#include <charconv>

#include "dspace/error.hpp"

namespace dspace {

Domain Domain::finite(std::vector<Point> points) {
  if (points.empty()) throw ArgumentError("finite domain must not be empty");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw ArgumentError("finite domain has duplicate points");
  }
  Domain d;
  d.kind_ = Kind::Finite;
  d.listed_ = std::move(points);
  return d;
}

Domain Domain::naturals(std::uint64_t first, std::optional<std::uint64_t> last) {
  if (last && *last < first) throw ArgumentError("natural range is empty");
  Domain d;
  d.kind_ = Kind::Naturals;
  d.nat_first_ = first;
  d.nat_last_ = last;
  return d;
}

Domain Domain::naturals_plus_atoms(std::vector<Point> atoms, std::uint64_t first,
                                   std::optional<std::uint64_t> last) {
  for (const auto& a : atoms) {
    if (!a.is_atom()) throw ArgumentError("atom list holds non-atom point '" + a.label() + "'");
  }
  Domain d = naturals(first, last);
  std::sort(atoms.begin(), atoms.end());
  d.kind_ = Kind::NaturalsPlusAtoms;
  d.listed_ = std::move(atoms);
  return d;
}

Domain Domain::ordinal_grid(std::optional<std::uint64_t> q_max, std::optional<std::uint64_t> r_max) {
  Domain d;
  d.kind_ = Kind::OrdinalGrid;
  d.q_max_ = q_max;
  d.r_max_ = r_max;
  return d;
}

bool Domain::contains(const Point& p) const {
  switch (kind_) {
    case Kind::Finite:
      return std::binary_search(listed_.begin(), listed_.end(), p);
    case Kind::NaturalsPlusAtoms:
      if (p.is_atom()) return std::binary_search(listed_.begin(), listed_.end(), p);
      [[fallthrough]];
    case Kind::Naturals:
      return p.is_nat() && p.value() >= nat_first_ && (!nat_last_ || p.value() <= *nat_last_);
    case Kind::OrdinalGrid:
      return p.is_ord() && (!q_max_ || p.limit_index() <= *q_max_) &&
             (!r_max_ || p.offset() <= *r_max_);
  }
  return false;
}

namespace {

std::string nat_range(std::uint64_t first, std::optional<std::uint64_t> last) {
  return "naturals " + std::to_string(first) + ".." + (last ? std::to_string(*last) : std::string("inf"));
}

std::string atom_list(const std::vector<Point>& atoms) {
  std::string s = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ", ";
    s += atoms[i].label();
  }
  return s + "}";
}

}  // namespace

std::string Domain::describe() const {
  switch (kind_) {
    case Kind::Finite:
      return "finite set of " + std::to_string(listed_.size()) + " points";
    case Kind::Naturals:
      return nat_range(nat_first_, nat_last_);
    case Kind::NaturalsPlusAtoms:
      return "atoms " + atom_list(listed_) + " + " + nat_range(nat_first_, nat_last_);
    case Kind::OrdinalGrid:
      return std::string("ordinals w*q+r with q<=") + (q_max_ ? std::to_string(*q_max_) : "inf") +
             ", r<=" + (r_max_ ? std::to_string(*r_max_) : "inf");
  }
  return {};
}

std::string_view to_string(Completeness c) {
  switch (c) {
    case Completeness::Unknown:
      return "unknown";
    case Completeness::FiniteDomain:
      return "finite-domain";
    case Completeness::AssumedFromGalleryMetadata:
      return "assumed-from-gallery-metadata";
  }
  return "unknown";
}

DistanceSpace::DistanceSpace(std::string name, Domain domain, DistanceFn dist,
                             std::optional<Completeness> completeness)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      dist_(std::make_shared<const DistanceFn>(std::move(dist))),
      completeness_(completeness.value_or(domain_.is_finite() ? Completeness::FiniteDomain
                                                              : Completeness::Unknown)) {
  if (!*dist_) throw ArgumentError("distance function is empty");
  if (!domain_.is_finite()) return;
  for (const auto& x : domain_.listed_points()) {
    for (const auto& y : domain_.listed_points()) {
      Scalar v;
      try {
        v = (*dist_)(x, y);
      } catch (const std::exception& e) {
        throw ArgumentError("distance undefined at (" + x.label() + ", " + y.label() + "): " + e.what());
      }
      if (v.sign() < 0) {
        throw ArgumentError("negative distance at (" + x.label() + ", " + y.label() + ")");
      }
    }
  }
}

Scalar DistanceSpace::distance(const Point& x, const Point& y) const {
  if (!domain_.contains(x)) throw DomainError("point '" + x.label() + "' is outside " + domain_.describe());
  if (!domain_.contains(y)) throw DomainError("point '" + y.label() + "' is outside " + domain_.describe());
  return (*dist_)(x, y);
}

Scalar DistanceSpace::symmetric_distance(const Point& x, const Point& y) const {
  return distance(x, y) + distance(y, x);
}

namespace {

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Point DistanceSpace::parse_point(std::string_view label) const {
  for (const auto& p : domain_.listed_points()) {
    if (p.label() == label) return p;
  }
  std::optional<Point> candidate;
  if (auto n = parse_u64(label)) {
    candidate = Point::nat(*n);
  } else if (label.starts_with("w*")) {
    const auto plus = label.find('+');
    const auto q = parse_u64(label.substr(2, plus == std::string_view::npos ? label.npos : plus - 2));
    const auto r = plus == std::string_view::npos ? std::optional<std::uint64_t>(0)
                                                  : parse_u64(label.substr(plus + 1));
    if (q && r) candidate = Point::ord(*q, *r);
  }
  if (!candidate || !domain_.contains(*candidate)) {
    throw DomainError("no point labelled '" + std::string(label) + "' in " + domain_.describe());
  }
  return *candidate;
}

DistanceSpace DistanceSpace::with_metadata(std::string name, Completeness completeness) const {
  DistanceSpace copy = *this;
  copy.name_ = std::move(name);
  copy.completeness_ = completeness;
  return copy;
}

Window enumerate(const DistanceSpace& space, const WindowLimits& limits) {
  const Domain& dom = space.domain();
  const bool has_ord = limits.q_max || limits.r_max;
  switch (dom.kind()) {
    case Domain::Kind::Finite: {
      if (limits.nat_max || has_ord) throw ArgumentError("a finite domain takes no window limits");
      return Window(dom.listed_points(), "all " + std::to_string(dom.listed_points().size()) + " points");
    }
    case Domain::Kind::Naturals:
    case Domain::Kind::NaturalsPlusAtoms: {
      if (has_ord) throw ArgumentError("ordinal limits given for a domain of naturals");
      if (!limits.nat_max) throw ArgumentError("a domain of naturals needs a natural bound");
      const std::uint64_t bound = *limits.nat_max;
      if (bound < dom.first_natural()) throw ArgumentError("natural bound lies below the domain");
      if (dom.last_natural() && bound > *dom.last_natural()) {
        throw ArgumentError("natural bound " + std::to_string(bound) + " exceeds the domain (" +
                            dom.describe() + ")");
      }
      std::vector<Point> pts = dom.listed_points();
      for (std::uint64_t n = dom.first_natural(); n <= bound; ++n) pts.push_back(Point::nat(n));
      std::string desc = "naturals " + std::to_string(dom.first_natural()) + ".." + std::to_string(bound);
      if (!dom.listed_points().empty()) desc += " plus " + std::to_string(dom.listed_points().size()) + " atoms";
      return Window(std::move(pts), std::move(desc));
    }
    case Domain::Kind::OrdinalGrid: {
      if (limits.nat_max) throw ArgumentError("natural bound given for an ordinal domain");
      if (!limits.q_max || !limits.r_max) throw ArgumentError("an ordinal domain needs both q and r bounds");
      if ((dom.q_max() && *limits.q_max > *dom.q_max()) || (dom.r_max() && *limits.r_max > *dom.r_max())) {
        throw ArgumentError("ordinal bounds exceed the domain");
      }
      std::vector<Point> pts;
      for (std::uint64_t q = 0; q <= *limits.q_max; ++q) {
        for (std::uint64_t r = 0; r <= *limits.r_max; ++r) pts.push_back(Point::ord(q, r));
      }
      return Window(std::move(pts), "ordinals w*q+r with q<=" + std::to_string(*limits.q_max) +
                                        ", r<=" + std::to_string(*limits.r_max));
    }
  }
  throw ArgumentError("unknown domain kind");
}

bool ball_contains(const DistanceSpace& space, const Point& center, const Scalar& radius, const Point& y) {
  if (radius.sign() <= 0) throw ArgumentError("ball radius must be positive, got " + radius.str());
  return space.distance(center, y) < radius;
}

}  // namespace dspace
