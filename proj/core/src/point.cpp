#include "dspace/point.hpp"

#include <ostream>
#include <tuple>

namespace dspace {

Point Point::atom(std::string name, std::uint32_t rank) {
  return Point(Kind::Atom, std::move(name), rank, 0);
}
Point Point::nat(std::uint64_t n) { return Point(Kind::Nat, {}, n, 0); }
Point Point::ord(std::uint64_t q, std::uint64_t r) { return Point(Kind::Ord, {}, q, r); }

std::string Point::label() const {
  switch (kind_) {
    case Kind::Atom:
      return name_;
    case Kind::Nat:
      return std::to_string(a_);
    case Kind::Ord:
      return "w*" + std::to_string(a_) + "+" + std::to_string(b_);
  }
  return {};
}

std::strong_ordering operator<=>(const Point& x, const Point& y) noexcept {
  return std::tie(x.kind_, x.a_, x.b_, x.name_) <=> std::tie(y.kind_, y.a_, y.b_, y.name_);
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.label(); }

}  // namespace dspace

std::size_t std::hash<dspace::Point>::operator()(const dspace::Point& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.name());
  auto mix = [&h](std::uint64_t v) { h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::uint64_t>(p.kind()));
  mix(p.value());
  mix(p.offset());
  return h;
}
