#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace dspace {

/// Identity of a point in a distance space.
///
/// Three shapes are supported: a named atom, a natural number, and an
/// ordinal below omega^2 written as the pair (q, r) for omega*q + r. For an
/// ordinal the limit part is Ord(q, 0) and the finite offset is r.
///
/// Atoms carry a rank fixed by the owning space; the point order is
/// atoms (by rank) < naturals (by value) < ordinals (lexicographic).
class Point {
 public:
  enum class Kind : std::uint8_t { Atom = 0, Nat = 1, Ord = 2 };

  static Point atom(std::string name, std::uint32_t rank);
  static Point nat(std::uint64_t n);
  static Point ord(std::uint64_t q, std::uint64_t r);

  Kind kind() const noexcept { return kind_; }
  bool is_atom() const noexcept { return kind_ == Kind::Atom; }
  bool is_nat() const noexcept { return kind_ == Kind::Nat; }
  bool is_ord() const noexcept { return kind_ == Kind::Ord; }

  const std::string& name() const noexcept { return name_; }
  std::uint32_t rank() const noexcept { return static_cast<std::uint32_t>(a_); }
  std::uint64_t value() const noexcept { return a_; }
  /// Limit-part index q of omega*q + r.
  std::uint64_t limit_index() const noexcept { return a_; }
  /// Finite offset r of omega*q + r.
  std::uint64_t offset() const noexcept { return b_; }

  /// Text form used in reports and on the command line: the atom name,
  /// the decimal value, or "w*q+r".
  std::string label() const;

  friend bool operator==(const Point& x, const Point& y) noexcept {
    return x.kind_ == y.kind_ && x.a_ == y.a_ && x.b_ == y.b_ && x.name_ == y.name_;
  }
  friend std::strong_ordering operator<=>(const Point& x, const Point& y) noexcept;

 private:
  Point(Kind kind, std::string name, std::uint64_t a, std::uint64_t b)
      : kind_(kind), name_(std::move(name)), a_(a), b_(b) {}

  Kind kind_ = Kind::Nat;
  std::string name_;
  std::uint64_t a_ = 0;
  std::uint64_t b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace dspace

template <>
struct std::hash<dspace::Point> {
  std::size_t operator()(const dspace::Point& p) const noexcept;
};
