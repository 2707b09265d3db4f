#include "dspace/scalar.hpp"

#include <cctype>
#include <ostream>

#include "dspace/error.hpp"

namespace dspace {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar::Scalar(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw ArgumentError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw ArgumentError("rational with zero denominator '" + std::string(text) + "'");
  mpq_class q(parse_integer(num), d);
  return Scalar(std::move(q));
}

Scalar Scalar::dyadic(std::uint64_t k) {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  return Scalar(mpq_class(1, den));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  q_ += rhs.q_;
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& rhs) {
  q_ -= rhs.q_;
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& rhs) {
  q_ *= rhs.q_;
  return *this;
}
Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw ArgumentError("division by zero");
  q_ /= rhs.q_;
  return *this;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

}  // namespace dspace
