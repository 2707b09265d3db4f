#include "dspace/matrix.hpp"

#include <cmath>

#include "dspace/error.hpp"

namespace dspace {

DistanceMatrix::DistanceMatrix(Window window, std::vector<Scalar> values)
    : window_(std::move(window)), values_(std::move(values)) {
  const std::size_t n = window_.size();
  if (values_.size() != n * n) throw ArgumentError("matrix size does not match its window");
  for (std::size_t i = 0; i < n; ++i) {
    if (!at(i, i).is_zero()) throw ArgumentError("matrix diagonal must be zero at '" + window_[i].label() + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j).sign() < 0) throw ArgumentError("matrix entry must be non-negative");
    }
  }
}

DistanceMatrix DistanceMatrix::materialize(const DistanceSpace& space, const Window& window, const Exec& exec) {
  const std::size_t n = window.size();
  std::vector<Scalar> values(n * n);
  parallel_chunks(exec, n, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) values[i * n + j] = space.distance(window[i], window[j]);
    }
  });
  return DistanceMatrix(window, std::move(values));
}

DistanceMatrix DistanceMatrix::restrict_to(const Window& sub) const {
  std::vector<std::size_t> idx;
  idx.reserve(sub.size());
  for (const auto& p : sub.points()) {
    const auto i = window_.index_of(p);
    if (!i) throw ArgumentError("restriction point '" + p.label() + "' is outside the matrix window");
    idx.push_back(*i);
  }
  const std::size_t n = sub.size();
  std::vector<Scalar> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = at(idx[i], idx[j]);
  }
  return DistanceMatrix(sub, std::move(values));
}

Scalar CachedDistance::operator()(const Point& x, const Point& y) const { return at(index_of(x), index_of(y), x, y); }

DistanceSpace DistanceMatrix::to_space(std::string name) const {
  std::vector<Point> pts(window_.points().begin(), window_.points().end());
  auto table = std::make_shared<const DistanceMatrix>(*this);
  return DistanceSpace(std::move(name), Domain::finite(std::move(pts)),
                       [table](const Point& x, const Point& y) {
                         const auto i = table->window().index_of(x);
                         const auto j = table->window().index_of(y);
                         return table->at(*i, *j);
                       });
}

ScaledMatrix::ScaledMatrix(const DistanceMatrix& m) : n_(m.size()), den_(1) {
  for (const auto& v : m.values()) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), v.raw().get_den_mpz_t());
  num_.resize(n_ * n_);
  approx_.resize(n_ * n_);
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    const mpq_class& q = m.values()[k].raw();
    mpz_divexact(num_[k].get_mpz_t(), den_.get_mpz_t(), q.get_den_mpz_t());
    num_[k] *= q.get_num();
    approx_[k] = q.get_d();
  }
}

double rounding_band(double lhs, double rhs) noexcept {
  return (std::fabs(lhs) + std::fabs(rhs)) * 0x1p-45 + 1e-300;
}

int ScaledMatrix::compare_to_sum(std::size_t lhs, std::size_t a, std::size_t b, mpz_class& scratch) const {
  const double l = approx_[lhs];
  const double r = approx_[a] + approx_[b];
  const double gap = l - r;
  if (std::fabs(gap) > rounding_band(l, r)) return gap > 0 ? 1 : -1;
  mpz_add(scratch.get_mpz_t(), num_[a].get_mpz_t(), num_[b].get_mpz_t());
  const int c = mpz_cmp(num_[lhs].get_mpz_t(), scratch.get_mpz_t());
  return (c > 0) - (c < 0);
}

int ScaledMatrix::compare(std::size_t a, std::size_t b) const {
  const double gap = approx_[a] - approx_[b];
  if (std::fabs(gap) > rounding_band(approx_[a], approx_[b])) return gap > 0 ? 1 : -1;
  const int c = mpz_cmp(num_[a].get_mpz_t(), num_[b].get_mpz_t());
  return (c > 0) - (c < 0);
}

}  // namespace dspace
