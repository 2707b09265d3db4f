#include "dspace/chains.hpp"

#include <cmath>

namespace dspace {

DistanceMatrix associated_functional(const DistanceMatrix& rho, const Exec& exec) {
  const std::size_t n = rho.size();
  const ScaledMatrix scaled(rho);
  const mpz_class& den = scaled.denominator();
  std::vector<mpz_class> num(n * n);
  std::vector<double> approx(n * n);
  std::vector<char> improved(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      num[i * n + j] = scaled.numerator(i, j);
      approx[i * n + j] = scaled.approx(i, j);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    // Row k and column k are invariant during pivot k (rho_bar(k,k) = 0),
    // so rows can be relaxed independently.
    parallel_chunks(exec, n, [&](std::size_t begin, std::size_t end, std::size_t) {
      mpz_class sum;
      for (std::size_t i = begin; i < end; ++i) {
        if (i == k) continue;
        const std::size_t ik = i * n + k;
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t ij = i * n + j;
          const std::size_t kj = k * n + j;
          const double via = approx[ik] + approx[kj];
          const double gap = approx[ij] - via;
          if (gap < 0 && std::fabs(gap) > rounding_band(approx[ij], via)) continue;
          mpz_add(sum.get_mpz_t(), num[ik].get_mpz_t(), num[kj].get_mpz_t());
          if (mpz_cmp(sum.get_mpz_t(), num[ij].get_mpz_t()) < 0) {
            num[ij] = sum;
            improved[ij] = 1;
            approx[ij] = mpq_class(sum, den).get_d();
          }
        }
      }
    });
  }
  std::vector<Scalar> values;
  values.reserve(n * n);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (improved[idx]) {
      values.emplace_back(mpq_class(num[idx], den));
    } else {
      values.push_back(rho.values()[idx]);
    }
  }
  return DistanceMatrix(rho.window(), std::move(values));
}

DistanceMatrix associated_functional(const DistanceSpace& space, const Window& window, const Exec& exec) {
  return associated_functional(DistanceMatrix::materialize(space, window, exec), exec);
}

DistanceSpace symmetrize(const DistanceSpace& space) {
  auto base = std::make_shared<const DistanceSpace>(space);
  return DistanceSpace("sym(" + space.name() + ")", space.domain(),
                       [base](const Point& x, const Point& y) { return base->symmetric_distance(x, y); });
}

}  // namespace dspace
