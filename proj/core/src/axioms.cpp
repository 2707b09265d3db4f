#include "dspace/axioms.hpp"

#include <cmath>
#include <functional>

#include "dspace/error.hpp"

namespace dspace {

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::Nonneg: return "nonneg";
    case Axiom::Separation: return "separation";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Triangle: return "triangle";
    case Axiom::RelaxedTriangle: return "relaxed_triangle";
    case Axiom::NDistance: return "n_distance";
    case Axiom::FDistance: return "f_distance";
    case Axiom::HDistance: return "h_distance";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::HoldsOnWindow ? "holds_on_window" : "fails";
}

namespace {

using Accessor = std::function<Scalar(std::size_t, std::size_t)>;

std::vector<AxiomReport> core_axioms(const Window& w, const Accessor& d) {
  const std::size_t n = w.size();
  AxiomReport nonneg{.axiom = Axiom::Nonneg, .window = w.description()};
  AxiomReport sep{.axiom = Axiom::Separation, .window = w.description()};
  AxiomReport sym{.axiom = Axiom::Symmetry, .window = w.description()};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar dij = d(i, j);
      const Scalar dji = d(j, i);
      if (nonneg.holds() && dij.sign() < 0) {
        nonneg.verdict = Verdict::Fails;
        nonneg.witness = {w[i], w[j]};
        nonneg.evidence = {{w[i], w[j], dij}};
      }
      // with both signs non-negative the sign of the sum is known
      const int sum_sign = dij.sign() >= 0 && dji.sign() >= 0 ? std::max(dij.sign(), dji.sign()) : (dij + dji).sign();
      const bool separated = (i == j) ? sum_sign == 0 : sum_sign > 0;
      if (sep.holds() && !separated) {
        sep.verdict = Verdict::Fails;
        sep.witness = {w[i], w[j]};
        sep.evidence = {{w[i], w[j], dij}, {w[j], w[i], dji}};
      }
      if (sym.holds() && dij != dji) {
        sym.verdict = Verdict::Fails;
        sym.witness = {w[i], w[j]};
        sym.evidence = {{w[i], w[j], dij}, {w[j], w[i], dji}};
      }
    }
  }
  return {std::move(nonneg), std::move(sep), std::move(sym)};
}

/// Running maximum of an exact ratio, filtered through doubles.
struct RatioMax {
  bool has = false;
  mpq_class value;
  double approx = 0.0;

  void offer(const mpz_class& num, const mpz_class& den, double approx_ratio) {
    if (has && approx_ratio < approx * (1.0 - std::ldexp(1.0, -40))) return;
    mpq_class r(num, den);
    r.canonicalize();
    if (!has || r > value) {
      value = std::move(r);
      approx = value.get_d();
      has = true;
    }
  }

  void merge(const RatioMax& other) {
    if (other.has && (!has || other.value > value)) *this = other;
  }
};

struct TripleScan {
  bool violated = false;
  std::size_t x = 0, y = 0, z = 0;
  RatioMax ratio;
  bool positive_pair = false;  // some eligible degenerate triple with ratio 1
  bool unbounded = false;      // a violation with zero denominator
};

/// Shared scan for check_triangle and check_relaxed_triangle. A triple is
/// eligible when `eligible(xy, yz)` holds; it violates when
/// v(xz) > factor * (v(xy) + v(yz)).
template <typename Eligible, typename Violates>
TripleScan scan_triples(const ScaledMatrix& s, const Exec& exec, Eligible eligible, Violates violates) {
  const std::size_t n = s.size();
  const std::size_t chunks = chunk_count(exec, n);
  std::vector<TripleScan> partial(chunks);
  parallel_chunks(exec, n, [&](std::size_t begin, std::size_t end, std::size_t c) {
    TripleScan& out = partial[c];
    mpz_class scratch;
    mpz_class denom;
    for (std::size_t x = begin; x < end; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t xy = s.flat(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          const std::size_t yz = s.flat(y, z);
          const std::size_t xz = s.flat(x, z);
          if (!eligible(xy, yz)) continue;
          if (x == y && x != z && s.approx(x, z) > 0.0) out.positive_pair = true;
          if (s.compare_to_sum(xz, xy, yz, scratch) <= 0) continue;
          // triangle violated: ratio > 1
          mpz_add(denom.get_mpz_t(), s.numerator(x, y).get_mpz_t(), s.numerator(y, z).get_mpz_t());
          if (denom == 0) {
            out.unbounded = true;
          } else {
            out.ratio.offer(s.numerator(x, z), denom, s.approx(x, z) / (s.approx(x, y) + s.approx(y, z)));
          }
          if (!out.violated && violates(xz, xy, yz, denom)) {
            out.violated = true;
            out.x = x;
            out.y = y;
            out.z = z;
          }
        }
      }
    }
  });
  TripleScan merged;
  for (const auto& p : partial) {
    if (p.violated && !merged.violated) {
      merged.violated = true;
      merged.x = p.x;
      merged.y = p.y;
      merged.z = p.z;
    }
    merged.ratio.merge(p.ratio);
    merged.positive_pair = merged.positive_pair || p.positive_pair;
    merged.unbounded = merged.unbounded || p.unbounded;
  }
  return merged;
}

void fill_triangle_report(AxiomReport& r, const DistanceMatrix& m, const TripleScan& scan) {
  const Window& w = m.window();
  if (scan.violated) {
    r.verdict = Verdict::Fails;
    r.witness = {w[scan.x], w[scan.y], w[scan.z]};
    r.evidence = {{w[scan.x], w[scan.y], m.at(scan.x, scan.y)},
                  {w[scan.y], w[scan.z], m.at(scan.y, scan.z)},
                  {w[scan.x], w[scan.z], m.at(scan.x, scan.z)}};
  }
  if (scan.ratio.has) {
    r.extremal = Scalar(scan.ratio.value);
  } else if (scan.positive_pair) {
    r.extremal = Scalar(1);
  }
  if (scan.unbounded) r.parameters.emplace_back("unbounded_ratio", "true");
}

void validate_grid(const std::vector<Scalar>& grid) {
  if (grid.empty()) throw ArgumentError("delta grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].sign() <= 0) throw ArgumentError("delta grid entries must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1])) throw ArgumentError("delta grid must be strictly descending");
  }
}

std::size_t require_index(const Window& w, const Point& p) {
  const auto i = w.index_of(p);
  if (!i) throw DomainError("point '" + p.label() + "' is not in window " + w.description());
  return *i;
}

/// min over (y, z) with d(x,z) > eps of max(d(x,y), d(y,z)); nullopt when
/// no pair escapes the epsilon ball.
std::optional<Scalar> critical_delta(const DistanceMatrix& m, std::size_t x, const Scalar& eps) {
  std::optional<Scalar> best;
  const std::size_t n = m.size();
  for (std::size_t z = 0; z < n; ++z) {
    if (!(m.at(x, z) > eps)) continue;
    for (std::size_t y = 0; y < n; ++y) {
      const Scalar& c = max(m.at(x, y), m.at(y, z));
      if (!best || c < *best) best = c;
    }
  }
  return best;
}

/// Smallest (y, z) with d(x,y) <= delta, d(y,z) <= delta, d(x,z) > eps.
std::optional<std::pair<std::size_t, std::size_t>> n_violation(const DistanceMatrix& m, std::size_t x,
                                                               const Scalar& eps, const Scalar& delta) {
  for (std::size_t y = 0; y < m.size(); ++y) {
    if (m.at(x, y) > delta) continue;
    for (std::size_t z = 0; z < m.size(); ++z) {
      if (m.at(y, z) <= delta && m.at(x, z) > eps) return std::make_pair(y, z);
    }
  }
  return std::nullopt;
}

void pick_delta(AxiomReport& r, const std::optional<Scalar>& critical, const std::vector<Scalar>& grid) {
  for (const auto& delta : grid) {
    if (!critical || delta < *critical) {
      r.extremal = delta;
      return;
    }
  }
  r.verdict = Verdict::Fails;
}

}  // namespace

std::vector<AxiomReport> check_core_axioms(const DistanceMatrix& m, const Exec&) {
  return core_axioms(m.window(), [&m](std::size_t i, std::size_t j) { return m.at(i, j); });
}

std::vector<AxiomReport> check_core_axioms(const DistanceSpace& space, const Window& window, const Exec&) {
  return core_axioms(window, [&](std::size_t i, std::size_t j) { return space.distance(window[i], window[j]); });
}

AxiomReport check_triangle(const DistanceMatrix& m, const Exec& exec) {
  AxiomReport r{.axiom = Axiom::Triangle, .window = m.window().description()};
  const ScaledMatrix s(m);
  const auto scan = scan_triples(
      s, exec, [](std::size_t, std::size_t) { return true; },
      [](std::size_t, std::size_t, std::size_t, const mpz_class&) { return true; });
  fill_triangle_report(r, m, scan);
  return r;
}

AxiomReport check_triangle(const DistanceSpace& space, const Window& window, const Exec& exec) {
  return check_triangle(DistanceMatrix::materialize(space, window, exec), exec);
}

AxiomReport check_relaxed_triangle(const DistanceMatrix& m, const Scalar& a, const Scalar& delta, const Exec& exec) {
  if (a < Scalar(1)) throw ArgumentError("relaxed triangle constant a must be >= 1, got " + a.str());
  if (delta.sign() <= 0) throw ArgumentError("relaxed triangle delta must be positive, got " + delta.str());
  AxiomReport r{.axiom = Axiom::RelaxedTriangle, .window = m.window().description()};
  r.parameters = {{"a", a.str()}, {"delta", delta.str()}};
  const ScaledMatrix s(m);
  // scaled threshold: v <= delta  <=>  num <= floor(delta * den)
  mpz_class cap;
  {
    mpq_class scaled = delta.raw() * mpq_class(s.denominator());
    mpz_fdiv_q(cap.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  }
  const mpz_class a_num = a.numerator();
  const mpz_class a_den = a.denominator();
  auto within = [&](std::size_t idx) {
    const std::size_t n = s.size();
    return mpz_cmp(s.numerator(idx / n, idx % n).get_mpz_t(), cap.get_mpz_t()) <= 0;
  };
  const auto scan = scan_triples(
      s, exec, [&](std::size_t xy, std::size_t yz) { return within(xy) && within(yz); },
      [&](std::size_t xz, std::size_t, std::size_t, const mpz_class& sum) {
        const std::size_t n = s.size();
        // a_den * v(xz) > a_num * (v(xy) + v(yz))
        return a_den * s.numerator(xz / n, xz % n) > a_num * sum;
      });
  fill_triangle_report(r, m, scan);
  return r;
}

AxiomReport check_relaxed_triangle(const DistanceSpace& space, const Window& window, const Scalar& a,
                                   const Scalar& delta, const Exec& exec) {
  return check_relaxed_triangle(DistanceMatrix::materialize(space, window, exec), a, delta, exec);
}

std::vector<Scalar> default_delta_grid() {
  std::vector<Scalar> grid;
  for (std::uint64_t k = 1; k <= 24; ++k) grid.push_back(Scalar::dyadic(k));
  return grid;
}

AxiomReport check_N(const DistanceMatrix& m, const Point& x, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid) {
  if (epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
  validate_grid(delta_grid);
  const Window& w = m.window();
  const std::size_t xi = require_index(w, x);
  AxiomReport r{.axiom = Axiom::NDistance, .window = w.description()};
  r.parameters = {{"x", x.label()}, {"epsilon", epsilon.str()}};
  const auto critical = critical_delta(m, xi, epsilon);
  r.parameters.emplace_back("critical_delta", critical ? critical->str() : "none");
  pick_delta(r, critical, delta_grid);
  if (!r.holds()) {
    const auto v = n_violation(m, xi, epsilon, delta_grid.back());
    r.witness = {w[xi], w[v->first], w[v->second]};
    r.evidence = {{w[xi], w[v->first], m.at(xi, v->first)},
                  {w[v->first], w[v->second], m.at(v->first, v->second)},
                  {w[xi], w[v->second], m.at(xi, v->second)}};
  }
  return r;
}

AxiomReport check_N(const DistanceSpace& space, const Window& window, const Point& x, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid) {
  return check_N(DistanceMatrix::materialize(space, window), x, epsilon, delta_grid);
}

AxiomReport check_F(const DistanceMatrix& m, const Scalar& epsilon, const std::vector<Scalar>& delta_grid,
                    const Exec& exec) {
  if (epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
  validate_grid(delta_grid);
  const Window& w = m.window();
  const std::size_t n = m.size();
  std::vector<std::optional<Scalar>> partial(chunk_count(exec, n));
  parallel_chunks(exec, n, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t x = begin; x < end; ++x) {
      auto cx = critical_delta(m, x, epsilon);
      if (cx && (!partial[c] || *cx < *partial[c])) partial[c] = std::move(cx);
    }
  });
  std::optional<Scalar> critical;
  for (auto& p : partial) {
    if (p && (!critical || *p < *critical)) critical = std::move(p);
  }
  AxiomReport r{.axiom = Axiom::FDistance, .window = w.description()};
  r.parameters = {{"epsilon", epsilon.str()}, {"critical_delta", critical ? critical->str() : "none"}};
  pick_delta(r, critical, delta_grid);
  if (!r.holds()) {
    for (std::size_t x = 0; x < n; ++x) {
      if (const auto v = n_violation(m, x, epsilon, delta_grid.back())) {
        r.witness = {w[x], w[v->first], w[v->second]};
        r.evidence = {{w[x], w[v->first], m.at(x, v->first)},
                      {w[v->first], w[v->second], m.at(v->first, v->second)},
                      {w[x], w[v->second], m.at(x, v->second)}};
        break;
      }
    }
  }
  return r;
}

AxiomReport check_F(const DistanceSpace& space, const Window& window, const Scalar& epsilon,
                    const std::vector<Scalar>& delta_grid, const Exec& exec) {
  return check_F(DistanceMatrix::materialize(space, window, exec), epsilon, delta_grid, exec);
}

AxiomReport check_H(const DistanceMatrix& m, const Point& x, const Point& y) {
  if (x == y) throw ArgumentError("check_H needs two distinct points");
  const Window& w = m.window();
  const std::size_t xi = require_index(w, x);
  const std::size_t yi = require_index(w, y);
  AxiomReport r{.axiom = Axiom::HDistance, .window = w.description()};
  r.parameters = {{"x", x.label()}, {"y", y.label()}};
  std::optional<Scalar> best;
  std::size_t arg = 0;
  for (std::size_t z = 0; z < m.size(); ++z) {
    Scalar s = m.at(xi, z) + m.at(yi, z);
    if (!best || s < *best) {
      best = std::move(s);
      arg = z;
    }
    r.profile.push_back(*best);
  }
  r.extremal = *best;
  r.witness = {w[xi], w[yi], w[arg]};
  r.evidence = {{w[xi], w[arg], m.at(xi, arg)}, {w[yi], w[arg], m.at(yi, arg)}};
  if (best->is_zero()) r.verdict = Verdict::Fails;
  return r;
}

AxiomReport check_H(const DistanceSpace& space, const Window& window, const Point& x, const Point& y) {
  return check_H(DistanceMatrix::materialize(space, window), x, y);
}

bool replay(const DistanceSpace& space, const AxiomReport& report) {
  for (const auto& e : report.evidence) {
    if (space.distance(e.from, e.to) != e.value) return false;
  }
  return true;
}

}  // namespace dspace
