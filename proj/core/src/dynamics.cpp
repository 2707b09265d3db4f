#include "dspace/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "dspace/error.hpp"
#include "dspace/matrix.hpp"

namespace dspace {

OrbitTrace picard_orbit(const DistanceSpace& space, const SelfMap& map, const Point& start, std::size_t horizon) {
  if (horizon == 0) throw ArgumentError("orbit horizon must be at least 1");
  if (!space.domain().contains(start)) throw DomainError("orbit start '" + start.label() + "' is outside the domain");
  OrbitTrace t{.start = start, .horizon = horizon};
  t.points.reserve(horizon + 1);
  t.points.push_back(start);
  for (std::size_t n = 0; n < horizon; ++n) {
    Point next = map.apply(t.points.back());
    if (!space.domain().contains(next)) {
      throw DomainError("map '" + map.name + "' sends '" + t.points.back().label() + "' to '" + next.label() +
                        "', outside " + space.domain().describe());
    }
    t.gaps.push_back(space.distance(t.points.back(), next));
    t.points.push_back(std::move(next));
  }
  return t;
}

std::vector<std::size_t> default_ladder(std::size_t tail, std::size_t horizon) {
  std::vector<std::size_t> cuts{tail, tail + (horizon - tail) / 2, horizon - (horizon - tail) / 4};
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

ConvergenceVerdict analyze_convergence(const DistanceSpace& space, const OrbitTrace& trace, const Window& window,
                                       const Scalar& tol, std::size_t tail, std::vector<std::size_t> ladder,
                                       const Exec& exec) {
  return analyze_convergence(space, trace, DistanceMatrix::materialize(space, window, exec), tol, tail,
                             std::move(ladder), exec);
}

ConvergenceVerdict analyze_convergence(const DistanceSpace& space, const OrbitTrace& trace,
                                       const DistanceMatrix& m, const Scalar& tol, std::size_t tail,
                                       std::vector<std::size_t> ladder, const Exec& exec) {
  const Window& window = m.window();
  const CachedDistance dist(space, m);
  if (tol.sign() <= 0) throw ArgumentError("tolerance must be positive");
  if (tail >= trace.horizon) throw ArgumentError("empty tail: tail index must be below the horizon");
  if (ladder.empty()) ladder = default_ladder(tail, trace.horizon);
  for (const auto cut : ladder) {
    if (cut > trace.horizon) throw ArgumentError("ladder cut beyond the horizon");
  }

  ConvergenceVerdict v{.tail = tail, .tol = tol, .ladder = ladder};
  const auto& xs = trace.points;
  const std::size_t T = trace.horizon;
  std::vector<std::optional<std::size_t>> slot(xs.size());
  for (std::size_t n = 0; n <= T; ++n) slot[n] = dist.index_of(xs[n]);

  // Cauchy: max over distinct tail indices, both orders.
  v.cauchy_max = Scalar(0);
  for (std::size_t n = tail; n <= T; ++n) {
    for (std::size_t m = tail; m <= T; ++m) {
      if (n == m) continue;
      Scalar d = dist.at(slot[n], slot[m], xs[n], xs[m]);
      if (d > v.cauchy_max) v.cauchy_max = std::move(d);
    }
  }
  v.cauchy = v.cauchy_max <= tol;

  v.max_tail_gap = Scalar(0);
  for (std::size_t n = tail; n < T; ++n) v.max_tail_gap = max(v.max_tail_gap, trace.gaps[n]);
  v.gaps_vanish = v.max_tail_gap <= tol;

  const bool constant_tail = std::all_of(xs.begin() + static_cast<std::ptrdiff_t>(tail), xs.end(),
                                         [&](const Point& p) { return p == xs[tail]; });

  const std::size_t W = window.size();
  enum class Role : unsigned char { None, Limit, LimitDislocated };
  struct Row {
    bool resolved = true;
    Role role = Role::None;
    bool accumulates = false;
  };
  std::vector<Row> rows(W);
  parallel_chunks(exec, W, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      Row& row = rows[i];
      const Point& x = window[i];
      for (std::size_t j = 0; j < W && row.resolved; ++j) {
        if (j == i || m.at(i, j) > tol || m.at(j, i) > tol) continue;
        if (m.at(i, j) + m.at(j, i) <= tol) row.resolved = false;
      }
      if (constant_tail && x == xs[tail]) {
        row.resolved = true;
        row.role = Role::LimitDislocated;
        row.accumulates = true;
        continue;
      }
      if (!row.resolved) continue;
      bool plain = true;
      bool dislocated = true;
      std::vector<bool> close(T + 1, false);
      for (std::size_t n = 0; n <= T; ++n) {
        const Scalar forward = dist.at(i, slot[n], x, xs[n]);
        close[n] = forward <= tol;
        if (n < tail) continue;
        if (!close[n]) {
          plain = false;
          dislocated = false;
        } else if (dislocated && forward + dist.at(slot[n], i, xs[n], x) > tol) {
          dislocated = false;
        }
      }
      row.role = dislocated ? Role::LimitDislocated : (plain ? Role::Limit : Role::None);
      row.accumulates = std::all_of(ladder.begin(), ladder.end(), [&](std::size_t cut) {
        return std::any_of(close.begin() + static_cast<std::ptrdiff_t>(cut), close.end(), [](bool b) { return b; });
      });
    }
  });
  for (std::size_t i = 0; i < W; ++i) {
    if (!rows[i].resolved) {
      v.unresolved.push_back(window[i]);
      continue;
    }
    if (rows[i].role != Role::None) v.limits.push_back(window[i]);
    if (rows[i].role == Role::LimitDislocated) v.dislocated_limits.push_back(window[i]);
    if (rows[i].accumulates) v.accumulation.push_back(window[i]);
  }
  return v;
}

LipschitzEstimate lipschitz_estimate(const DistanceSpace& space, const SelfMap& map, const Window& window,
                                     const Exec& exec) {
  if (window.size() < 2) throw ArgumentError("Lipschitz estimate needs at least two window points");
  return lipschitz_estimate(space, map, DistanceMatrix::materialize(space, window, exec), exec);
}

LipschitzEstimate lipschitz_estimate(const DistanceSpace& space, const SelfMap& map, const DistanceMatrix& m,
                                     const Exec& exec) {
  const Window& window = m.window();
  const CachedDistance dist(space, m);
  const std::size_t n = window.size();
  if (n < 2) throw ArgumentError("Lipschitz estimate needs at least two window points");
  std::vector<Point> images;
  std::vector<std::optional<std::size_t>> slot;
  images.reserve(n);
  slot.reserve(n);
  for (const auto& p : window.points()) {
    Point q = map.apply(p);
    if (!space.domain().contains(q)) {
      throw DomainError("map '" + map.name + "' sends '" + p.label() + "' outside the domain");
    }
    slot.push_back(dist.index_of(q));
    images.push_back(std::move(q));
  }

  struct Best {
    bool has = false;
    Scalar value;
    double approx = 0.0;
    std::size_t i = 0, j = 0;
  };
  std::vector<Best> partial(chunk_count(exec, n));
  parallel_chunks(exec, n, [&](std::size_t begin, std::size_t end, std::size_t c) {
    Best& best = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Scalar& before = m.at(i, j);
        if (before.is_zero()) continue;
        const Scalar after = dist.at(slot[i], slot[j], images[i], images[j]);
        const double approx = after.to_double() / before.to_double();
        if (best.has && approx < best.approx * (1.0 - std::ldexp(1.0, -40))) continue;
        Scalar ratio = after / before;
        if (!best.has || ratio > best.value) {
          best.approx = ratio.to_double();
          best.value = std::move(ratio);
          best.i = i;
          best.j = j;
          best.has = true;
        }
      }
    }
  });
  std::optional<Best> merged;
  for (auto& b : partial) {
    if (b.has && (!merged || b.value > merged->value)) merged = std::move(b);
  }
  if (!merged) throw ArgumentError("every window pair is at distance 0; Lipschitz ratio undefined");
  return {merged->value, window[merged->i], window[merged->j]};
}

std::vector<PeriodicPoint> FixedPointReport::non_fixed_periodic() const {
  std::vector<PeriodicPoint> out;
  for (const auto& p : periodic) {
    if (p.period > 1) out.push_back(p);
  }
  return out;
}

FixedPointReport fixed_and_periodic_points(const DistanceSpace& space, const SelfMap& map, const Window& window,
                                           std::size_t max_period) {
  if (max_period == 0) throw ArgumentError("max_period must be at least 1");
  FixedPointReport r{.max_period = max_period};
  for (const auto& x : window.points()) {
    Point y = map.apply(x);
    if (space.domain().contains(y) && space.symmetric_distance(x, y).is_zero()) r.fixed.push_back(x);
    for (std::size_t p = 1; p <= max_period; ++p) {
      if (!space.domain().contains(y)) break;
      if (y == x) {
        r.periodic.push_back({x, p});
        break;
      }
      y = map.apply(y);
    }
  }
  return r;
}

}  // namespace dspace
