#include "dspace/gallery.hpp"

#include <algorithm>
#include <memory>

#include "dspace/axioms.hpp"
#include "dspace/error.hpp"
#include "dspace/matrix.hpp"

namespace dspace {

Scalar harmonic_sum(std::int64_t lo, std::int64_t hi) {
  if (lo < 1) throw ArgumentError("harmonic_sum needs lo >= 1, got " + std::to_string(lo));
  mpq_class sum = 0;
  for (std::int64_t m = lo; m <= hi; ++m) sum += mpq_class(1, static_cast<unsigned long>(m));
  return Scalar(std::move(sum));
}

std::optional<std::size_t> IntervalTable::interval_of(std::uint64_t m) const {
  if (starts.empty() || m < starts.front() || m >= starts.back()) return std::nullopt;
  const auto it = std::upper_bound(starts.begin(), starts.end(), m);
  return static_cast<std::size_t>(it - starts.begin()) - 1;
}

IntervalTable build_intervals(std::size_t count) {
  if (count == 0) throw ArgumentError("build_intervals needs count >= 1");
  IntervalTable t;
  t.starts.push_back(1);
  for (std::size_t n = 0; n < count; ++n) {
    const std::uint64_t i = t.starts.back();
    mpq_class sum = 0;
    std::uint64_t m = i;
    for (;; ++m) {
      sum += mpq_class(1, m);
      if (sum >= 1) break;
    }
    const std::uint64_t k = m + 1;  // least k with sum_{i <= m < k} >= 1
    t.middles.push_back(k);
    sum = 0;
    for (m = k + 1;; ++m) {
      sum += mpq_class(1, m);
      if (sum >= 1) break;
    }
    t.starts.push_back(m);
  }
  return t;
}

std::optional<std::string> interval_table_violation(const IntervalTable& t) {
  if (t.middles.empty()) return "table has no intervals";
  if (t.starts.size() != t.middles.size() + 1) return "table needs exactly one more start than middles";
  if (t.starts.front() != 1) return "i_1 must be 1";
  const Scalar one(1);
  for (std::size_t n = 0; n < t.count(); ++n) {
    const auto i = static_cast<std::int64_t>(t.starts[n]);
    const auto k = static_cast<std::int64_t>(t.middles[n]);
    const auto next = static_cast<std::int64_t>(t.starts[n + 1]);
    const std::string at = " at n=" + std::to_string(n + 1);
    if (!(i < k && k < next)) return "ordering i_n < k_n < i_{n+1} fails" + at;
    if (!(harmonic_sum(i, k - 2) < one)) return "sum_{i_n <= m < k_n - 1} 1/m < 1 fails" + at;
    if (!(harmonic_sum(k + 2, next) < one)) return "sum_{k_n + 1 < m <= i_{n+1}} 1/m < 1 fails" + at;
    if (!(harmonic_sum(i, k - 1) >= one)) return "sum_{i_n <= m < k_n} 1/m >= 1 fails" + at;
    if (!(harmonic_sum(k + 1, next) >= one)) return "sum_{k_n < m <= i_{n+1}} 1/m >= 1 fails" + at;
  }
  return std::nullopt;
}

Window GalleryInstance::default_window() const { return enumerate(space, defaults.window); }

HarnessConfig GalleryInstance::harness_config() const {
  HarnessConfig c = default_harness_config(default_window());
  c.horizon = defaults.horizon;
  c.tol = defaults.tol;
  c.tail = defaults.tail;
  c.max_period = defaults.max_period;
  auto& starts = c.starts;
  starts.erase(std::remove(starts.begin(), starts.end(), defaults.start), starts.end());
  starts.insert(starts.begin(), defaults.start);
  return c;
}

bool GalleryVerification::all_agree() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.agrees; });
}

GalleryVerification verify_gallery(const GalleryInstance& instance, const Exec& exec) {
  GalleryVerification v{.instance = instance.id,
                        .space = instance.space.name(),
                        .window = instance.default_window().description(),
                        .conventions = instance.conventions};
  for (const auto& check : instance.expected) {
    PropertyOutcome out;
    try {
      out = check.run(instance, exec);
    } catch (const std::exception& e) {
      out.observed = std::string("error: ") + e.what();
      out.agrees = false;
    }
    v.properties.push_back({check.id, check.description, check.expected, out.observed, out.agrees, out.evidence});
  }
  return v;
}

namespace {

using nlohmann::json;

json labels(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(p.label());
  return a;
}

json report_brief(const AxiomReport& r) {
  json j{{"axiom", std::string(to_string(r.axiom))}, {"verdict", std::string(to_string(r.verdict))}};
  if (!r.witness.empty()) j["witness"] = labels(r.witness);
  if (r.extremal) j["extremal"] = r.extremal->str();
  return j;
}

PropertyOutcome verdict_outcome(bool ok, std::string observed, json evidence) {
  return {std::move(observed), ok, std::move(evidence)};
}

bool contains(const std::vector<Point>& v, const Point& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

// ---- checks shared by several instances ----

PropertyCheck triangle_check(std::string id, std::string description) {
  return {std::move(id), std::move(description), "holds_on_window",
          [](const GalleryInstance& g, const Exec& exec) {
            const auto m = DistanceMatrix::materialize(g.space, g.default_window(), exec);
            const auto core = check_core_axioms(m, exec);
            const auto tri = check_triangle(m, exec);
            const bool ok = core[0].holds() && core[1].holds() && tri.holds() && tri.extremal &&
                            *tri.extremal <= Scalar(1);
            json ev{{"nonneg", report_brief(core[0])},
                    {"separation", report_brief(core[1])},
                    {"triangle", report_brief(tri)},
                    {"ordered_triples", std::to_string(m.size() * m.size() * m.size())},
                    {"completeness", std::string(to_string(g.space.completeness()))}};
            return verdict_outcome(ok, std::string(to_string(tri.verdict)), std::move(ev));
          }};
}

PropertyCheck fixed_point_free_check(std::string id, std::string description, bool periodic_allowed) {
  return {std::move(id), std::move(description), periodic_allowed ? "fixed=[]" : "fixed=[] periodic=[]",
          [periodic_allowed](const GalleryInstance& g, const Exec&) {
            const auto r = fixed_and_periodic_points(g.space, g.map, g.default_window(), g.defaults.max_period);
            json periodic = json::array();
            for (const auto& p : r.periodic) periodic.push_back({{"point", p.point.label()}, {"period", p.period}});
            const bool ok = r.fixed.empty() && (periodic_allowed || r.periodic.empty());
            std::string observed = "fixed=" + labels(r.fixed).dump();
            if (!periodic_allowed) observed += " periodic=" + periodic.dump();
            return verdict_outcome(ok, observed, json{{"fixed", labels(r.fixed)}, {"periodic", periodic}});
          }};
}

json convergence_json(const ConvergenceVerdict& v) {
  return json{{"cauchy", v.cauchy},
              {"cauchy_max", v.cauchy_max.str()},
              {"tail", v.tail},
              {"tol", v.tol.str()},
              {"limits", labels(v.limits)},
              {"dislocated_limits", labels(v.dislocated_limits)},
              {"accumulation", labels(v.accumulation)},
              {"unresolved_count", v.unresolved.size()},
              {"gaps_vanish", v.gaps_vanish},
              {"max_tail_gap", v.max_tail_gap.str()}};
}

ConvergenceVerdict default_convergence(const GalleryInstance& g, const Exec& exec,
                                       std::optional<OrbitTrace>* out = nullptr) {
  const auto trace = picard_orbit(g.space, g.map, g.defaults.start, g.defaults.horizon);
  auto v = analyze_convergence(g.space, trace, g.default_window(), g.defaults.tol, g.defaults.tail, {}, exec);
  if (out) *out = trace;
  return v;
}

/// H-minimum of (x, y) on naturals windows ending at `bound` and `bound-1`:
/// the analytic value is 2 * 2^-bound with witness z = bound.
PropertyCheck h_decay_check(std::string id, std::string description, Point x, Point y,
                            std::vector<std::uint64_t> bounds) {
  std::string expected = "fails: extremal = 2^(1-N) at z = N, halving as N grows";
  return {std::move(id), std::move(description), std::move(expected),
          [x, y, bounds](const GalleryInstance& g, const Exec&) {
            json rows = json::array();
            bool ok = true;
            for (const auto bound : bounds) {
              for (const auto b : {bound - 1, bound}) {
                const Window w = enumerate(g.space, WindowLimits{.nat_max = b});
                const auto r = check_H(g.space, w, x, y);
                const Scalar analytic = Scalar(2) * Scalar::dyadic(b);
                const bool row_ok = r.extremal && *r.extremal == analytic && r.witness.back() == Point::nat(b);
                ok = ok && row_ok;
                rows.push_back({{"window_bound", b},
                                {"extremal", r.extremal ? r.extremal->str() : "none"},
                                {"analytic", analytic.str()},
                                {"witness_z", r.witness.back().label()}});
              }
            }
            return verdict_outcome(ok, ok ? "fails: extremal matches 2^(1-N) and halves" : "mismatch",
                                   json{{"pair", labels({x, y})}, {"windows", rows}});
          }};
}

// ---- Example 3.1 ----

GalleryInstance make_3_1() {
  const Point a = Point::atom("a", 0);
  const Point b = Point::atom("b", 1);
  auto dist = [](const Point& x, const Point& y) -> Scalar {
    if (x == y) return Scalar(0);
    if (x.is_nat() && y.is_nat()) return abs(Scalar::dyadic(x.value()) - Scalar::dyadic(y.value()));
    if (x.is_atom() && y.is_nat()) return Scalar::dyadic(y.value());
    return Scalar(1);  // d(n, a) = d(n, b) = d(a, b) = d(b, a) = 1
  };
  DistanceSpace space("Ex3.1", Domain::naturals_plus_atoms({a, b}, 1), dist,
                      Completeness::AssumedFromGalleryMetadata);
  SelfMap phi{"phi", [a, b](const Point& p) {
                if (p == a) return b;
                if (p == b) return a;
                return Point::nat(p.value() + 1);
              }};
  GalleryInstance g{.id = "3.1",
                    .space = std::move(space),
                    .map = std::move(phi),
                    .defaults = {.window = {.nat_max = 64}, .horizon = 64, .tail = 32, .start = Point::nat(1)},
                    .conventions = {"d(b, a) = 1: the construction is symmetric in a and b"}};

  g.expected.push_back(triangle_check("Ex3.1/quasimetric", "(X, d) is a quasimetric space"));
  g.expected.push_back(
      {"Ex3.1/(iii)-(iv)", "d(a,n) = d(b,n) = 2^-n and d(n,a) = d(n,b) = d(a,b) = 1 on the window", "exact",
       [a, b](const GalleryInstance& gi, const Exec&) {
         const Window w = gi.default_window();
         bool ok = gi.space.distance(a, b) == Scalar(1);
         std::size_t checked = 0;
         for (const auto& n : w.points()) {
           if (!n.is_nat()) continue;
           const Scalar expect = Scalar::dyadic(n.value());
           ok = ok && gi.space.distance(a, n) == expect && gi.space.distance(b, n) == expect &&
                gi.space.distance(n, a) == Scalar(1) && gi.space.distance(n, b) == Scalar(1);
           ++checked;
         }
         return verdict_outcome(ok, ok ? "exact" : "mismatch", json{{"naturals_checked", checked}});
       }});
  g.expected.push_back(h_decay_check("Ex3.1/not-H", "d is not an H-distance: d(a,n) + d(b,n) = 2^(1-n)", a, b,
                                     {20, 64}));
  g.expected.push_back(
      {"Ex3.1/orbit", "O(1, phi) is Cauchy, converges to both a and b, and has no dislocated limit",
       "cauchy limits>={a,b} dislocated=[]", [a](const GalleryInstance& gi, const Exec& exec) {
         std::optional<OrbitTrace> trace;
         const auto v = default_convergence(gi, exec, &trace);
         const Point b2 = Point::atom("b", 1);
         bool ds_exact = true;
         for (const auto& x : trace->points) {
           ds_exact = ds_exact && gi.space.symmetric_distance(a, x) == Scalar(1) + Scalar::dyadic(x.value());
         }
         const bool ok = v.cauchy && contains(v.limits, a) && contains(v.limits, b2) && v.dislocated_limits.empty() &&
                         ds_exact;
         json ev = convergence_json(v);
         ev["ds_a_xn_equals_1_plus_2^-xn"] = ds_exact;
         return verdict_outcome(ok, ok ? "cauchy limits>={a,b} dislocated=[]" : "mismatch", std::move(ev));
       }});
  g.expected.push_back({"Ex3.1/fixed-point-free", "phi has no fixed point; a and b have period 2",
                        "fixed=[] periodic={a:2,b:2}", [a, b](const GalleryInstance& gi, const Exec&) {
                          const auto r = fixed_and_periodic_points(gi.space, gi.map, gi.default_window(),
                                                                   gi.defaults.max_period);
                          const std::vector<PeriodicPoint> expect{{a, 2}, {b, 2}};
                          const bool ok = r.fixed.empty() && r.periodic == expect;
                          json periodic = json::array();
                          for (const auto& p : r.periodic) {
                            periodic.push_back({{"point", p.point.label()}, {"period", p.period}});
                          }
                          return verdict_outcome(ok, ok ? "fixed=[] periodic={a:2,b:2}" : "mismatch",
                                                 json{{"fixed", labels(r.fixed)}, {"periodic", periodic}});
                        }});
  return g;
}

// ---- Example 3.2 ----

GalleryInstance make_3_2() {
  auto dist = [](const Point& x, const Point& y) -> Scalar {
    if (x == y) return Scalar(0);
    return Scalar::dyadic(y.value());
  };
  DistanceSpace space("Ex3.2", Domain::naturals(0), dist, Completeness::AssumedFromGalleryMetadata);
  SelfMap g_map{"g", [](const Point& p) { return Point::nat(p.value() + 1); }};
  GalleryInstance g{.id = "3.2",
                    .space = std::move(space),
                    .map = std::move(g_map),
                    .defaults = {.window = {.nat_max = 64}, .horizon = 64, .tail = 32, .start = Point::nat(0)}};

  g.expected.push_back(
      {"Ex3.2/P1", "O(n, g) is Cauchy and converges to every m; no dislocated limit",
       "cauchy limits>=2 dislocated=[]", [](const GalleryInstance& gi, const Exec& exec) {
         const auto v = default_convergence(gi, exec);
         const bool ok = v.cauchy && v.limits.size() >= 2 && v.dislocated_limits.empty();
         return verdict_outcome(ok, ok ? "cauchy limits>=2 dislocated=[]" : "mismatch", convergence_json(v));
       }});
  g.expected.push_back(triangle_check("Ex3.2/P2", "(X, d) is a quasimetric space (completeness assumed: P3)"));
  g.expected.push_back(
      {"Ex3.2/asymmetric", "d is not symmetric: d(0,1) = 1/2, d(1,0) = 1", "symmetry fails at (0,1)",
       [](const GalleryInstance& gi, const Exec& exec) {
         const auto core = check_core_axioms(gi.space, enumerate(gi.space, {.nat_max = 8}), exec);
         const auto& sym = core[2];
         const bool ok = !sym.holds() && sym.witness == std::vector<Point>{Point::nat(0), Point::nat(1)} &&
                         sym.evidence[0].value == Scalar(1, 2) && sym.evidence[1].value == Scalar(1);
         return verdict_outcome(ok, ok ? "symmetry fails at (0,1)" : "mismatch", report_brief(sym));
       }});
  g.expected.push_back(
      {"Ex3.2/P4", "d(g(x), g(y)) = d(x, y) / 2 for all distinct x, y", "lipschitz=1/2 exact",
       [](const GalleryInstance& gi, const Exec& exec) {
         const Window w = gi.default_window();
         const auto lip = lipschitz_estimate(gi.space, gi.map, w, exec);
         bool identity = true;
         for (const auto& x : w.points()) {
           for (const auto& y : w.points()) {
             if (x == y) continue;
             identity = identity &&
                        gi.space.distance(gi.map.apply(x), gi.map.apply(y)) * Scalar(2) == gi.space.distance(x, y);
           }
         }
         const bool ok = lip.value == Scalar(1, 2) && identity;
         return verdict_outcome(ok, "lipschitz=" + lip.value.str() + (identity ? " exact" : " not-exact"),
                                json{{"lipschitz", lip.value.str()},
                                     {"witness", labels({lip.x, lip.y})},
                                     {"halving_identity_all_pairs", identity}});
       }});
  g.expected.push_back(fixed_point_free_check("Ex3.2/Fix", "Fix(g) is empty and g has no periodic points", false));
  g.expected.push_back(h_decay_check("Ex3.2/not-H", "d is not an H-distance: d(0,z) + d(1,z) = 2^(1-z)",
                                     Point::nat(0), Point::nat(1), {20, 64}));
  g.expected.push_back(
      {"Ex3.2/P5", "ball of radius 2^-k about x is {x} + {m : k < m <= N} on the window (cofinite shape)",
       "cofinite ball shape", [](const GalleryInstance& gi, const Exec&) {
         constexpr std::uint64_t N = 16;
         const Window w = enumerate(gi.space, {.nat_max = N});
         std::size_t balls = 0;
         bool ok = true;
         for (std::uint64_t k = 0; k < N; ++k) {
           const Scalar radius = Scalar::dyadic(k);
           for (const auto& x : w.points()) {
             for (const auto& y : w.points()) {
               const bool expect = (y == x) || (y.value() > k);
               ok = ok && ball_contains(gi.space, x, radius, y) == expect;
             }
             ++balls;
           }
         }
         return verdict_outcome(ok, ok ? "cofinite ball shape" : "mismatch",
                                json{{"window_bound", N}, {"balls_checked", balls}});
       }});
  return g;
}

// ---- Example 3.3 ----

struct HarmonicIntervals {
  IntervalTable table;
  std::vector<Scalar> prefix;  // prefix[n] = sum_{m <= n} 1/m
  std::vector<double> approx;  // double shadow of prefix

  // min{1, prefix[hi] - prefix[lo]} for lo <= hi; the shadow settles the
  // clamp whenever it is off by more than any rounding error.
  Scalar capped(std::uint64_t lo, std::uint64_t hi) const {
    if (approx[hi] - approx[lo] > 1.0 + 1e-9) return Scalar(1);
    return min(Scalar(1), prefix[hi] - prefix[lo]);
  }
  Scalar sum(std::uint64_t lo, std::uint64_t hi) const {  // min{1, sum_{lo <= m <= hi}}
    return hi < lo ? Scalar(0) : capped(lo - 1, hi);
  }
};

GalleryInstance make_3_3(std::size_t count) {
  if (count == 0) throw ArgumentError("example 3.3 needs at least one interval");
  auto data = std::make_shared<HarmonicIntervals>();
  data->table = build_intervals(count + 1);
  const std::uint64_t top = data->table.starts.back();
  data->prefix.reserve(top + 1);
  data->prefix.emplace_back(0);
  data->approx.push_back(0.0);
  {
    mpq_class running = 0;
    for (std::uint64_t m = 1; m <= top; ++m) {
      running += mpq_class(1, m);
      data->prefix.emplace_back(running);
      data->approx.push_back(running.get_d());
    }
  }
  const Point mu = Point::atom("mu", 0);
  const Point nu = Point::atom("nu", 1);
  auto dist = [data, mu](const Point& x, const Point& y) -> Scalar {
    const Scalar one(1);
    if (x == y) return Scalar(0);
    if (x.is_nat() && y.is_nat()) return data->capped(std::min(x.value(), y.value()), std::max(x.value(), y.value()));
    if (!x.is_atom() || !y.is_nat()) return one;  // d(n, mu) = d(n, nu) = d(mu, nu) = d(nu, mu) = 1
    const std::uint64_t m = y.value();
    const std::size_t n = *data->table.interval_of(m);
    const std::uint64_t lo = data->table.starts[n];
    const std::uint64_t mid = data->table.middles[n];
    const std::uint64_t hi = data->table.starts[n + 1];
    if (x == mu) {
      if (m < mid) return data->sum(lo, m);
      if (m == mid) return one;
      return data->sum(m + 1, hi);
    }
    if (m < mid) return data->sum(m + 1, mid);
    if (m == mid) return Scalar(1) / Scalar(static_cast<long>(mid));
    return data->sum(mid, m);
  };
  DistanceSpace space("Ex3.3", Domain::naturals_plus_atoms({mu, nu}, 1, top - 1), dist,
                      Completeness::AssumedFromGalleryMetadata);
  SelfMap phi{"phi", [](const Point& p) { return p.is_atom() ? p : Point::nat(p.value() + 1); }};

  IntervalTable shown;
  shown.starts.assign(data->table.starts.begin(), data->table.starts.begin() + static_cast<std::ptrdiff_t>(count + 1));
  shown.middles.assign(data->table.middles.begin(), data->table.middles.begin() + static_cast<std::ptrdiff_t>(count));
  const std::uint64_t window_top = shown.starts.back();

  GalleryInstance g{
      .id = "3.3",
      .space = std::move(space),
      .map = std::move(phi),
      .defaults = {.window = {.nat_max = window_top},
                   .horizon = window_top - 1,
                   .tail = (window_top - 1) / 2,
                   .start = Point::nat(1)},
      .conventions = {"intervals are half-open [i_n, i_{n+1}), so i_{n+1} belongs to the next interval only",
                      "min{1, .} is applied to both second-part formulas",
                      "i_n, k_n are the greedy-minimal sequences"},
      .intervals = shown};

  g.expected.push_back(
      {"Ex3.3/intervals", "i_n, k_n satisfy 1 = i_1, i_n < k_n < i_{n+1} and the harmonic bounds", "valid",
       [](const GalleryInstance& gi, const Exec&) {
         const auto& t = *gi.intervals;
         const auto bad = interval_table_violation(t);
         json ev{{"i", t.starts}, {"k", t.middles}};
         if (bad) ev["violation"] = *bad;
         return verdict_outcome(!bad, bad ? *bad : "valid", std::move(ev));
       }});
  g.expected.push_back(
      {"Ex3.3/C1-C5", "0 <= d <= 1, d(mu, k_n) = 1 and d(nu, k_n) = 1/k_n", "exact",
       [mu, nu](const GalleryInstance& gi, const Exec& exec) {
         const auto m = DistanceMatrix::materialize(gi.space, gi.default_window(), exec);
         bool ok = std::all_of(m.values().begin(), m.values().end(),
                               [](const Scalar& v) { return v.sign() >= 0 && v <= Scalar(1); });
         for (const auto k : gi.intervals->middles) {
           ok = ok && gi.space.distance(mu, Point::nat(k)) == Scalar(1) &&
                gi.space.distance(nu, Point::nat(k)) == Scalar(1) / Scalar(static_cast<long>(k));
         }
         return verdict_outcome(ok, ok ? "exact" : "mismatch", json{{"entries", m.values().size()}});
       }});
  g.expected.push_back(triangle_check("Ex3.3/P2", "(X, d) is a quasimetric space"));
  g.expected.push_back(
      {"Ex3.3/P3", "d(phi x, phi y) <= 2 d(x, y) for all window pairs", "lipschitz<=2",
       [](const GalleryInstance& gi, const Exec& exec) {
         const auto lip = lipschitz_estimate(gi.space, gi.map, gi.default_window(), exec);
         const bool ok = lip.value <= Scalar(2);
         return verdict_outcome(ok, ok ? "lipschitz<=2" : "lipschitz>2",
                                json{{"lipschitz", lip.value.str()}, {"witness", labels({lip.x, lip.y})}});
       }});
  g.expected.push_back(
      {"Ex3.3/P4", "gaps of O(1, phi) are d(m, m+1) = min{1, 1/(m+1)} and vanish", "exact",
       [](const GalleryInstance& gi, const Exec&) {
         const auto trace = picard_orbit(gi.space, gi.map, gi.defaults.start, gi.defaults.horizon);
         bool ok = true;
         for (std::size_t n = 0; n < trace.gaps.size(); ++n) {
           const long m = static_cast<long>(trace.points[n].value());
           ok = ok && trace.gaps[n] == min(Scalar(1), Scalar(1, m + 1));
         }
         for (std::size_t n = 1; n < trace.gaps.size(); ++n) ok = ok && trace.gaps[n] < trace.gaps[n - 1];
         return verdict_outcome(ok, ok ? "exact" : "mismatch",
                                json{{"horizon", trace.horizon},
                                     {"first_gaps", json::array({trace.gaps[0].str(), trace.gaps[1].str()})},
                                     {"last_gap", trace.gaps.back().str()}});
       }});
  g.expected.push_back(
      {"Ex3.3/Fix", "Fix(phi) = {mu, nu}", "fixed=[\"mu\",\"nu\"]", [mu, nu](const GalleryInstance& gi, const Exec&) {
         const auto r = fixed_and_periodic_points(gi.space, gi.map, gi.default_window(), gi.defaults.max_period);
         const bool ok = r.fixed == std::vector<Point>{mu, nu} && r.non_fixed_periodic().empty();
         return verdict_outcome(ok, "fixed=" + labels(r.fixed).dump(), json{{"fixed", labels(r.fixed)}});
       }});
  g.expected.push_back(
      {"Ex3.3/P7", "mu and nu are accumulation points of O(1, phi): on I_n the minima are 1/i_{n+1} and 1/k_n",
       "minima 1/i_{n+1} and 1/k_n, strictly decreasing", [mu, nu](const GalleryInstance& gi, const Exec&) {
         const auto& t = *gi.intervals;
         const auto trace = picard_orbit(gi.space, gi.map, gi.defaults.start, gi.defaults.horizon);
         json rows = json::array();
         bool ok = true;
         std::optional<Scalar> prev_mu, prev_nu;
         for (std::size_t n = 0; n < t.count(); ++n) {
           std::optional<Scalar> best_mu, best_nu;
           for (const auto& x : trace.points) {
             if (x.value() < t.starts[n] || x.value() >= t.starts[n + 1]) continue;
             const Scalar dm = gi.space.distance(mu, x);
             const Scalar dn = gi.space.distance(nu, x);
             if (!best_mu || dm < *best_mu) best_mu = dm;
             if (!best_nu || dn < *best_nu) best_nu = dn;
           }
           const Scalar want_mu(1, static_cast<long>(t.starts[n + 1]));
           const Scalar want_nu(1, static_cast<long>(t.middles[n]));
           ok = ok && best_mu && *best_mu == want_mu && best_nu && *best_nu == want_nu;
           if (prev_mu) ok = ok && *best_mu < *prev_mu && *best_nu < *prev_nu;
           prev_mu = best_mu;
           prev_nu = best_nu;
           rows.push_back({{"interval", n + 1}, {"min_d_mu", best_mu->str()}, {"min_d_nu", best_nu->str()}});
         }
         // The orbit reaches i_{count+1}, the first point of the next interval.
         Scalar overall_mu(1), overall_nu(1);
         for (const auto& x : trace.points) {
           overall_mu = min(overall_mu, gi.space.distance(mu, x));
           overall_nu = min(overall_nu, gi.space.distance(nu, x));
         }
         const std::size_t last = t.count() - 1;
         ok = ok && overall_mu <= Scalar(1, static_cast<long>(t.starts[last])) &&
              overall_nu <= Scalar(1, static_cast<long>(t.middles[last]));
         return verdict_outcome(ok, ok ? "minima 1/i_{n+1} and 1/k_n, strictly decreasing" : "mismatch",
                                json{{"intervals", rows},
                                     {"orbit_min_d_mu", overall_mu.str()},
                                     {"orbit_min_d_nu", overall_nu.str()}});
       }});
  g.expected.push_back(
      {"Ex3.3/P8", "O(1, phi) does not converge: no plain limit on the window", "limits=[] not-cauchy",
       [](const GalleryInstance& gi, const Exec& exec) {
         const auto v = default_convergence(gi, exec);
         const bool ok = v.limits.empty() && !v.cauchy;
         return verdict_outcome(ok, ok ? "limits=[] not-cauchy" : "mismatch", convergence_json(v));
       }});
  return g;
}

// ---- Example 3.4 ----

GalleryInstance make_3_4(std::uint64_t q_max, std::uint64_t r_max) {
  if (q_max == 0 || r_max == 0) throw ArgumentError("example 3.4 bounds must be positive");
  auto dist = [](const Point& x, const Point& y) -> Scalar {
    if (x == y) return Scalar(0);
    if (x.limit_index() == y.limit_index()) return abs(Scalar::dyadic(x.offset()) - Scalar::dyadic(y.offset()));
    if (y.limit_index() < x.limit_index()) return Scalar::dyadic(y.offset());
    return Scalar(1) + Scalar::dyadic(y.offset());
  };
  DistanceSpace space("Ex3.4", Domain::ordinal_grid(), dist, Completeness::AssumedFromGalleryMetadata);
  SelfMap g_map{"g", [](const Point& p) { return Point::ord(p.limit_index(), p.offset() + 1); }};
  GalleryInstance g{.id = "3.4",
                    .space = std::move(space),
                    .map = std::move(g_map),
                    .defaults = {.window = {.q_max = q_max, .r_max = r_max},
                                 .horizon = 64,
                                 .tail = 32,
                                 .start = Point::ord(0, 0)},
                    .conventions = {"ordinals truncated below w^2 as pairs (q, r) = w*q + r"}};

  g.expected.push_back(triangle_check("Ex3.4/P3", "(X, d) is a quasimetric space"));
  g.expected.push_back(
      {"Ex3.4/P4", "d(g a, g b) < d(a, b) for all distinct a, b; same-limit-part pairs contract by exactly 1/2",
       "strict contraction", [](const GalleryInstance& gi, const Exec& exec) {
         const Window w = gi.default_window();
         bool strict = true;
         bool halving = true;
         for (const auto& x : w.points()) {
           for (const auto& y : w.points()) {
             if (x == y) continue;
             const Scalar before = gi.space.distance(x, y);
             const Scalar after = gi.space.distance(gi.map.apply(x), gi.map.apply(y));
             strict = strict && after < before;
             if (x.limit_index() == y.limit_index()) halving = halving && after * Scalar(2) == before;
           }
         }
         const auto lip = lipschitz_estimate(gi.space, gi.map, w, exec);
         const bool ok = strict && halving && lip.value < Scalar(1);
         return verdict_outcome(ok, ok ? "strict contraction" : "mismatch",
                                json{{"lipschitz_on_window", lip.value.str()},
                                     {"witness", labels({lip.x, lip.y})},
                                     {"every_pair_strict", strict},
                                     {"same_limit_part_halving", halving}});
       }});
  g.expected.push_back(fixed_point_free_check("Ex3.4/Fix", "Fix(g) is empty", false));
  g.expected.push_back(
      {"Ex3.4/P5", "d(x, y) >= 2^-n for distinct x, y with offsets <= n", "holds_on_window",
       [](const GalleryInstance& gi, const Exec&) {
         const Window w = gi.default_window();
         const std::uint64_t r_max = *gi.defaults.window.r_max;
         bool ok = true;
         for (const auto& x : w.points()) {
           for (const auto& y : w.points()) {
             if (x == y) continue;
             const std::uint64_t n = std::max(x.offset(), y.offset());
             ok = ok && gi.space.distance(x, y) >= Scalar::dyadic(n);
           }
         }
         return verdict_outcome(ok, ok ? "holds_on_window" : "fails", json{{"max_offset", r_max}});
       }});
  return g;
}

// ---- positive control ----

GalleryInstance make_control(std::uint64_t levels) {
  std::vector<Point> pts;
  std::vector<Scalar> values;
  pts.push_back(Point::atom("0", 0));
  values.emplace_back(0);
  for (std::uint64_t j = 0; j <= levels; ++j) {
    pts.push_back(Point::atom("2^-" + std::to_string(j), static_cast<std::uint32_t>(j + 1)));
    values.push_back(Scalar::dyadic(j));
  }
  auto value = [values](const Point& p) { return values[p.rank()]; };
  auto dist = [value](const Point& x, const Point& y) -> Scalar {
    if (x == y) return Scalar(0);
    return max(value(x), value(y));
  };
  const Point zero = pts.front();
  SelfMap halve{"halve", [pts, levels](const Point& p) {
                  if (p.rank() == 0 || p.rank() == levels + 1) return pts.front();
                  return pts[p.rank() + 1];
                }};
  DistanceSpace space("dyadic-control", Domain::finite(pts), dist);
  GalleryInstance g{.id = "control",
                    .space = std::move(space),
                    .map = std::move(halve),
                    .defaults = {.window = {}, .horizon = 64, .tail = 32, .start = pts[1]},
                    .conventions = {"d(x, y) = max(x, y) for x != y on {0} + {2^-j}"}};

  g.expected.push_back(
      {"Control/metric", "d is a metric on the window", "holds_on_window", [](const GalleryInstance& gi, const Exec& exec) {
         const auto m = DistanceMatrix::materialize(gi.space, gi.default_window(), exec);
         const auto core = check_core_axioms(m, exec);
         const auto tri = check_triangle(m, exec);
         const bool ok = core[0].holds() && core[1].holds() && core[2].holds() && tri.holds();
         return verdict_outcome(ok, ok ? "holds_on_window" : "fails",
                                json{{"symmetry", report_brief(core[2])}, {"triangle", report_brief(tri)}});
       }});
  g.expected.push_back(
      {"Control/contraction", "the halving map is a 1/2-contraction", "lipschitz=1/2",
       [](const GalleryInstance& gi, const Exec& exec) {
         const auto lip = lipschitz_estimate(gi.space, gi.map, gi.default_window(), exec);
         return verdict_outcome(lip.value == Scalar(1, 2), "lipschitz=" + lip.value.str(),
                                json{{"witness", labels({lip.x, lip.y})}});
       }});
  g.expected.push_back(
      {"Control/T2.3", "unique fixed point 0; every orbit converges to it with gaps <= (1/2)^n d(x_0, x_1)",
       "fixed=[\"0\"] converging geometric", [zero](const GalleryInstance& gi, const Exec& exec) {
         const Window w = gi.default_window();
         const auto fp = fixed_and_periodic_points(gi.space, gi.map, w, gi.defaults.max_period);
         bool converge = true;
         for (const auto& s : w.points()) {
           const auto trace = picard_orbit(gi.space, gi.map, s, gi.defaults.horizon);
           const auto v = analyze_convergence(gi.space, trace, w, gi.defaults.tol, gi.defaults.tail, {}, exec);
           converge = converge && v.limits == std::vector<Point>{zero} && v.dislocated_limits == v.limits;
         }
         std::string detail;
         const std::vector<Point> starts(w.points().begin(), w.points().end());
         const bool decay = geometric_decay_holds(gi.space, gi.map, starts, Scalar(1, 2), gi.defaults.horizon, &detail);
         const bool ok = fp.fixed == std::vector<Point>{zero} && fp.non_fixed_periodic().empty() && converge && decay;
         return verdict_outcome(ok, ok ? "fixed=[\"0\"] converging geometric" : "mismatch",
                                json{{"fixed", labels(fp.fixed)},
                                     {"all_orbits_converge_to_fixed", converge},
                                     {"geometric_decay", decay},
                                     {"detail", detail}});
       }});
  return g;
}

}  // namespace

GalleryInstance example_3_1() { return make_3_1(); }
GalleryInstance example_3_2() { return make_3_2(); }
GalleryInstance example_3_3(std::size_t intervals) { return make_3_3(intervals); }
GalleryInstance example_3_4(std::uint64_t q_max, std::uint64_t r_max) { return make_3_4(q_max, r_max); }
GalleryInstance dyadic_control(std::uint64_t levels) { return make_control(levels); }

std::vector<std::string> gallery_ids() { return {"3.1", "3.2", "3.3", "3.4", "control"}; }

GalleryInstance gallery_instance(std::string_view id) {
  if (id == "3.1") return example_3_1();
  if (id == "3.2") return example_3_2();
  if (id == "3.3") return example_3_3();
  if (id == "3.4") return example_3_4();
  if (id == "control") return dyadic_control();
  throw ArgumentError("unknown gallery id '" + std::string(id) + "'");
}

}  // namespace dspace
