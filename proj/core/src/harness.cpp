#include "dspace/harness.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "dspace/axioms.hpp"
#include "dspace/error.hpp"
#include "dspace/matrix.hpp"

namespace dspace {

HarnessConfig default_harness_config(const Window& window) {
  HarnessConfig c{.window = window};
  c.tail = c.horizon / 2;
  const std::size_t n = window.size();
  const std::size_t head = std::min<std::size_t>(3, n);
  for (std::size_t i = 0; i < head; ++i) {
    c.starts.push_back(window[i]);
    c.n_probes.push_back(window[i]);
  }
  for (std::size_t i = 0; i < head; ++i) {
    for (std::size_t j = i + 1; j < head; ++j) c.h_probes.emplace_back(window[i], window[j]);
  }
  std::size_t last = 0;
  for (const std::size_t size : {n / 4, n / 2, n}) {
    const std::size_t s = std::max(size, head);
    if (s > last) {
      c.h_windows.push_back(window.prefix(s));
      last = s;
    }
  }
  return c;
}

const NamedVerdict* TheoremReport::hypothesis(std::string_view name) const {
  for (const auto& h : hypotheses) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

const NamedVerdict* TheoremReport::conclusion(std::string_view name) const {
  for (const auto& c : conclusions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool geometric_decay_holds(const DistanceSpace& space, const SelfMap& map, const std::vector<Point>& starts,
                           const Scalar& lambda, std::size_t horizon, std::string* detail) {
  std::vector<OrbitTrace> orbits;
  orbits.reserve(starts.size());
  for (const auto& s : starts) orbits.push_back(picard_orbit(space, map, s, horizon));
  auto fail = [&](const std::string& what) {
    if (detail) *detail = what;
    return false;
  };
  for (const auto& o : orbits) {
    Scalar power(1);
    for (std::size_t n = 0; n < o.gaps.size(); ++n) {
      if (o.gaps[n] > power * o.gaps[0]) {
        return fail("gap bound fails for start " + o.start.label() + " at n=" + std::to_string(n));
      }
      power *= lambda;
    }
  }
  for (std::size_t a = 0; a < orbits.size(); ++a) {
    for (std::size_t b = 0; b < orbits.size(); ++b) {
      if (a == b) continue;
      const auto& x = orbits[a].points;
      const auto& y = orbits[b].points;
      const Scalar base = space.distance(x[0], y[0]);
      Scalar power(1);
      for (std::size_t n = 0; n < x.size(); ++n) {
        if (space.distance(x[n], y[n]) > power * base) {
          return fail("pair bound fails for starts (" + x[0].label() + ", " + y[0].label() + ") at n=" +
                      std::to_string(n));
        }
        power *= lambda;
      }
    }
  }
  if (detail) {
    *detail = std::to_string(starts.size()) + " starts, horizon " + std::to_string(horizon) + ", lambda " +
              lambda.str();
  }
  return true;
}

namespace {

std::string join(const std::vector<Point>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].label();
  return s + "}";
}

bool contains(const std::vector<Point>& v, const Point& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

/// Every window-level verdict a theorem may quote, evaluated once.
struct Facts {
  NamedVerdict lipschitz, contraction, h_distance, n_distance, quasimetric, relaxed, complete;
  NamedVerdict accumulation, vanishing_gaps, orbit_convergent, mu_contraction;
  NamedVerdict fixed_exists, unique_fixed, accumulation_fixed, orbit_no_periodic, periodic_fixed, periodic_fixed_if_gaps;
  NamedVerdict converge_to_fixed, geometric, cauchy_to_fixed, unique_dislocated;
};

NamedVerdict verdict(std::string name, bool holds, std::string evidence) {
  return {std::move(name), holds, std::move(evidence)};
}

struct OrbitFacts {
  OrbitTrace trace;
  ConvergenceVerdict verdict;
};

/// H-distances have unique limits, so an orbit with two resolved limits
/// refutes H outright. Otherwise probe pairs are checked along the nested
/// H-windows.
NamedVerdict h_evidence(const DistanceSpace& space, const DistanceMatrix& full, const HarnessConfig& c,
                        const std::vector<OrbitFacts>& orbits) {
  for (const auto& o : orbits) {
    if (o.verdict.limits.size() >= 2) {
      return verdict("h_distance", false,
                     "O(" + o.trace.start.label() + ") has distinct limits " + join(o.verdict.limits));
    }
  }
  if (c.h_probes.empty() || c.h_windows.empty()) return verdict("h_distance", true, "no probes configured");
  std::vector<DistanceMatrix> mats;
  mats.reserve(c.h_windows.size());
  for (const auto& w : c.h_windows) {
    const bool inside = std::all_of(w.points().begin(), w.points().end(),
                                    [&](const Point& p) { return full.window().contains(p); });
    mats.push_back(inside ? full.restrict_to(w) : DistanceMatrix::materialize(space, w));
  }
  std::ostringstream ev;
  for (const auto& [x, y] : c.h_probes) {
    std::vector<Scalar> minima;
    for (const auto& m : mats) {
      const auto r = check_H(m, x, y);
      if (!r.holds()) {
        ev << "H-minimum of (" << x.label() << ", " << y.label() << ") is 0 at z = " << r.witness[2].label();
        return verdict("h_distance", false, ev.str());
      }
      minima.push_back(*r.extremal);
    }
    // Decay rule: strictly decreasing along the nested windows and at
    // least halved overall reads as a minimum heading to zero.
    bool decreasing = minima.size() >= 2;
    for (std::size_t i = 1; i < minima.size(); ++i) decreasing = decreasing && minima[i] < minima[i - 1];
    if (decreasing && minima.back() * Scalar(2) <= minima.front()) {
      ev << "H-minimum of (" << x.label() << ", " << y.label() << ") decays:";
      for (std::size_t i = 0; i < minima.size(); ++i) {
        ev << " " << minima[i].str() << " on " << c.h_windows[i].size() << " points";
      }
      return verdict("h_distance", false, ev.str());
    }
  }
  ev << c.h_probes.size() << " probe pairs keep a positive H-minimum on " << c.h_windows.size() << " windows";
  return verdict("h_distance", true, ev.str());
}

NamedVerdict n_evidence(const DistanceMatrix& m, const HarnessConfig& c) {
  const auto grid = c.delta_grid.empty() ? default_delta_grid() : c.delta_grid;
  std::ostringstream ev;
  for (const auto& x : c.n_probes) {
    const auto r = check_N(m, x, c.epsilon, grid);
    if (!r.holds()) {
      ev << "no grid delta works at x = " << x.label() << ", epsilon = " << c.epsilon.str();
      return verdict("n_distance", false, ev.str());
    }
    ev << (ev.tellp() > 0 ? ", " : "") << "delta(" << x.label() << ") = " << r.extremal->str();
  }
  if (c.n_probes.empty()) ev << "no probes configured";
  return verdict("n_distance", true, ev.str());
}

/// max over orbit pairs n != m with d(x_n, x_m) > 0 of
/// d(x_{n+1}, x_{m+1}) / d(x_n, x_m); a zero denominator with a positive
/// numerator counts as unbounded.
std::optional<Scalar> orbit_mu(const CachedDistance& dist, const OrbitTrace& t, bool& unbounded) {
  std::optional<Scalar> best;
  const auto& p = t.points;
  std::vector<std::optional<std::size_t>> slot(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) slot[n] = dist.index_of(p[n]);
  for (std::size_t n = 0; n + 1 < p.size(); ++n) {
    for (std::size_t m = 0; m + 1 < p.size(); ++m) {
      if (n == m) continue;
      const Scalar before = dist.at(slot[n], slot[m], p[n], p[m]);
      const Scalar after = dist.at(slot[n + 1], slot[m + 1], p[n + 1], p[m + 1]);
      if (before.is_zero()) {
        if (!after.is_zero()) unbounded = true;
        continue;
      }
      Scalar ratio = after / before;
      if (!best || ratio > *best) best = std::move(ratio);
    }
  }
  return best;
}

Facts collect(const DistanceSpace& space, const SelfMap& map, const HarnessConfig& c, const Exec& exec) {
  if (c.starts.empty()) throw ArgumentError("theorem harness needs at least one orbit start");
  if (c.relaxed_a < Scalar(1)) throw ArgumentError("relaxed triangle constant a must be >= 1, got " + c.relaxed_a.str());
  if (c.relaxed_delta.sign() <= 0) {
    throw ArgumentError("relaxed triangle delta must be positive, got " + c.relaxed_delta.str());
  }
  Facts f;
  const Window& w = c.window;
  const auto matrix = DistanceMatrix::materialize(space, w, exec);

  std::optional<Scalar> lambda;
  try {
    const auto lip = lipschitz_estimate(space, map, matrix, exec);
    lambda = lip.value;
    const std::string ev = "lambda = " + lip.value.str() + " at (" + lip.x.label() + ", " + lip.y.label() + ")";
    f.lipschitz = verdict("lipschitz", true, ev);
    f.contraction = verdict("contraction", lip.value < Scalar(1), ev);
  } catch (const ArgumentError& e) {
    f.lipschitz = verdict("lipschitz", false, e.what());
    f.contraction = verdict("contraction", false, e.what());
  }

  f.n_distance = n_evidence(matrix, c);

  const auto tri = check_triangle(matrix, exec);
  f.quasimetric = verdict("quasimetric", tri.holds(),
                          tri.holds() ? "triangle holds on the window"
                                      : "triangle fails at " + join(tri.witness));
  // With a >= 1 the relaxed inequality is implied by the plain one.
  const auto rel = tri.holds() ? tri : check_relaxed_triangle(matrix, c.relaxed_a, c.relaxed_delta, exec);
  f.relaxed = verdict("relaxed_triangle", rel.holds(),
                      "a = " + c.relaxed_a.str() + ", delta = " + c.relaxed_delta.str() +
                          (rel.holds() ? "" : ", fails at " + join(rel.witness)));
  f.complete = verdict("complete", space.completeness() != Completeness::Unknown,
                       std::string(to_string(space.completeness())));

  std::vector<OrbitFacts> orbits;
  for (const auto& s : c.starts) {
    auto trace = picard_orbit(space, map, s, c.horizon);
    auto v = analyze_convergence(space, trace, matrix, c.tol, c.tail, c.ladder, exec);
    orbits.push_back({std::move(trace), std::move(v)});
  }
  f.h_distance = h_evidence(space, matrix, c, orbits);
  const auto& e = orbits.front();
  const std::string e_label = "O(" + e.trace.start.label() + ")";
  f.accumulation = verdict("accumulation", !e.verdict.accumulation.empty(),
                           e_label + " accumulates at " + join(e.verdict.accumulation));
  f.vanishing_gaps = verdict("vanishing_gaps", e.verdict.gaps_vanish,
                             e_label + " max tail gap " + e.verdict.max_tail_gap.str());
  f.orbit_convergent = verdict("orbit_convergent", !e.verdict.limits.empty(),
                               e_label + " limits " + join(e.verdict.limits));

  const CachedDistance cached(space, matrix);
  bool mu_ok = true;
  std::ostringstream mu_ev;
  for (const auto& o : orbits) {
    bool unbounded = false;
    const auto mu = orbit_mu(cached, o.trace, unbounded);
    const bool ok = !unbounded && (!mu || *mu < Scalar(1));
    mu_ok = mu_ok && ok;
    mu_ev << (mu_ev.tellp() > 0 ? ", " : "") << "mu(" << o.trace.start.label()
          << ") = " << (unbounded ? "unbounded" : mu ? mu->str() : "0");
  }
  f.mu_contraction = verdict("orbit_mu_contraction", mu_ok, mu_ev.str());

  const auto fp = fixed_and_periodic_points(space, map, w, c.max_period);
  f.fixed_exists = verdict("fixed_exists", !fp.fixed.empty(), "Fix = " + join(fp.fixed));
  f.unique_fixed = verdict("unique_fixed", fp.fixed.size() == 1, "Fix = " + join(fp.fixed));

  bool acc_fixed = true;
  for (const auto& a : e.verdict.accumulation) acc_fixed = acc_fixed && contains(fp.fixed, a);
  f.accumulation_fixed = verdict("accumulation_points_fixed", acc_fixed,
                                 "accumulation " + join(e.verdict.accumulation) + ", Fix = " + join(fp.fixed));

  std::vector<Point> orbit_periodic;
  for (const auto& p : fp.non_fixed_periodic()) {
    if (contains(e.trace.points, p.point)) orbit_periodic.push_back(p.point);
  }
  // Orbit points outside the window: look for a repeat x_k = x_{k+m}.
  for (std::size_t k = 0; k < e.trace.points.size(); ++k) {
    const Point& x = e.trace.points[k];
    if (w.contains(x) || contains(orbit_periodic, x)) continue;
    for (std::size_t j = k + 1; j < e.trace.points.size() && j <= k + c.max_period; ++j) {
      if (e.trace.points[j] == x && !(e.trace.points[k + 1] == x)) {
        orbit_periodic.push_back(x);
        break;
      }
    }
  }
  f.orbit_no_periodic = verdict("orbit_has_no_periodic_points", orbit_periodic.empty(),
                                e_label + " periodic non-fixed points " + join(orbit_periodic));

  bool all_gaps = true;
  for (const auto& o : orbits) all_gaps = all_gaps && o.verdict.gaps_vanish;
  std::vector<Point> non_fixed;
  for (const auto& p : fp.non_fixed_periodic()) non_fixed.push_back(p.point);
  f.periodic_fixed = verdict("periodic_points_fixed", non_fixed.empty(),
                             "non-fixed periodic points " + join(non_fixed) + " (period <= " +
                                 std::to_string(c.max_period) + ")" +
                                 (all_gaps ? "" : "; gaps do not vanish for every start"));
  f.periodic_fixed_if_gaps = f.periodic_fixed;
  if (!all_gaps) {
    f.periodic_fixed_if_gaps.holds = true;
    f.periodic_fixed_if_gaps.evidence += " (premise not met, vacuous)";
  }

  bool converge = fp.fixed.size() == 1;
  bool cauchy_fixed = !fp.fixed.empty();
  bool single_dislocated = true;
  std::ostringstream conv_ev, disl_ev;
  for (const auto& o : orbits) {
    const auto& v = o.verdict;
    const std::string lab = "O(" + o.trace.start.label() + ")";
    if (fp.fixed.size() == 1) converge = converge && contains(v.limits, fp.fixed.front());
    bool reaches = false;
    for (const auto& p : fp.fixed) reaches = reaches || contains(v.limits, p);
    cauchy_fixed = cauchy_fixed && v.cauchy && reaches;
    single_dislocated = single_dislocated && v.dislocated_limits.size() <= 1;
    conv_ev << (conv_ev.tellp() > 0 ? "; " : "") << lab << (v.cauchy ? " cauchy" : " not cauchy") << ", limits "
            << join(v.limits);
    disl_ev << (disl_ev.tellp() > 0 ? "; " : "") << lab << " dislocated limits " << join(v.dislocated_limits);
  }
  f.converge_to_fixed = verdict("orbits_converge_to_fixed_point", converge, conv_ev.str());
  f.cauchy_to_fixed = verdict("orbits_cauchy_to_fixed_point", cauchy_fixed, conv_ev.str());
  f.unique_dislocated = verdict("unique_dislocated_limit", single_dislocated, disl_ev.str());

  if (lambda && *lambda < Scalar(1)) {
    std::string detail;
    const bool ok = geometric_decay_holds(space, map, c.starts, *lambda, c.horizon, &detail);
    f.geometric = verdict("geometric_decay", ok, detail);
  } else {
    f.geometric = verdict("geometric_decay", false, "no contraction constant below 1 on the window");
  }
  return f;
}

TheoremReport report(std::string id, std::vector<NamedVerdict> hyps, std::vector<NamedVerdict> concls) {
  TheoremReport r{.theorem = std::move(id), .hypotheses = std::move(hyps), .conclusions = std::move(concls)};
  const bool all_hyps = std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return h.holds; });
  const bool all_concls =
      std::all_of(r.conclusions.begin(), r.conclusions.end(), [](const auto& h) { return h.holds; });
  r.consistency = all_hyps && !all_concls ? Consistency::CounterexampleFlag : Consistency::Ok;
  return r;
}

}  // namespace

std::vector<TheoremReport> theorem_harness(const DistanceSpace& space, const SelfMap& map,
                                           const HarnessConfig& config, const Exec& exec) {
  const Facts f = collect(space, map, config, exec);
  std::vector<TheoremReport> out;
  out.push_back(report("P2.1", {f.h_distance, f.lipschitz, f.orbit_convergent}, {f.fixed_exists}));

  // Conclusion 3 of T2.2 only applies when every orbit has vanishing gaps.
  out.push_back(report("T2.2", {f.n_distance, f.h_distance, f.lipschitz, f.accumulation, f.vanishing_gaps},
                       {f.fixed_exists, f.accumulation_fixed, f.orbit_no_periodic, f.periodic_fixed_if_gaps}));
  out.back().notes.push_back("C2.4 is the quasimetric case of T2.2 (a quasimetric is an N-distance)");

  out.push_back(report("T2.3", {f.n_distance, f.h_distance, f.contraction, f.accumulation},
                       {f.unique_fixed, f.periodic_fixed, f.converge_to_fixed, f.geometric}));
  out.push_back(report("C2.5", {f.quasimetric, f.complete, f.h_distance, f.lipschitz, f.mu_contraction},
                       {f.fixed_exists, f.periodic_fixed, f.cauchy_to_fixed}));
  out.push_back(report("T2.4", {f.complete, f.h_distance, f.contraction, f.relaxed},
                       {f.unique_fixed, f.periodic_fixed, f.cauchy_to_fixed}));
  out.push_back(report("L4.1", {f.n_distance}, {f.unique_dislocated}));

  for (auto& r : out) {
    if (space.completeness() == Completeness::AssumedFromGalleryMetadata) {
      r.notes.push_back("completeness assumed from gallery metadata");
    }
  }
  return out;
}

}  // namespace dspace
