// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dspace/axioms.hpp"
#include "dspace/chains.hpp"
#include "dspace/dynamics.hpp"
#include "dspace/gallery.hpp"
#include "dspace/harness.hpp"
#include "dspace/json_io.hpp"
#include "oracles.hpp"

#ifdef DSPACE_HAVE_CLI
#include "cli.hpp"
#endif

using namespace dspace;

namespace {

const Exec kExec{4};

/// Collects named sub-checks of one criterion.
class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++count_;
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    if (ok()) return std::to_string(count_) + " checks";
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

bool contains(const std::vector<Point>& v, const Point& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

void ac1(Criterion& c) {
  const auto g = example_3_2();
  const Window w = enumerate(g.space, {.nat_max = 64});
  c.check(w.size() == 65, "window has 65 points");
  const auto m = DistanceMatrix::materialize(g.space, w, kExec);
  c.check(check_triangle(m, kExec).holds(), "triangle holds on all 65^3 triples");
  c.check(lipschitz_estimate(g.space, g.map, w, kExec).value == Scalar(1, 2), "lipschitz is exactly 1/2");
  const auto fp = fixed_and_periodic_points(g.space, g.map, w, 4);
  c.check(fp.fixed.empty() && fp.periodic.empty(), "no fixed or periodic points");
  const auto h64 = check_H(m, Point::nat(0), Point::nat(1));
  c.check(*h64.extremal == Scalar(2) * Scalar::dyadic(64) && h64.witness.back() == Point::nat(64),
          "H-minimum 2*2^-64 at z = 64");
  const auto h65 = check_H(g.space, enumerate(g.space, {.nat_max = 65}), Point::nat(0), Point::nat(1));
  c.check(*h65.extremal * Scalar(2) == *h64.extremal, "H-minimum halves at window 65");
}

void ac2(Criterion& c) {
  const auto g = example_3_1();
  const Point a = Point::atom("a", 0), b = Point::atom("b", 1);
  const auto t = picard_orbit(g.space, g.map, Point::nat(1), 64);
  const auto v = analyze_convergence(g.space, t, g.default_window(), Scalar::dyadic(20), 32, {}, kExec);
  c.check(v.cauchy, "orbit is Cauchy at 2^-20");
  c.check(contains(v.limits, a) && contains(v.limits, b), "limits contain a and b");
  c.check(v.dislocated_limits.empty(), "no dislocated limit");
  bool exact = true;
  for (const auto& x : t.points) exact = exact && g.space.symmetric_distance(a, x) == Scalar(1) + Scalar::dyadic(x.value());
  c.check(exact, "d_s(a, x_n) = 1 + 2^-x_n");
}

void ac3(Criterion& c) {
  const auto g = example_3_3(3);
  const auto& t = *g.intervals;
  const auto o = oracle::greedy_intervals(3);
  c.check(t.starts == o.i && t.middles == o.k, "interval table matches greedy oracle");
  c.check(t.starts[0] == 1 && t.starts[1] == 7 && t.middles[0] == 2 && t.middles[1] == 19, "i = [1, 7, ..], k = [2, 19, ..]");
  c.check(!interval_table_violation(t), "interval invariants hold");
  const Window w = g.default_window();
  const auto m = DistanceMatrix::materialize(g.space, w, kExec);
  c.check(check_triangle(m, kExec).holds(), "triangle holds on the window");
  const auto trace = picard_orbit(g.space, g.map, Point::nat(1), g.defaults.horizon);
  bool gaps = true;
  for (std::size_t n = 0; n < trace.gaps.size(); ++n) {
    gaps = gaps && trace.gaps[n] == min(Scalar(1), Scalar(1, static_cast<long>(trace.points[n].value()) + 1));
  }
  c.check(gaps, "orbit gaps are min{1, 1/(n+1)}");
  c.check(trace.points.back().value() >= t.starts[3], "horizon covers I_3");
  const Point mu = Point::atom("mu", 0), nu = Point::atom("nu", 1);
  Scalar best_mu(1), best_nu(1);
  for (const auto& x : trace.points) {
    best_mu = min(best_mu, g.space.distance(mu, x));
    best_nu = min(best_nu, g.space.distance(nu, x));
  }
  c.check(best_mu <= Scalar(1, static_cast<long>(t.starts[2])), "min d(mu, x_n) <= 1/i_3");
  c.check(best_nu <= Scalar(1, static_cast<long>(t.middles[2])), "min d(nu, x_n) <= 1/k_3");
  const auto fp = fixed_and_periodic_points(g.space, g.map, w, 4);
  c.check(fp.fixed == std::vector<Point>{mu, nu}, "Fix = {mu, nu}");
  // 2-Lipschitz over every window pair, zero-distance pairs included
  const auto lip = lipschitz_estimate(g.space, g.map, w, kExec);
  bool zero_pairs = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (m.at(i, j).is_zero()) zero_pairs = zero_pairs && g.space.distance(g.map.apply(w[i]), g.map.apply(w[j])).is_zero();
    }
  }
  c.check(lip.value <= Scalar(2) && zero_pairs, "d(phi x, phi y) <= 2 d(x, y) for all pairs");
}

void ac4(Criterion& c) {
  const auto g = example_3_4(4, 12);
  const Window w = g.default_window();
  c.check(check_triangle(g.space, w, kExec).holds(), "triangle holds on all ordered triples");
  bool strict = true;
  for (const auto& x : w.points()) {
    for (const auto& y : w.points()) {
      if (x != y) strict = strict && g.space.distance(g.map.apply(x), g.map.apply(y)) < g.space.distance(x, y);
    }
  }
  c.check(strict, "d(g a, g b) < d(a, b) for every distinct pair");
  c.check(fixed_and_periodic_points(g.space, g.map, w, 4).fixed.empty(), "no fixed points");
}

void ac5(Criterion& c) {
  for (const auto& id : gallery_ids()) {
    const auto g = gallery_instance(id);
    const auto rho = DistanceMatrix::materialize(g.space, g.default_window(), kExec);
    const auto bar = associated_functional(rho, kExec);
    bool below = true;
    for (std::size_t k = 0; k < rho.values().size(); ++k) below = below && bar.values()[k] <= rho.values()[k];
    c.check(below, id + ": barrho <= rho");
    c.check(check_triangle(bar, kExec).holds(), id + ": barrho satisfies the triangle inequality");
    c.check(associated_functional(bar, kExec) == bar, id + ": idempotent");
    if (check_triangle(rho, kExec).holds()) c.check(bar == rho, id + ": barrho = rho");
  }
  const auto s = three_point_space();
  const auto rho = DistanceMatrix::materialize(s, enumerate(s, {}));
  const auto bar = associated_functional(rho);
  c.check(bar.at(0, 2) == Scalar(2), "three-point barrho(p, r) = 2");
  c.check(bar.at(0, 2) == oracle::brute_chain_min(rho.values(), 3, 0, 2, 2), "matches brute-force chains");
}

void ac6(Criterion& c) {
  for (const auto& id : {"3.1", "3.2", "3.3", "3.4"}) {
    const auto g = gallery_instance(id);
    const auto m = DistanceMatrix::materialize(symmetrize(g.space), g.default_window(), kExec);
    c.check(check_core_axioms(m, kExec)[2].holds(), std::string(id) + ": d_s symmetric");
    c.check(check_triangle(m, kExec).holds(), std::string(id) + ": d_s triangle");
  }
  const auto g = dyadic_control();
  HarnessConfig cfg = g.harness_config();
  cfg.starts.assign(cfg.window.points().begin(), cfg.window.points().end());
  const auto reports = theorem_harness(g.space, g.map, cfg, kExec);
  for (const auto& r : reports) {
    if (r.theorem != "T2.3") continue;
    for (const auto& h : r.hypotheses) c.check(h.holds, "control T2.3 hypothesis " + h.name);
    for (const auto& k : r.conclusions) c.check(k.holds, "control T2.3 conclusion " + k.name);
    c.check(r.conclusion("unique_fixed")->evidence == "Fix = {0}", "unique fixed point 0");
  }
  std::string detail;
  c.check(geometric_decay_holds(g.space, g.map, cfg.starts, Scalar(1, 2), 64, &detail), "gap decay (1/2)^n exactly");
}

void ac7(Criterion& c) {
  for (const auto& id : gallery_ids()) {
    const auto g = gallery_instance(id);
    const Window w = g.default_window();
    auto starts = g.harness_config().starts;
    for (const auto& s : starts) {
      const auto t = picard_orbit(g.space, g.map, s, g.defaults.horizon);
      const auto v = analyze_convergence(g.space, t, w, g.defaults.tol, g.defaults.tail, {}, kExec);
      c.check(v.dislocated_limits.size() <= 1, id + ": O(" + s.label() + ") has at most one dislocated limit");
      if ((id == "3.1" || id == "3.2") && s == g.defaults.start) {
        c.check(v.limits.size() >= 2 && v.dislocated_limits.empty(),
                id + ": >= 2 plain limits and no dislocated limit");
      }
    }
  }
}

#ifdef DSPACE_HAVE_CLI
std::string run_cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}
#endif

void ac8(Criterion& c) {
#ifdef DSPACE_HAVE_CLI
  std::vector<std::vector<std::string>> commands{{"gallery-verify"}};
  for (const auto* id : {"3.1", "3.2", "3.3", "3.4", "control"}) {
    for (const auto* cmd : {"axioms", "barrho", "symmetrize", "orbit", "harness"}) {
      commands.push_back({cmd, "--example", id});
    }
  }
  for (const auto& cmd : commands) {
    std::string label;
    for (const auto& a : cmd) label += (label.empty() ? "" : " ") + a;
    auto one = cmd;
    one.insert(one.end(), {"--workers", "1"});
    auto eight = cmd;
    eight.insert(eight.end(), {"--workers", "8"});
    int code1 = 0, code8 = 0;
    const std::string a = run_cli(one, code1);
    const std::string b = run_cli(eight, code8);
    c.check(!a.empty() && a == b && code1 == code8, label + ": byte-identical JSON");
  }
#else
  c.check(false, "built without the CLI");
#endif
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"AC1 Example 3.2: contraction on a quasimetric with no fixed point", ac1},
      {"AC2 Example 3.1: Cauchy orbit with limits a and b, no dislocated limit", ac2},
      {"AC3 Example 3.3: intervals, triangle, gaps, accumulation bounds, Fix, 2-Lipschitz", ac3},
      {"AC4 Example 3.4: triangle, strict contraction, no fixed point", ac4},
      {"AC5 chain functional: below rho, triangle, idempotent, exact on quasimetrics", ac5},
      {"AC6 symmetrization and the contraction theorem on the control space", ac6},
      {"AC7 dislocated limits are unique on every gallery orbit", ac7},
      {"AC8 JSON reports identical for 1 and 8 workers", ac8},
  };
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.ok() ? "PASS " : "FAIL ") << name << " (" << c.summary() << ", " << std::fixed
              << std::setprecision(2) << secs << "s)\n";
    failed += !c.ok();
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed\n" : "acceptance: all criteria pass\n");
  return failed ? 1 : 0;
}
