#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "dspace/axioms.hpp"
#include "dspace/chains.hpp"
#include "dspace/dynamics.hpp"
#include "dspace/error.hpp"
#include "dspace/gallery.hpp"
#include "dspace/harness.hpp"
#include "dspace/json_io.hpp"

namespace dspace::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string example;
  std::string space_file;
  std::optional<std::uint64_t> window;
  std::optional<std::uint64_t> q_max;
  std::optional<std::uint64_t> r_max;
  std::optional<std::size_t> intervals;
  std::optional<std::size_t> horizon;
  std::optional<std::string> tol;
  std::optional<std::size_t> tail;
  std::optional<std::string> start;
  std::optional<std::string> epsilon;
  std::optional<std::string> relaxed_a;
  std::optional<std::string> relaxed_delta;
  std::vector<std::string> h_pair;
  std::string format = "json";
  unsigned workers = 1;
  std::string out;
};

/// A gallery instance (with its map) or a custom finite space, plus the
/// window the command runs on.
struct Selection {
  std::optional<GalleryInstance> gallery;
  std::optional<DistanceSpace> space;
  std::optional<Window> window;
};

/// Accepts "p/q", integers and "2^-k".
Scalar parse_scalar(const std::string& text, const char* flag) {
  try {
    if (text.rfind("2^-", 0) == 0) return Scalar::dyadic(std::stoull(text.substr(3)));
    return Scalar::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": expected a rational such as 1/4 or 2^-20, got '" + text + "'");
  }
}

GalleryInstance build_instance(const Options& o) {
  if (o.intervals && o.example != "3.3") throw UsageError("--intervals applies to --example 3.3 only");
  if ((o.q_max || o.r_max) && o.example != "3.4") throw UsageError("--q-max/--r-max apply to --example 3.4 only");
  GalleryInstance g = o.example == "3.3"   ? example_3_3(o.intervals.value_or(3))
                      : o.example == "3.4" ? example_3_4(o.q_max.value_or(4), o.r_max.value_or(12))
                                           : gallery_instance(o.example);
  if (o.window) {
    if (o.example == "3.4" || o.example == "control") {
      throw UsageError("--window does not apply to --example " + o.example);
    }
    g.defaults.window.nat_max = *o.window;
  }
  return g;
}

Selection select(const Options& o) {
  if (o.example.empty() == o.space_file.empty()) throw UsageError("give exactly one of --example or --space");
  Selection s;
  if (!o.example.empty()) {
    s.gallery = build_instance(o);
    s.space = s.gallery->space;
    s.window = s.gallery->default_window();
  } else {
    if (o.window || o.q_max || o.r_max || o.intervals) {
      throw UsageError("window flags do not apply to a custom space; the window is the whole space");
    }
    s.space = load_space_file(o.space_file);
    s.window = enumerate(*s.space, {});
  }
  return s;
}

const GalleryInstance& require_map(const Selection& s, const std::string& command) {
  if (!s.gallery) throw UsageError(command + " needs a self-map; use --example");
  return *s.gallery;
}

json header(const std::string& command, const Selection& s) {
  return {{"schema", std::string(kReportSchema)},
          {"command", command},
          {"space", s.space->name()},
          {"window", to_json(*s.window)},
          {"completeness", std::string(to_string(s.space->completeness()))}};
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << dump(doc);
}

// ---- text rendering ----

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        const bool flat_array =
            v.is_array() && std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
        if (flat_array) {
          out << pad << k << ":";
          for (const auto& e : v) out << " " << scalar_text(e);
          out << "\n";
        } else {
          out << pad << k << ":\n";
          render(out, v, indent + 1);
        }
      } else {
        out << pad << k << ": " << (v.is_structured() ? "(none)" : scalar_text(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured()) {
        out << pad << "- [" << i << "]\n";
        render(out, j[i], indent + 1);
      } else {
        out << pad << "- " << scalar_text(j[i]) << "\n";
      }
    }
  }
}

void emit(std::ostream& out, const Options& o, const json& report) {
  if (o.format == "text") {
    render(out, report, 0);
  } else {
    out << dump(report);
  }
}

// ---- commands ----

int cmd_axioms(const Options& o, std::ostream& out) {
  const Selection s = select(o);
  const Exec exec{o.workers};
  const auto m = DistanceMatrix::materialize(*s.space, *s.window, exec);
  std::vector<AxiomReport> reports = check_core_axioms(m, exec);
  reports.push_back(check_triangle(m, exec));
  if (o.relaxed_a || o.relaxed_delta) {
    reports.push_back(check_relaxed_triangle(m, parse_scalar(o.relaxed_a.value_or("1"), "--relaxed-a"),
                                             parse_scalar(o.relaxed_delta.value_or("1"), "--relaxed-delta"), exec));
  }
  if (o.epsilon) reports.push_back(check_F(m, parse_scalar(*o.epsilon, "--epsilon"), default_delta_grid(), exec));
  if (!o.h_pair.empty()) {
    if (o.h_pair.size() != 2) throw UsageError("--h-pair takes two point labels");
    reports.push_back(check_H(m, s.space->parse_point(o.h_pair[0]), s.space->parse_point(o.h_pair[1])));
  }
  // Nonnegativity, separation and the triangle inequality decide the exit
  // status; symmetry and the optional checks are informational.
  const bool violated = !reports[0].holds() || !reports[1].holds() || !reports[3].holds();
  json j = header("axioms", s);
  j["reports"] = json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  j["violation"] = violated;
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j);
  return violated ? kViolation : kOk;
}

int cmd_barrho(const Options& o, std::ostream& out) {
  const Selection s = select(o);
  const Exec exec{o.workers};
  const auto rho = DistanceMatrix::materialize(*s.space, *s.window, exec);
  const auto bar = associated_functional(rho, exec);
  std::size_t changed = 0;
  for (std::size_t k = 0; k < rho.values().size(); ++k) changed += rho.values()[k] != bar.values()[k];
  const auto core = check_core_axioms(bar, exec);
  json j = header("barrho", s);
  j["equals_rho"] = changed == 0;
  j["changed_entries"] = changed;
  j["separation"] = to_json(core[1]);
  j["barrho"] = matrix_document(bar, "barrho(" + s.space->name() + ")");
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j["barrho"]);
  return core[1].holds() ? kOk : kViolation;
}

int cmd_symmetrize(const Options& o, std::ostream& out) {
  const Selection s = select(o);
  const Exec exec{o.workers};
  const auto sym = symmetrize(*s.space);
  const auto m = DistanceMatrix::materialize(sym, *s.window, exec);
  const auto core = check_core_axioms(m, exec);
  const auto tri = check_triangle(m, exec);
  json j = header("symmetrize", s);
  j["symmetry"] = to_json(core[2]);
  j["triangle"] = to_json(tri);
  j["matrix"] = matrix_document(m, sym.name());
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j["matrix"]);
  return core[2].holds() && tri.holds() ? kOk : kViolation;
}

struct OrbitSettings {
  Point start;
  std::size_t horizon;
  Scalar tol;
  std::size_t tail;
};

OrbitSettings orbit_settings(const Options& o, const GalleryInstance& g) {
  OrbitSettings r{g.defaults.start, o.horizon.value_or(g.defaults.horizon),
                  o.tol ? parse_scalar(*o.tol, "--tol") : g.defaults.tol, 0};
  if (o.start) r.start = g.space.parse_point(*o.start);
  r.tail = o.tail.value_or(o.horizon ? r.horizon / 2 : g.defaults.tail);
  if (r.tail >= r.horizon) throw UsageError("--tail must be below the horizon");
  return r;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  const Selection s = select(o);
  const auto& g = require_map(s, "orbit");
  const Exec exec{o.workers};
  const auto cfg = orbit_settings(o, g);
  const auto trace = picard_orbit(g.space, g.map, cfg.start, cfg.horizon);
  const auto verdict = analyze_convergence(g.space, trace, *s.window, cfg.tol, cfg.tail, {}, exec);
  json j = header("orbit", s);
  j["map"] = g.map.name;
  j["trace"] = to_json(trace);
  j["convergence"] = to_json(verdict);
  j["lipschitz"] = to_json(lipschitz_estimate(g.space, g.map, *s.window, exec));
  j["fixed_points"] = to_json(fixed_and_periodic_points(g.space, g.map, *s.window, g.defaults.max_period));
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j);
  return kOk;
}

int cmd_harness(const Options& o, std::ostream& out, std::ostream& err) {
  const Selection s = select(o);
  const auto& g = require_map(s, "harness");
  const auto cfg = orbit_settings(o, g);
  HarnessConfig c = g.harness_config();
  c.horizon = cfg.horizon;
  c.tol = cfg.tol;
  c.tail = cfg.tail;
  c.starts.erase(std::remove(c.starts.begin(), c.starts.end(), cfg.start), c.starts.end());
  c.starts.insert(c.starts.begin(), cfg.start);
  if (o.epsilon) c.epsilon = parse_scalar(*o.epsilon, "--epsilon");
  if (o.relaxed_a) c.relaxed_a = parse_scalar(*o.relaxed_a, "--relaxed-a");
  if (o.relaxed_delta) c.relaxed_delta = parse_scalar(*o.relaxed_delta, "--relaxed-delta");
  const auto reports = theorem_harness(g.space, g.map, c, Exec{o.workers});
  json j = header("harness", s);
  j["map"] = g.map.name;
  j["theorems"] = json::array();
  bool flagged = false;
  for (const auto& r : reports) {
    j["theorems"].push_back(to_json(r));
    if (r.consistency == Consistency::CounterexampleFlag) {
      flagged = true;
      err << "counterexample flag: " << r.theorem << " hypotheses hold on the window but a conclusion fails\n";
    }
  }
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j);
  return flagged ? kViolation : kOk;
}

int cmd_gallery_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.space_file.empty()) throw UsageError("gallery-verify takes --example, not --space");
  std::vector<std::string> ids = o.example.empty() ? gallery_ids() : std::vector<std::string>{o.example};
  if (o.example.empty() && (o.window || o.q_max || o.r_max || o.intervals)) {
    throw UsageError("window flags need a single --example");
  }
  json j{{"schema", std::string(kReportSchema)}, {"command", "gallery-verify"}, {"instances", json::array()}};
  bool all = true;
  for (const auto& id : ids) {
    Options one = o;
    one.example = id;
    const auto v = verify_gallery(build_instance(one), Exec{o.workers});
    for (const auto& p : v.properties) {
      if (!p.agrees) err << "disagreement: " << p.id << ": expected " << p.expected << ", observed " << p.observed << "\n";
    }
    all = all && v.all_agree();
    j["instances"].push_back(to_json(v));
  }
  j["all_agree"] = all;
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, j);
  return all ? kOk : kViolation;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  if (o.space_file.empty() || !o.example.empty()) throw UsageError("ingest takes --space FILE");
  const Selection s = select(o);
  const auto m = DistanceMatrix::materialize(*s.space, *s.window);
  json j = header("ingest", s);
  j["points"] = s.window->size();
  j["reports"] = json::array();
  for (const auto& r : check_core_axioms(m)) j["reports"].push_back(to_json(r));
  j["reports"].push_back(to_json(check_triangle(m)));
  emit(out, o, j);
  if (!o.out.empty()) write_file(o.out, matrix_document(m, s.space->name()));
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool needs_dynamics) {
  sub->add_option("--example", o.example, "Gallery instance")
      ->check(CLI::IsMember({"3.1", "3.2", "3.3", "3.4", "control"}));
  sub->add_option("--space", o.space_file, "Custom space JSON file");
  sub->add_option("--window", o.window, "Largest natural in the window (Examples 3.1-3.3)")->check(CLI::PositiveNumber);
  sub->add_option("--q-max", o.q_max, "Largest limit index q (Example 3.4)")->check(CLI::PositiveNumber);
  sub->add_option("--r-max", o.r_max, "Largest finite offset r (Example 3.4)")->check(CLI::PositiveNumber);
  sub->add_option("--intervals", o.intervals, "Interval count (Example 3.3)")->check(CLI::PositiveNumber);
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--out", o.out, "Also write the JSON document to FILE");
  if (needs_dynamics) {
    sub->add_option("--horizon", o.horizon, "Orbit horizon")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "Convergence tolerance (p/q or 2^-k)");
    sub->add_option("--tail", o.tail, "First tail index");
    sub->add_option("--start", o.start, "Orbit start label");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized distance spaces: axiom checks, chain functional, orbits and the example gallery",
               "dspace"};
  app.require_subcommand(1);
  Options o;
  auto* axioms = app.add_subcommand("axioms", "Check distance axioms on a window");
  add_common(axioms, o, false);
  axioms->add_option("--relaxed-a", o.relaxed_a, "Relaxed triangle constant a >= 1");
  axioms->add_option("--relaxed-delta", o.relaxed_delta, "Relaxed triangle radius delta > 0");
  axioms->add_option("--epsilon", o.epsilon, "Run the uniform (F) delta search at this epsilon");
  axioms->add_option("--h-pair", o.h_pair, "Two point labels for the H-minimum")->expected(2);
  auto* barrho = app.add_subcommand("barrho", "Chain-infimum functional on a window");
  add_common(barrho, o, false);
  auto* sym = app.add_subcommand("symmetrize", "Symmetrized distance d(x,y) + d(y,x) on a window");
  add_common(sym, o, false);
  auto* orbit = app.add_subcommand("orbit", "Picard orbit and its convergence verdict");
  add_common(orbit, o, true);
  auto* harness = app.add_subcommand("harness", "Fixed-point theorem hypotheses and conclusions");
  add_common(harness, o, true);
  harness->add_option("--epsilon", o.epsilon, "N-distance probe radius");
  harness->add_option("--relaxed-a", o.relaxed_a, "Relaxed triangle constant a >= 1");
  harness->add_option("--relaxed-delta", o.relaxed_delta, "Relaxed triangle radius delta > 0");
  auto* verify = app.add_subcommand("gallery-verify", "Verify every stated property of gallery instances");
  add_common(verify, o, false);
  auto* ingest = app.add_subcommand("ingest", "Validate a custom space file");
  add_common(ingest, o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*axioms) return cmd_axioms(o, out);
    if (*barrho) return cmd_barrho(o, out);
    if (*sym) return cmd_symmetrize(o, out);
    if (*orbit) return cmd_orbit(o, out);
    if (*harness) return cmd_harness(o, out, err);
    if (*verify) return cmd_gallery_verify(o, out, err);
    if (*ingest) return cmd_ingest(o, out);
  } catch (const IngestError& e) {
    err << "error: " << o.space_file << ": " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dspace::cli
