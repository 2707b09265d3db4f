#include "dspace/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dspace/error.hpp"

namespace dspace {

using nlohmann::json;

namespace {

json labels(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(p.label());
  return a;
}

json scalars(const std::vector<Scalar>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

json verdicts(const std::vector<NamedVerdict>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"name", v.name}, {"holds", v.holds}, {"evidence", v.evidence}});
  return a;
}

std::string field(std::string_view base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

}  // namespace

json to_json(const Window& w) {
  return {{"description", w.description()}, {"size", w.size()}};
}

json to_json(const AxiomReport& r) {
  json j{{"axiom", std::string(to_string(r.axiom))},
         {"verdict", std::string(to_string(r.verdict))},
         {"window", r.window}};
  if (!r.witness.empty()) j["witness"] = labels(r.witness);
  if (!r.evidence.empty()) {
    json ev = json::array();
    for (const auto& e : r.evidence) ev.push_back({{"from", e.from.label()}, {"to", e.to.label()}, {"d", e.value.str()}});
    j["evidence"] = std::move(ev);
  }
  if (r.extremal) j["extremal"] = r.extremal->str();
  if (!r.parameters.empty()) {
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = std::move(params);
  }
  if (!r.profile.empty()) j["profile"] = scalars(r.profile);
  return j;
}

json to_json(const OrbitTrace& t) {
  return {{"start", t.start.label()}, {"horizon", t.horizon}, {"points", labels(t.points)}, {"gaps", scalars(t.gaps)}};
}

json to_json(const ConvergenceVerdict& v) {
  return {{"tail", v.tail},
          {"tol", v.tol.str()},
          {"cauchy", v.cauchy},
          {"cauchy_max", v.cauchy_max.str()},
          {"limits", labels(v.limits)},
          {"dislocated_limits", labels(v.dislocated_limits)},
          {"accumulation", labels(v.accumulation)},
          {"unresolved", labels(v.unresolved)},
          {"ladder", v.ladder},
          {"gaps_vanish", v.gaps_vanish},
          {"max_tail_gap", v.max_tail_gap.str()}};
}

json to_json(const LipschitzEstimate& e) {
  return {{"value", e.value.str()}, {"witness", labels({e.x, e.y})}};
}

json to_json(const FixedPointReport& r) {
  json periodic = json::array();
  for (const auto& p : r.periodic) periodic.push_back({{"point", p.point.label()}, {"period", p.period}});
  return {{"fixed", labels(r.fixed)}, {"periodic", std::move(periodic)}, {"max_period", r.max_period}};
}

json to_json(const TheoremReport& r) {
  return {{"theorem", r.theorem},
          {"hypotheses", verdicts(r.hypotheses)},
          {"conclusions", verdicts(r.conclusions)},
          {"consistency", r.consistency == Consistency::Ok ? "ok" : "counterexample_flag"},
          {"notes", r.notes}};
}

json to_json(const GalleryVerification& v) {
  json props = json::array();
  for (const auto& p : v.properties) {
    props.push_back({{"id", p.id},
                     {"description", p.description},
                     {"expected", p.expected},
                     {"observed", p.observed},
                     {"agrees", p.agrees},
                     {"evidence", p.evidence}});
  }
  return {{"instance", v.instance},
          {"space", v.space},
          {"window", v.window},
          {"conventions", v.conventions},
          {"properties", std::move(props)},
          {"all_agree", v.all_agree()}};
}

json matrix_document(const DistanceMatrix& m, std::string_view name) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return {{"name", std::string(name)}, {"points", labels(std::vector<Point>(m.window().points().begin(),
                                                                            m.window().points().end()))},
          {"matrix", std::move(rows)}};
}

DistanceSpace load_space(const json& doc) {
  if (!doc.is_object()) throw IngestError("", "document must be a JSON object");
  if (!doc.contains("name") || !doc["name"].is_string()) throw IngestError("name", "expected a string");
  if (!doc.contains("points") || !doc["points"].is_array()) throw IngestError("points", "expected an array");
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw IngestError("matrix", "expected an array");
  const auto& jp = doc["points"];
  if (jp.empty()) throw IngestError("points", "at least one point is required");

  std::vector<Point> pts;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    if (!jp[i].is_string() || jp[i].get<std::string>().empty()) {
      throw IngestError(field("points", i), "expected a non-empty string");
    }
    const auto name = jp[i].get<std::string>();
    if (!seen.insert(name).second) throw IngestError(field("points", i), "duplicate point '" + name + "'");
    pts.push_back(Point::atom(name, static_cast<std::uint32_t>(i)));
  }

  const auto& jm = doc["matrix"];
  const std::size_t n = pts.size();
  if (jm.size() != n) {
    throw IngestError("matrix", "expected " + std::to_string(n) + " rows, found " + std::to_string(jm.size()));
  }
  std::vector<Scalar> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = field("matrix", i);
    if (!jm[i].is_array() || jm[i].size() != n) {
      throw IngestError(row, "expected a row of " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const std::string at = field(row, j);
      const auto& e = jm[i][j];
      Scalar v;
      if (e.is_string()) {
        try {
          v = Scalar::parse(e.get<std::string>());
        } catch (const ArgumentError& err) {
          throw IngestError(at, err.what());
        }
      } else if (e.is_number_integer()) {
        v = e.is_number_unsigned() ? Scalar(mpq_class(mpz_class(std::to_string(e.get<std::uint64_t>()))))
                                   : Scalar(static_cast<long>(e.get<std::int64_t>()));
      } else {
        throw IngestError(at, "expected a rational string \"p/q\" or an integer");
      }
      if (v.sign() < 0) throw IngestError(at, "negative distance " + v.str());
      if (i == j && !v.is_zero()) throw IngestError(at, "diagonal entry must be 0, found " + v.str());
      values.push_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[i * n + j].is_zero() && values[j * n + i].is_zero()) {
        throw IngestError(field(field("matrix", i), j), "d(" + pts[i].label() + ", " + pts[j].label() + ") + d(" +
                                                            pts[j].label() + ", " + pts[i].label() +
                                                            ") = 0 for distinct points");
      }
    }
  }
  const auto name = doc["name"].get<std::string>();
  Window w(std::move(pts), "custom space '" + name + "'");
  return DistanceMatrix(std::move(w), std::move(values)).to_space(name);
}

DistanceSpace load_space_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw IngestError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
  return load_space(doc);
}

DistanceSpace load_space_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_space_text(buf.str());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dspace
