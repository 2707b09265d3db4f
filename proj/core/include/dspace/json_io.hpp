#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dspace/axioms.hpp"
#include "dspace/dynamics.hpp"
#include "dspace/gallery.hpp"
#include "dspace/harness.hpp"
#include "dspace/matrix.hpp"
#include "dspace/space.hpp"

namespace dspace {

/// Version tag written as the top-level "schema" field of every report.
inline constexpr std::string_view kReportSchema = "dspace.report/1";

/// Report serializers. Rationals are written as canonical "p/q" strings and
/// points by label; objects use sorted keys, so dumps are byte-stable.
nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const OrbitTrace& t);
nlohmann::json to_json(const ConvergenceVerdict& v);
nlohmann::json to_json(const LipschitzEstimate& e);
nlohmann::json to_json(const FixedPointReport& r);
nlohmann::json to_json(const TheoremReport& r);
nlohmann::json to_json(const GalleryVerification& v);

/// A matrix in the custom-space document format:
/// {"name", "points": [labels], "matrix": [["p/q", ...], ...]}.
nlohmann::json matrix_document(const DistanceMatrix& m, std::string_view name);

/// Builds a finite space from a custom-space document. Enforces d >= 0,
/// d(x,x) = 0 and d(x,y) + d(y,x) > 0 for x != y. Throws IngestError naming
/// the offending field.
DistanceSpace load_space(const nlohmann::json& doc);
/// Parses `text` first; a syntax error is reported as "line L, column C".
DistanceSpace load_space_text(std::string_view text);
DistanceSpace load_space_file(const std::filesystem::path& path);

/// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace dspace
