#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lvseasons/classify.hpp"
#include "lvseasons/orbit.hpp"

namespace lvseasons::io {

struct ConfigError : std::runtime_error {
  std::string code;  // ConfigParseError | BadArguments
  ConfigError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

// Parameter documents: {"omega": num, "phi": num, "mu": [3], "b": [3],
// "a": [[3],[3],[3]]}. Parsing failures throw ConfigError; admissibility
// failures throw InvalidParams listing every violation.
SeasonalParams params_from_json(const nlohmann::json& doc);
SeasonalParams params_from_text(const std::string& text);
SeasonalParams params_from_file(const std::string& path);

nlohmann::json params_to_json(const SeasonalParams& p);
nlohmann::json derived_to_json(const DerivedQuantities& d);
nlohmann::json fixed_point_to_json(const FixedPoint& fp);
nlohmann::json portrait_to_json(const BoundaryPortrait& portrait);
nlohmann::json verdict_to_json(const PermanenceVerdict& v);
nlohmann::json attractor_to_json(const AttractorReport& report);
nlohmann::json error_to_json(const std::string& code, const std::string& msg,
                             const std::vector<std::string>& details = {});

std::string verdict_summary(const PermanenceVerdict& v);

// Shortest exact decimal round-trip formatting used by all text emitters so
// repeated runs are byte-identical.
std::string format_double(double v);

std::string series_csv(const std::vector<std::pair<double, Vec3>>& rows);
std::string orbit_csv(const std::vector<Vec3>& points);

std::string svg_time_series(const std::vector<std::pair<double, Vec3>>& rows);
std::string svg_orbit(const std::vector<Vec3>& points);

void write_file(const std::string& path, const std::string& content);

}  // namespace lvseasons::io
