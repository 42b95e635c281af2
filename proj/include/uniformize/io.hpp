#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "uniformize/angles.hpp"
#include "uniformize/map.hpp"

namespace uniformize {

using Json = nlohmann::ordered_json;

/// Reads and writes files; throws Error{IoError} on I/O or parse failures.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
std::string dump_json(const Json& doc);

/// Map files: {"darts", "opposite", "next_at_vertex", "theta"}. With `degrees`
/// the weights are read in degrees. Throws Error{BadInput} on schema problems.
WeightedMap map_from_json(const Json& doc, bool degrees = false);
Json map_to_json(const WeightedMap& wm);

/// Angle files: {"mode": "full"|"stereo", "face": id|null, "psi": [...]}.
AngleSystem angles_from_json(const Json& doc, const WeightedMap& wm, bool degrees = false);
Json angles_to_json(const AngleSystem& psi);

/// Solution files: an angle file plus "grad_norm", "iterations" and the map.
struct Solution {
  AngleSystem psi;
  double grad_norm = 0.0;
  int iterations = 0;
  std::optional<WeightedMap> map;
};

Solution solution_from_json(const Json& doc, const WeightedMap* map_override = nullptr);
Json solution_to_json(const AngleSystem& psi, double grad_norm, int iterations, const WeightedMap& wm);

}  // namespace uniformize
