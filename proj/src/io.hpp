#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "families.hpp"
#include "json.hpp"
#include "polygon.hpp"
#include "sweep.hpp"

// JSON forms of the geometric inputs. Doubles are written with the shortest
// text that parses back to the same bits, and infinities as "inf"/"-inf".
namespace thickknot::io {

using nlohmann::json;

json number(double x);
/// Accepts a JSON number or the strings "inf", "-inf".
double to_number(const json& j);

json vec3(const Vec3& v);
Vec3 parse_vec3(const json& j);
/// "x,y,z" as used on the command line.
Vec3 parse_vec3_text(std::string_view text);

/// {"vertices": [[x, y, z], ...]}
json polygon_json(std::span<const Vec3> vertices);
/// Accepts {"vertices": [...]} or a bare vertex array.
std::vector<Vec3> parse_vertices(const json& j);

/// {"id": ..., "keyframes": [[[x, y, z], ...], ...]}
json path_json(const PolygonPath& p);
PolygonPath parse_path(const json& j);

/// {"name": ..., "direction": [x, y, z], "paths": [path, ...]}
json family_json(const families::Family& f);
/// Accepts a family object or a single path object.
families::Family parse_family(const json& j);

/// Parses text, mapping syntax errors to ErrorKind::Parse.
json parse(std::string_view text);
std::string read_file(const std::string& path);
/// Two-space indented dump used for every output.
std::string dump(const json& j);

}  // namespace thickknot::io
