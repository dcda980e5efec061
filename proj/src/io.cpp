#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace thickknot::io {

json number(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

double to_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw Error(ErrorKind::Parse, "expected a number, got " + j.dump());
}

json vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 parse_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::Parse, "expected [x, y, z], got " + j.dump());
  const Vec3 v{to_number(j[0]), to_number(j[1]), to_number(j[2])};
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
    throw Error(ErrorKind::Parse, "coordinates must be finite");
  }
  return v;
}

Vec3 parse_vec3_text(std::string_view text) {
  std::vector<double> xs;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (item.empty() || used != item.size()) throw Error(ErrorKind::Parse, "bad coordinate '" + item + "'");
    xs.push_back(x);
  }
  if (xs.size() != 3) throw Error(ErrorKind::Parse, "expected x,y,z, got '" + std::string(text) + "'");
  return parse_vec3(json::array({xs[0], xs[1], xs[2]}));
}

json polygon_json(std::span<const Vec3> vertices) {
  json vs = json::array();
  for (const Vec3& v : vertices) vs.push_back(vec3(v));
  return json{{"vertices", std::move(vs)}};
}

std::vector<Vec3> parse_vertices(const json& j) {
  const json* vs = &j;
  if (j.is_object()) {
    if (!j.contains("vertices")) throw Error(ErrorKind::Parse, "polygon object lacks \"vertices\"");
    vs = &j.at("vertices");
  }
  if (!vs->is_array()) throw Error(ErrorKind::Parse, "vertices must be an array");
  std::vector<Vec3> out;
  out.reserve(vs->size());
  for (const json& v : *vs) out.push_back(parse_vec3(v));
  return out;
}

json path_json(const PolygonPath& p) {
  json ks = json::array();
  for (const auto& k : p.keyframes) ks.push_back(polygon_json(k).at("vertices"));
  return json{{"id", p.id}, {"keyframes", std::move(ks)}};
}

PolygonPath parse_path(const json& j) {
  if (!j.is_object() || !j.contains("keyframes")) throw Error(ErrorKind::Parse, "path object lacks \"keyframes\"");
  const json& ks = j.at("keyframes");
  if (!ks.is_array()) throw Error(ErrorKind::Parse, "keyframes must be an array");
  std::vector<std::vector<Vec3>> frames;
  for (const json& k : ks) frames.push_back(parse_vertices(k));
  std::string id = "path";
  if (j.contains("id")) {
    if (!j.at("id").is_string()) throw Error(ErrorKind::Parse, "path id must be a string");
    id = j.at("id").get<std::string>();
  }
  return PolygonPath::make(std::move(id), std::move(frames));
}

json family_json(const families::Family& f) {
  json ps = json::array();
  for (const PolygonPath& p : f.paths) ps.push_back(path_json(p));
  return json{{"name", f.name}, {"direction", vec3(f.direction)}, {"paths", std::move(ps)}};
}

families::Family parse_family(const json& j) {
  families::Family f;
  if (!j.is_object()) throw Error(ErrorKind::Parse, "family must be an object");
  if (j.contains("keyframes")) {
    f.paths.push_back(parse_path(j));
    f.name = f.paths.front().id;
  } else {
    if (!j.contains("paths") || !j.at("paths").is_array()) {
      throw Error(ErrorKind::Parse, "family object lacks a \"paths\" array");
    }
    for (const json& p : j.at("paths")) f.paths.push_back(parse_path(p));
    if (f.paths.empty()) throw Error(ErrorKind::InvalidArgument, "family has no paths");
    f.name = j.value("name", std::string("family"));
  }
  if (j.contains("direction")) f.direction = parse_vec3(j.at("direction"));
  return f;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  return os.str();
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace thickknot::io
