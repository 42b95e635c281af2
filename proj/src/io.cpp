#include "uniformize/io.hpp"

#include <fstream>
#include <numbers>

#include "uniformize/error.hpp"

namespace uniformize {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

template <class T>
std::vector<T> array_of(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw Error(ErrorCode::BadInput, std::string("missing array \"") + key + "\"");
  try {
    return doc[key].get<std::vector<T>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("bad entries in \"") + key + "\": " + e.what());
  }
}

int sign_of(int x) { return (x > 0) - (x < 0); }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, path + ": " + e.what());
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  os << dump_json(doc);
  if (!os) throw Error(ErrorCode::IoError, "failed writing " + path);
}

WeightedMap map_from_json(const Json& doc, bool degrees) {
  if (!doc.is_object()) throw Error(ErrorCode::BadInput, "map file must hold a JSON object");
  if (!doc.contains("darts") || !doc["darts"].is_number_integer())
    throw Error(ErrorCode::BadInput, "missing integer \"darts\"");
  const int n = doc["darts"].get<int>();
  const auto opposite = array_of<int>(doc, "opposite");
  const auto next = array_of<int>(doc, "next_at_vertex");
  auto theta = array_of<double>(doc, "theta");
  if (degrees)
    for (double& t : theta) t *= kDegree;
  return WeightedMap(build_map(n, opposite, next), std::move(theta));
}

Json map_to_json(const WeightedMap& wm) {
  const SurfaceMap& m = wm.map();
  Json doc;
  doc["darts"] = m.dart_count();
  doc["opposite"] = m.opposite_permutation();
  doc["next_at_vertex"] = m.rotation_permutation();
  doc["theta"] = wm.thetas();
  return doc;
}

AngleSystem angles_from_json(const Json& doc, const WeightedMap& wm, bool degrees) {
  if (!doc.is_object()) throw Error(ErrorCode::BadInput, "angle file must hold a JSON object");
  auto psi = array_of<double>(doc, "psi");
  if (degrees)
    for (double& x : psi) x *= kDegree;
  if (static_cast<int>(psi.size()) != wm.map().dart_count())
    throw Error(ErrorCode::BadInput, "psi needs one value per dart");
  const std::string mode = doc.value("mode", std::string("full"));
  AngleSystem a;
  a.psi = std::move(psi);
  a.curvature_class = sign_of(wm.chi());
  if (mode == "full") {
    a.mode = AngleMode::full;
  } else if (mode == "stereo") {
    if (!doc.contains("face") || !doc["face"].is_number_integer())
      throw Error(ErrorCode::BadInput, "stereo angle systems need an integer \"face\"");
    a.mode = AngleMode::stereographic;
    a.face = doc["face"].get<int>();
  } else {
    throw Error(ErrorCode::BadInput, "unknown mode \"" + mode + "\"");
  }
  return a;
}

Json angles_to_json(const AngleSystem& psi) {
  Json doc;
  doc["mode"] = psi.stereographic() ? "stereo" : "full";
  doc["face"] = psi.stereographic() ? Json(psi.face) : Json(nullptr);
  doc["psi"] = psi.psi;
  return doc;
}

Solution solution_from_json(const Json& doc, const WeightedMap* map_override) {
  std::optional<WeightedMap> wm;
  if (map_override)
    wm.emplace(*map_override);
  else if (doc.contains("map"))
    wm.emplace(map_from_json(doc["map"]));
  else
    throw Error(ErrorCode::BadInput, "solution file carries no map; pass one explicitly");
  Solution s{angles_from_json(doc, *wm), doc.value("grad_norm", 0.0), doc.value("iterations", 0), wm};
  return s;
}

Json solution_to_json(const AngleSystem& psi, double grad_norm, int iterations, const WeightedMap& wm) {
  Json doc = angles_to_json(psi);
  doc["grad_norm"] = grad_norm;
  doc["iterations"] = iterations;
  doc["map"] = map_to_json(wm);
  return doc;
}

}  // namespace uniformize
