#include "uniformize/catalog.hpp"

#include <map>
#include <numbers>

#include "uniformize/error.hpp"

namespace uniformize::catalog {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::vector<int>> kCubeFaces = {
    {0, 1, 3, 2}, {4, 6, 7, 5}, {0, 4, 5, 1}, {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 5, 7, 3}};

std::vector<std::vector<int>> torus_triangles(int k, int offset) {
  auto id = [k, offset](int i, int j) { return offset + ((i % k + k) % k) + k * ((j % k + k) % k); };
  std::vector<std::vector<int>> tris;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  return tris;
}

}  // namespace

SurfaceMap tetrahedron() { return map_from_polygons(4, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}); }

SurfaceMap cube() { return map_from_polygons(8, kCubeFaces); }

SurfaceMap octahedron() {
  // 0/1 = ±x, 2/3 = ±y, 4/5 = ±z
  return map_from_polygons(6, {{0, 2, 4}, {1, 3, 4}, {0, 4, 3}, {1, 4, 2},
                               {0, 5, 2}, {1, 5, 3}, {0, 3, 5}, {1, 2, 5}});
}

SurfaceMap torus_grid(int m, int n) {
  if (m < 2 || n < 2) throw Error(ErrorCode::BadInput, "torus grid needs at least 2x2 vertices");
  const int nd = 4 * m * n;
  auto vid = [m, n](int i, int j) { return ((i % m + m) % m) + m * ((j % n + n) % n); };
  std::vector<int> opposite(nd), next(nd);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      const int v = vid(i, j);
      for (int k = 0; k < 4; ++k) next[4 * v + k] = 4 * v + (k + 1) % 4;
      opposite[4 * v + 0] = 4 * vid(i + 1, j) + 2;
      opposite[4 * v + 2] = 4 * vid(i - 1, j) + 0;
      opposite[4 * v + 1] = 4 * vid(i, j + 1) + 3;
      opposite[4 * v + 3] = 4 * vid(i, j - 1) + 1;
    }
  return SurfaceMap::build(std::move(opposite), std::move(next));
}

SurfaceMap triangulated_torus(int k) {
  if (k < 3) throw Error(ErrorCode::BadInput, "triangulated torus needs k >= 3");
  return map_from_polygons(k * k, torus_triangles(k, 0));
}

SurfaceMap genus_two() {
  // Remove the triangle {0,1,5} from each torus and glue the holes with
  // opposite orientations: second-copy vertices 16, 17, 21 become 0, 5, 1.
  auto first = torus_triangles(4, 0);
  auto second = torus_triangles(4, 16);
  first.erase(first.begin());
  second.erase(second.begin());
  std::map<int, int> relabel{{16, 0}, {17, 5}, {21, 1}};
  int next_id = 16;
  for (int v = 16; v < 32; ++v)
    if (!relabel.count(v)) relabel[v] = next_id++;
  for (auto& tri : second)
    for (int& v : tri) v = relabel[v];
  first.insert(first.end(), second.begin(), second.end());
  return map_from_polygons(next_id, first);
}

SurfaceMap truncated_tetrahedron() {
  const std::vector<std::vector<int>> faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  // vertex (a,b) sits on the tetrahedron edge ab next to corner a
  auto id = [](int a, int b) { return 3 * a + (b < a ? b : b - 1); };
  std::vector<std::vector<int>> polys;
  std::vector<int> succ(12, -1);
  for (const auto& f : faces) {
    std::vector<int> hex;
    for (int i = 0; i < 3; ++i) {
      const int a = f[i], b = f[(i + 1) % 3], c = f[(i + 2) % 3];
      hex.push_back(id(a, b));
      hex.push_back(id(b, a));
      succ[id(a, b)] = id(a, c);
    }
    polys.push_back(hex);
  }
  for (int a = 0; a < 4; ++a) {
    const int start = id(a, a == 0 ? 1 : 0);
    std::vector<int> tri{start};
    for (int x = succ[start]; x != start; x = succ[x]) tri.push_back(x);
    polys.push_back(tri);
  }
  return map_from_polygons(12, polys);
}

SymmetricSphere cube_with_antipodal_map() {
  std::vector<std::pair<int, int>> ends;
  SurfaceMap m = map_from_polygons(8, kCubeFaces, &ends);
  std::map<std::pair<int, int>, int> index;
  for (int d = 0; d < static_cast<int>(ends.size()); ++d) index[ends[d]] = d;
  std::vector<int> g(ends.size());
  for (int d = 0; d < static_cast<int>(ends.size()); ++d) g[d] = index.at({7 - ends[d].first, 7 - ends[d].second});
  return {std::move(m), std::move(g)};
}

std::vector<std::string> example_names() {
  return {"tetrahedron", "cube", "octahedron", "torus2x2", "torus3x3", "genus2", "truncated_tetrahedron"};
}

WeightedMap example(const std::string& name) {
  if (name == "tetrahedron") return with_uniform_weight(tetrahedron(), kPi / 3);
  if (name == "cube") return with_uniform_weight(cube(), kPi / 2);
  if (name == "octahedron") return with_uniform_weight(octahedron(), kPi / 3);
  if (name == "torus2x2") return with_uniform_weight(torus_grid(2, 2), kPi / 2);
  if (name == "torus3x3") return with_uniform_weight(torus_grid(3, 3), kPi / 2);
  if (name == "genus2") return with_uniform_weight(genus_two(), kPi / 3);
  if (name == "truncated_tetrahedron") return with_uniform_weight(truncated_tetrahedron(), kPi / 2);
  throw Error(ErrorCode::BadInput, "unknown example \"" + name + "\"");
}

}  // namespace uniformize::catalog
