#include "uniformize/map.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "uniformize/error.hpp"

namespace uniformize {

namespace {

// Labels the orbits of `perm`, numbering them by their smallest element.
std::vector<std::vector<int>> orbits(const std::vector<int>& perm, std::vector<int>& label) {
  const int n = static_cast<int>(perm.size());
  label.assign(n, -1);
  std::vector<std::vector<int>> result;
  for (int start = 0; start < n; ++start) {
    if (label[start] != -1) continue;
    const int id = static_cast<int>(result.size());
    result.emplace_back();
    int d = start;
    do {
      label[d] = id;
      result.back().push_back(d);
      d = perm[d];
    } while (d != start);
  }
  return result;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

SurfaceMap SurfaceMap::build(std::vector<int> opposite, std::vector<int> next_at_vertex) {
  const int n = static_cast<int>(opposite.size());
  if (n == 0) throw Error(ErrorCode::BadInput, "map has no darts");
  if (static_cast<int>(next_at_vertex.size()) != n)
    throw Error(ErrorCode::BadInput, "opposite and next_at_vertex differ in length");
  for (int d = 0; d < n; ++d) {
    if (opposite[d] < 0 || opposite[d] >= n)
      throw Error(ErrorCode::BadInput, "opposite(" + std::to_string(d) + ") out of range");
    if (next_at_vertex[d] < 0 || next_at_vertex[d] >= n)
      throw Error(ErrorCode::BadInput, "next_at_vertex(" + std::to_string(d) + ") out of range");
  }
  for (int d = 0; d < n; ++d) {
    if (opposite[d] == d) throw Error(ErrorCode::FixedDart, "opposite fixes dart " + std::to_string(d));
    if (opposite[opposite[d]] != d)
      throw Error(ErrorCode::NotInvolution, "opposite is not an involution at dart " + std::to_string(d));
  }
  if (!is_permutation(next_at_vertex))
    throw Error(ErrorCode::BadInput, "next_at_vertex is not a permutation");

  SurfaceMap m;
  m.opposite_ = std::move(opposite);
  m.next_ = std::move(next_at_vertex);
  m.prev_.assign(n, 0);
  for (int d = 0; d < n; ++d) m.prev_[m.next_[d]] = d;

  m.vertex_darts_ = orbits(m.next_, m.dart_vertex_);

  std::vector<int> face_perm(n);
  for (int d = 0; d < n; ++d) face_perm[d] = m.next_[m.opposite_[d]];
  m.face_darts_ = orbits(face_perm, m.dart_face_);

  m.dart_edge_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (m.dart_edge_[d] != -1) continue;
    const int e = static_cast<int>(m.edge_darts_.size());
    m.edge_darts_.push_back({d, m.opposite_[d]});
    m.dart_edge_[d] = e;
    m.dart_edge_[m.opposite_[d]] = e;
  }

  // connectivity under the group generated by both permutations
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int d = stack.back();
    stack.pop_back();
    for (int nb : {m.opposite_[d], m.next_[d], m.prev_[d]}) {
      if (!seen[nb]) {
        seen[nb] = 1;
        ++reached;
        stack.push_back(nb);
      }
    }
  }
  if (reached != n) throw Error(ErrorCode::Disconnected, "map has more than one component");

  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [a, b] = m.edge_darts_[e];
    if (m.dart_vertex_[a] == m.dart_vertex_[b])
      throw Error(ErrorCode::LoopEdge, "edge " + std::to_string(e) + " has equal endpoints");
  }
  return m;
}

bool SurfaceMap::incident(int v, int e) const {
  const auto [a, b] = edge_darts_[e];
  return dart_vertex_[a] == v || dart_vertex_[b] == v;
}

SurfaceMap build_map(int dart_count, std::span<const int> opposite,
                     std::span<const int> next_at_vertex) {
  if (dart_count < 0 || static_cast<int>(opposite.size()) != dart_count ||
      static_cast<int>(next_at_vertex.size()) != dart_count)
    throw Error(ErrorCode::BadInput, "permutation arrays must have length dart_count");
  return SurfaceMap::build({opposite.begin(), opposite.end()},
                           {next_at_vertex.begin(), next_at_vertex.end()});
}

int euler_characteristic(const SurfaceMap& map) { return map.euler_characteristic(); }

SurfaceMap map_from_polygons(int vertex_count, const std::vector<std::vector<int>>& polygons,
                             std::vector<std::pair<int, int>>* ends_out) {
  // Reversed polygons run clockwise, which makes them orbits of next∘opposite.
  std::map<std::pair<int, int>, int> dart_index;
  std::vector<std::pair<int, int>> dart_ends;
  std::vector<int> face_next;
  for (const auto& poly : polygons) {
    const int k = static_cast<int>(poly.size());
    if (k < 2) throw Error(ErrorCode::BadInput, "polygon with fewer than two vertices");
    const int first = static_cast<int>(dart_ends.size());
    for (int i = 0; i < k; ++i) {
      const int u = poly[(k - i) % k];
      const int w = poly[(2 * k - i - 1) % k];
      if (u < 0 || u >= vertex_count || w < 0 || w >= vertex_count)
        throw Error(ErrorCode::BadInput, "polygon vertex out of range");
      if (!dart_index.emplace(std::pair{u, w}, static_cast<int>(dart_ends.size())).second)
        throw Error(ErrorCode::BadInput, "directed edge used twice; polygons are not consistently oriented");
      dart_ends.emplace_back(u, w);
      face_next.push_back(i + 1 < k ? first + i + 1 : first);
    }
  }
  const int n = static_cast<int>(dart_ends.size());
  std::vector<int> opposite(n), next(n);
  for (int d = 0; d < n; ++d) {
    const auto it = dart_index.find({dart_ends[d].second, dart_ends[d].first});
    if (it == dart_index.end()) throw Error(ErrorCode::BadInput, "surface has a boundary edge");
    opposite[d] = it->second;
  }
  for (int d = 0; d < n; ++d) next[d] = face_next[opposite[d]];
  if (ends_out) *ends_out = dart_ends;
  return SurfaceMap::build(std::move(opposite), std::move(next));
}

WeightedMap::WeightedMap(SurfaceMap map, std::vector<double> theta)
    : map_(std::move(map)), theta_(std::move(theta)) {
  if (static_cast<int>(theta_.size()) != map_.edge_count())
    throw Error(ErrorCode::BadInput, "expected " + std::to_string(map_.edge_count()) +
                                         " weights, got " + std::to_string(theta_.size()));
  for (int e = 0; e < map_.edge_count(); ++e) {
    if (!(theta_[e] > 0.0 && theta_[e] < std::numbers::pi))
      throw Error(ErrorCode::BadInput, "theta(" + std::to_string(e) + ") not in (0,pi)");
  }
}

WeightedMap with_uniform_weight(SurfaceMap map, double theta) {
  const int ne = map.edge_count();
  return WeightedMap(std::move(map), std::vector<double>(ne, theta));
}

}  // namespace uniformize
