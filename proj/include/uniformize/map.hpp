#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace uniformize {

/// Combinatorial map of a closed orientable surface.
///
/// Darts are oriented edges, numbered 0..dart_count-1. `opposite` reverses a
/// dart and `next_at_vertex` rotates counterclockwise around the dart's tail
/// vertex. Faces are the orbits of next_at_vertex∘opposite, so every face lies
/// to the right of each of its darts (clockwise boundary traversal).
///
/// Vertices, edges and faces are numbered by the smallest dart they contain.
class SurfaceMap {
 public:
  /// Validates the permutations and computes all orbit structures.
  /// Throws Error{NotInvolution, FixedDart, Disconnected, LoopEdge, BadInput}.
  static SurfaceMap build(std::vector<int> opposite, std::vector<int> next_at_vertex);

  int dart_count() const { return static_cast<int>(opposite_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_darts_.size()); }
  int edge_count() const { return static_cast<int>(edge_darts_.size()); }
  int face_count() const { return static_cast<int>(face_darts_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

  int opposite(int d) const { return opposite_[d]; }
  int next_at_vertex(int d) const { return next_[d]; }
  int prev_at_vertex(int d) const { return prev_[d]; }
  int next_in_face(int d) const { return next_[opposite_[d]]; }

  /// Tail vertex of a dart.
  int vertex_of(int d) const { return dart_vertex_[d]; }
  int head_of(int d) const { return dart_vertex_[opposite_[d]]; }
  /// The projection |s|.
  int edge_of(int d) const { return dart_edge_[d]; }
  /// The face to the right of the dart.
  int face_of(int d) const { return dart_face_[d]; }

  /// Darts leaving v, counterclockwise, starting from the smallest.
  const std::vector<int>& darts_at_vertex(int v) const { return vertex_darts_[v]; }
  /// Darts of a face in boundary order, starting from the smallest.
  const std::vector<int>& darts_of_face(int f) const { return face_darts_[f]; }
  /// {smaller dart, larger dart}.
  const std::array<int, 2>& edge_darts(int e) const { return edge_darts_[e]; }

  const std::vector<int>& opposite_permutation() const { return opposite_; }
  const std::vector<int>& rotation_permutation() const { return next_; }

  /// Incidence bracket <v,e>: 1 if e is incident to v.
  bool incident(int v, int e) const;

 private:
  std::vector<int> opposite_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> dart_vertex_;
  std::vector<int> dart_edge_;
  std::vector<int> dart_face_;
  std::vector<std::vector<int>> vertex_darts_;
  std::vector<std::array<int, 2>> edge_darts_;
  std::vector<std::vector<int>> face_darts_;
};

SurfaceMap build_map(int dart_count, std::span<const int> opposite,
                     std::span<const int> next_at_vertex);

int euler_characteristic(const SurfaceMap& map);

/// Builds a map from polygons listed counterclockwise (outward orientation).
/// Each undirected vertex pair may carry at most one edge. If `dart_ends` is
/// given it receives the (tail, head) polygon labels of every dart.
SurfaceMap map_from_polygons(int vertex_count, const std::vector<std::vector<int>>& polygons,
                             std::vector<std::pair<int, int>>* dart_ends = nullptr);

/// A surface map with an intersection angle θ(e) ∈ (0,π) on every edge.
class WeightedMap {
 public:
  /// Throws Error{BadInput} if the size mismatches or some θ leaves (0,π).
  WeightedMap(SurfaceMap map, std::vector<double> theta);

  const SurfaceMap& map() const { return map_; }
  double theta(int e) const { return theta_[e]; }
  double theta_of_dart(int d) const { return theta_[map_.edge_of(d)]; }
  const std::vector<double>& thetas() const { return theta_; }
  int chi() const { return map_.euler_characteristic(); }

 private:
  SurfaceMap map_;
  std::vector<double> theta_;
};

WeightedMap with_uniform_weight(SurfaceMap map, double theta);

}  // namespace uniformize
