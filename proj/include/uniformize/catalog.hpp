#pragma once

#include <string>
#include <vector>

#include "uniformize/map.hpp"

namespace uniformize::catalog {

SurfaceMap tetrahedron();
SurfaceMap cube();
SurfaceMap octahedron();
/// Square grid on the torus, m columns by n rows (m, n >= 2). Vertex (i, j)
/// has id i + m j and darts 4 id + k pointing east, north, west, south.
SurfaceMap torus_grid(int m, int n);
/// Triangulated k×k torus.
SurfaceMap triangulated_torus(int k);
/// Connected sum of two triangulated 4×4 tori: 29 vertices, 93 edges, 62 faces.
SurfaceMap genus_two();
/// Four triangles and four hexagons.
SurfaceMap truncated_tetrahedron();

/// The cube with the dart involution induced by the antipodal map.
struct SymmetricSphere {
  SurfaceMap map;
  std::vector<int> involution;
};
SymmetricSphere cube_with_antipodal_map();

/// Weighted examples by name: tetrahedron, cube, octahedron, torus2x2, torus3x3,
/// genus2, truncated_tetrahedron. Throws Error{BadInput} for unknown names.
WeightedMap example(const std::string& name);
std::vector<std::string> example_names();

}  // namespace uniformize::catalog
