#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "tsfem/levelset.hpp"

namespace tsfem {

/// Piecewise-flat reference triangulation with all vertices on the surface.
/// For curves (surface_dim == 1) only the first two cell indices are used.
struct FlatMesh {
  int surface_dim = 2;
  int level = 0;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> cells;

  int vertices_per_cell() const noexcept { return surface_dim + 1; }
  std::size_t num_cells() const noexcept { return cells.size(); }

  double cell_diameter(std::size_t cell) const;
  /// Global mesh size h: the maximal cell diameter.
  double h() const;
  double min_diameter() const;
  /// Number of distinct edges (d = 2) or vertices (d = 1).
  std::size_t num_edges() const;
};

/// Builds the level-`level` reference mesh: a 2^(level+3)-gon equispaced in
/// parameter angle for curves, a refined icosahedron for surfaces.
FlatMesh generate(const LevelSetSurface& surface, int level);

/// Uniform refinement (triangles 1:4, segments 1:2) with the new vertices
/// projected onto the surface.
FlatMesh refine(const FlatMesh& mesh, const LevelSetSurface& surface);

/// ASCII OFF output with 17 significant digits (surface meshes only).
void save_off(const FlatMesh& mesh, const std::filesystem::path& path);
FlatMesh load_off(const std::filesystem::path& path);

}  // namespace tsfem
