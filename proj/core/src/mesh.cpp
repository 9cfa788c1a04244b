#include "tsfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "tsfem/error.hpp"

namespace tsfem {

double FlatMesh::cell_diameter(std::size_t cell) const {
  const auto& c = cells[cell];
  if (surface_dim == 1) return (vertices[c[1]] - vertices[c[0]]).norm();
  return std::max({(vertices[c[1]] - vertices[c[0]]).norm(), (vertices[c[2]] - vertices[c[1]]).norm(),
                   (vertices[c[0]] - vertices[c[2]]).norm()});
}

double FlatMesh::h() const {
  double h = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) h = std::max(h, cell_diameter(i));
  return h;
}

double FlatMesh::min_diameter() const {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) h = std::min(h, cell_diameter(i));
  return h;
}

std::size_t FlatMesh::num_edges() const {
  if (surface_dim == 1) return vertices.size();
  std::set<std::pair<int, int>> edges;
  for (const auto& c : cells) {
    for (int i = 0; i < 3; ++i) {
      const int a = c[i], b = c[(i + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return edges.size();
}

namespace {

FlatMesh icosahedron(const LevelSetSurface& surface) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::array<Vec3, 12> raw = {Vec3(-1, g, 0), Vec3(1, g, 0),   Vec3(-1, -g, 0), Vec3(1, -g, 0),
                                    Vec3(0, -1, g), Vec3(0, 1, g),   Vec3(0, -1, -g), Vec3(0, 1, -g),
                                    Vec3(g, 0, -1), Vec3(g, 0, 1),   Vec3(-g, 0, -1), Vec3(-g, 0, 1)};
  static constexpr std::array<std::array<int, 3>, 20> faces = {{
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
  }};

  FlatMesh mesh;
  mesh.surface_dim = 2;
  for (const auto& v : raw) {
    const Vec3 u = v.normalized();
    const Vec3 scaled = u.cwiseProduct(surface.semiaxes());
    mesh.vertices.push_back(closest_point(surface, scaled).point);
  }
  for (auto f : faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3 normal = (mesh.vertices[f[1]] - a).cross(mesh.vertices[f[2]] - a);
    if (normal.dot(a + mesh.vertices[f[1]] + mesh.vertices[f[2]]) < 0.0) std::swap(f[1], f[2]);
    mesh.cells.push_back(f);
  }
  return mesh;
}

FlatMesh polygon(const LevelSetSurface& surface, int segments) {
  FlatMesh mesh;
  mesh.surface_dim = 1;
  const Vec3& ax = surface.semiaxes();
  for (int k = 0; k < segments; ++k) {
    const double t = 2.0 * std::numbers::pi * k / segments;
    mesh.vertices.push_back(closest_point(surface, Vec3(ax[0] * std::cos(t), ax[1] * std::sin(t), 0.0)).point);
    mesh.cells.push_back({k, (k + 1) % segments, 0});
  }
  return mesh;
}

}  // namespace

FlatMesh generate(const LevelSetSurface& surface, int level) {
  if (level < 0) throw ConfigError("mesh level must be non-negative");
  if (surface.surface_dim() == 1) {
    FlatMesh mesh = polygon(surface, 1 << (level + 3));
    mesh.level = level;
    return mesh;
  }
  FlatMesh mesh = icosahedron(surface);
  for (int l = 0; l < level; ++l) mesh = refine(mesh, surface);
  return mesh;
}

FlatMesh refine(const FlatMesh& mesh, const LevelSetSurface& surface) {
  FlatMesh fine;
  fine.surface_dim = mesh.surface_dim;
  fine.level = mesh.level + 1;
  fine.vertices = mesh.vertices;

  std::map<std::pair<int, int>, int> midpoints;
  auto midpoint = [&](int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
    const Vec3 m = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
    fine.vertices.push_back(closest_point(surface, m).point);
    const int id = static_cast<int>(fine.vertices.size()) - 1;
    midpoints.emplace(key, id);
    return id;
  };

  if (mesh.surface_dim == 1) {
    for (const auto& c : mesh.cells) {
      const int m = midpoint(c[0], c[1]);
      fine.cells.push_back({c[0], m, 0});
      fine.cells.push_back({m, c[1], 0});
    }
    return fine;
  }
  for (const auto& c : mesh.cells) {
    const int ab = midpoint(c[0], c[1]);
    const int bc = midpoint(c[1], c[2]);
    const int ca = midpoint(c[2], c[0]);
    fine.cells.push_back({c[0], ab, ca});
    fine.cells.push_back({ab, c[1], bc});
    fine.cells.push_back({ca, bc, c[2]});
    fine.cells.push_back({ab, bc, ca});
  }
  return fine;
}

void save_off(const FlatMesh& mesh, const std::filesystem::path& path) {
  if (mesh.surface_dim != 2) throw ConfigError("OFF output supports triangle meshes only");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.cells.size() << " 0\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& c : mesh.cells) out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

FlatMesh load_off(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  int line_no = 0;
  std::string line;
  // Next non-empty, non-comment line.
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next()) throw ParseError("empty file", std::max(line_no, 1));
  {
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic != "OFF") throw ParseError("missing OFF header", line_no);
  }
  if (!next()) throw ParseError("missing element counts", line_no + 1);
  long nv = -1, nf = -1, ne = 0;
  {
    std::istringstream cs(line);
    if (!(cs >> nv >> nf) || nv < 0 || nf < 0) throw ParseError("malformed element counts", line_no);
    cs >> ne;
  }

  FlatMesh mesh;
  mesh.surface_dim = 2;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next()) throw ParseError("unexpected end of file in vertex list", line_no + 1);
    std::istringstream vs(line);
    Vec3 v;
    if (!(vs >> v[0] >> v[1] >> v[2])) throw ParseError("malformed vertex", line_no);
    mesh.vertices.push_back(v);
  }
  for (long i = 0; i < nf; ++i) {
    if (!next()) throw ParseError("unexpected end of file in face list", line_no + 1);
    std::istringstream fs(line);
    int count = 0;
    if (!(fs >> count)) throw ParseError("malformed face", line_no);
    if (count != 3) throw NonTriangleCell("face on line " + std::to_string(line_no) + " has " +
                                          std::to_string(count) + " vertices");
    std::array<int, 3> c{};
    if (!(fs >> c[0] >> c[1] >> c[2])) throw ParseError("malformed face", line_no);
    for (int k : c) {
      if (k < 0 || k >= nv) throw ParseError("vertex index out of range", line_no);
    }
    mesh.cells.push_back(c);
  }
  return mesh;
}

}  // namespace tsfem
