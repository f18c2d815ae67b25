#ifndef JAWKIT_MESH_HPP
#define JAWKIT_MESH_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "jawkit/se3.hpp"

namespace jawkit {

/// Indexed triangle surface, coordinates in mm. Loaders drop degenerate
/// (zero-area) triangles and reject out-of-range indices.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> normals;  // per-vertex, empty when absent

  bool has_normals() const { return normals.size() == vertices.size(); }
};

enum class MeshFormat { ply, ply_ascii, stl, obj };

/// Format from file extension (.ply/.stl/.obj). Errors: unsupported_format.
MeshFormat mesh_format_from_path(const std::filesystem::path& path);

TriangleMesh load_mesh(const std::filesystem::path& path);
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path,
               MeshFormat format);

/// Removes degenerate triangles (repeated indices or zero area); returns the
/// number dropped. Loaders call this and warn when nonzero.
size_t drop_degenerate_triangles(TriangleMesh& mesh);

/// Applies a rigid transform to every vertex (and normal, if present).
TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t);

/// Angle-weighted per-vertex normals from face windings.
std::vector<Vec3> compute_vertex_normals(const TriangleMesh& mesh);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
  Vec3 extent() const { return max - min; }
  double diagonal() const { return extent().norm(); }
};
Aabb bounding_box(const TriangleMesh& mesh);

namespace detail {
/// Additional per-vertex scalar columns for PLY output (used by distance
/// maps: "distance_mm" as double, "valid" as uchar).
struct PlyExtraProperty {
  std::string name;
  bool is_uchar = false;
  std::vector<double> values;
};
void write_ply(const TriangleMesh& mesh, const std::filesystem::path& path,
               bool binary, const std::vector<PlyExtraProperty>& extra);
}  // namespace detail

}  // namespace jawkit

#endif  // JAWKIT_MESH_HPP
