#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfab/geometry.hpp"

namespace dfab {

enum class MeshFormat { stl_ascii, stl_binary, obj };

std::string_view to_string(MeshFormat format);

using Triangle = std::array<std::uint32_t, 3>;

/// Indexed triangle soup in centimeters.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  MeshFormat format_origin = MeshFormat::stl_binary;

  bool empty() const { return vertices.empty(); }
  Vec3 corner(std::size_t triangle, int which) const {
    return vertices[triangles[triangle][static_cast<std::size_t>(which)]];
  }
};

struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 extent() const { return max - min; }
  double longest_edge() const;
};

/// Decode STL (ASCII or binary) or OBJ bytes. Without a hint the format is
/// detected from the content: a binary STL is recognised by its size law
/// (84 + 50 * count bytes), ASCII STL by a leading "solid", OBJ by v/f records.
/// Throws Error{malformed_file} or Error{unsupported_format}.
TriangleMesh parse_mesh(std::span<const std::byte> bytes,
                        std::optional<MeshFormat> format_hint = std::nullopt);

TriangleMesh parse_mesh(std::string_view text, std::optional<MeshFormat> format_hint = std::nullopt);

/// Maps a file extension (".stl", ".obj", case-insensitive) to a hint. STL stays
/// unresolved between the ASCII and binary variants and is left to detection.
std::optional<MeshFormat> format_from_extension(const std::filesystem::path& path);

/// Reads a mesh file and multiplies every coordinate by unit_scale.
TriangleMesh load_mesh(const std::filesystem::path& path, double unit_scale = 1.0);

std::vector<std::byte> write_stl_binary(const TriangleMesh& mesh);
std::string write_stl_ascii(const TriangleMesh& mesh, std::string_view name = "mesh");
std::string write_obj(const TriangleMesh& mesh);

inline constexpr double kDefaultWeldTolerance = 1e-4;  // cm
inline constexpr double kDegenerateArea = 1e-9;         // cm^2

struct RepairSummary {
  std::size_t welded_vertices = 0;
  std::size_t removed_degenerate = 0;
  std::size_t removed_duplicate = 0;
  std::size_t removed_unreferenced = 0;
  std::size_t flipped_triangles = 0;
  /// Closed (every edge shared by exactly two triangles) and consistently orientable.
  bool manifold = false;
};

struct RepairedMesh {
  TriangleMesh mesh;
  RepairSummary summary;
};

/// Welds vertices closer than weld_tolerance, drops zero-area and duplicate
/// triangles, unifies winding across manifold edges and orients closed
/// components outward. Best effort: never throws.
RepairedMesh repair_mesh(const TriangleMesh& mesh, double weld_tolerance = kDefaultWeldTolerance);

/// Every undirected edge is shared by exactly two triangles, so a ray parity
/// inside test is well defined.
bool is_watertight(const TriangleMesh& mesh);

/// Throws Error{empty_mesh} when the mesh has no vertices.
Aabb bounding_box(const TriangleMesh& mesh);

/// Uniform scale about `about`.
TriangleMesh scaled(const TriangleMesh& mesh, double factor, const Vec3& about = {});
TriangleMesh translated(const TriangleMesh& mesh, const Vec3& offset);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Signed enclosed volume (positive for outward-oriented closed meshes).
double signed_volume(const TriangleMesh& mesh);

}  // namespace dfab
