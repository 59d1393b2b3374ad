#include "dfab/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "dfab/error.hpp"

namespace dfab {

std::string_view to_string(MeshFormat format) {
  switch (format) {
    case MeshFormat::stl_ascii:
      return "stl_ascii";
    case MeshFormat::stl_binary:
      return "stl_binary";
    case MeshFormat::obj:
      return "obj";
  }
  return "unknown";
}

double Aabb::longest_edge() const {
  const Vec3 e = extent();
  return std::max({e.x, e.y, e.z});
}

namespace {

constexpr std::size_t kStlHeaderSize = 80;
constexpr std::size_t kStlRecordSize = 50;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::malformed_file, what);
}

std::uint32_t read_u32_le(const std::byte* p) {
  std::uint32_t v = 0;
  std::memcpy(&v, p, sizeof v);
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
  return v;
}

float read_f32_le(const std::byte* p) {
  return std::bit_cast<float>(read_u32_le(p));
}

void append_u32_le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::byte>((v >> shift) & 0xffu));
  }
}

void append_f32_le(std::vector<std::byte>& out, float f) {
  append_u32_le(out, std::bit_cast<std::uint32_t>(f));
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool iequals_prefix(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  // from_chars rejects a leading '+', which some exporters write.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    malformed("line " + std::to_string(line_no) + ": expected a number, got '" +
              std::string(token) + "'");
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

TriangleMesh parse_stl_binary(std::span<const std::byte> bytes) {
  if (bytes.size() < kStlHeaderSize + 4) {
    malformed("binary STL shorter than its 84-byte header");
  }
  const std::uint32_t count = read_u32_le(bytes.data() + kStlHeaderSize);
  const std::uint64_t expected =
      kStlHeaderSize + 4 + static_cast<std::uint64_t>(count) * kStlRecordSize;
  if (bytes.size() < expected) {
    malformed("binary STL truncated: header declares " + std::to_string(count) +
              " triangles (" + std::to_string(expected) + " bytes) but file has " +
              std::to_string(bytes.size()) + " bytes");
  }
  TriangleMesh mesh;
  mesh.format_origin = MeshFormat::stl_binary;
  mesh.vertices.reserve(static_cast<std::size_t>(count) * 3);
  mesh.triangles.reserve(count);
  const std::byte* rec = bytes.data() + kStlHeaderSize + 4;
  for (std::uint32_t t = 0; t < count; ++t, rec += kStlRecordSize) {
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    for (int v = 0; v < 3; ++v) {
      const std::byte* p = rec + 12 + 12 * v;
      Vec3 point{read_f32_le(p), read_f32_le(p + 4), read_f32_le(p + 8)};
      if (!std::isfinite(point.x) || !std::isfinite(point.y) || !std::isfinite(point.z)) {
        malformed("binary STL triangle " + std::to_string(t) + " has a non-finite coordinate");
      }
      mesh.vertices.push_back(point);
    }
    mesh.triangles.push_back({base, base + 1, base + 2});
  }
  return mesh;
}

TriangleMesh parse_stl_ascii(std::string_view text) {
  TriangleMesh mesh;
  mesh.format_origin = MeshFormat::stl_ascii;
  bool saw_solid = false;
  bool in_facet = false;
  int facet_vertices = 0;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const auto line = trim(raw);
    if (line.empty()) return;
    const auto tokens = split_ws(line);
    const auto keyword = tokens.front();
    if (keyword == "solid") {
      saw_solid = true;
    } else if (keyword == "facet") {
      if (in_facet) malformed("line " + std::to_string(line_no) + ": nested facet");
      in_facet = true;
      facet_vertices = 0;
    } else if (keyword == "vertex") {
      if (!in_facet) malformed("line " + std::to_string(line_no) + ": vertex outside facet");
      if (tokens.size() != 4) {
        malformed("line " + std::to_string(line_no) + ": vertex needs three coordinates");
      }
      if (++facet_vertices > 3) {
        malformed("line " + std::to_string(line_no) + ": facet has more than three vertices");
      }
      mesh.vertices.push_back({parse_double(tokens[1], line_no), parse_double(tokens[2], line_no),
                               parse_double(tokens[3], line_no)});
    } else if (keyword == "endfacet") {
      if (!in_facet || facet_vertices != 3) {
        malformed("line " + std::to_string(line_no) + ": facet does not have three vertices");
      }
      const auto base = static_cast<std::uint32_t>(mesh.vertices.size() - 3);
      mesh.triangles.push_back({base, base + 1, base + 2});
      in_facet = false;
    } else if (keyword == "outer" || keyword == "endloop" || keyword == "endsolid") {
      // structural only
    } else {
      malformed("line " + std::to_string(line_no) + ": unexpected token '" + std::string(keyword) +
                "'");
    }
  });
  if (!saw_solid) malformed("ASCII STL without 'solid' header");
  if (in_facet) malformed("ASCII STL ends inside a facet");
  return mesh;
}

std::uint32_t parse_obj_index(std::string_view token, std::size_t vertex_count, std::size_t line_no) {
  const auto slash = token.find('/');
  const auto head = token.substr(0, slash);
  long long idx = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
  if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0) {
    malformed("line " + std::to_string(line_no) + ": bad face index '" + std::string(token) + "'");
  }
  const long long resolved = idx > 0 ? idx - 1 : static_cast<long long>(vertex_count) + idx;
  if (resolved < 0 || resolved >= static_cast<long long>(vertex_count)) {
    malformed("line " + std::to_string(line_no) + ": face index " + std::to_string(idx) +
              " out of range");
  }
  return static_cast<std::uint32_t>(resolved);
}

TriangleMesh parse_obj(std::string_view text) {
  TriangleMesh mesh;
  mesh.format_origin = MeshFormat::obj;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    auto line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) return;
    const auto tokens = split_ws(line);
    if (tokens.front() == "v") {
      if (tokens.size() < 4) malformed("line " + std::to_string(line_no) + ": vertex needs x y z");
      mesh.vertices.push_back({parse_double(tokens[1], line_no), parse_double(tokens[2], line_no),
                               parse_double(tokens[3], line_no)});
    } else if (tokens.front() == "f") {
      if (tokens.size() < 4) {
        malformed("line " + std::to_string(line_no) + ": face needs at least three vertices");
      }
      std::vector<std::uint32_t> corners;
      corners.reserve(tokens.size() - 1);
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        corners.push_back(parse_obj_index(tokens[t], mesh.vertices.size(), line_no));
      }
      // Fan triangulation around the first corner.
      for (std::size_t c = 1; c + 1 < corners.size(); ++c) {
        mesh.triangles.push_back({corners[0], corners[c], corners[c + 1]});
      }
    }
    // vn, vt, g, o, usemtl, s, ... carry no geometry we use.
  });
  return mesh;
}

bool looks_binary(std::span<const std::byte> bytes) {
  const auto n = std::min<std::size_t>(bytes.size(), 4096);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    if (c == 0 || (c < 0x09) || (c > 0x0d && c < 0x20 && c != 0x1b)) return true;
  }
  return false;
}

bool has_obj_records(std::string_view text) {
  bool found = false;
  for_each_line(text, [&](std::string_view raw, std::size_t) {
    const auto line = trim(raw);
    if (line.starts_with("v ") || line.starts_with("v\t") || line.starts_with("f ")) found = true;
  });
  return found;
}

std::string_view as_text(std::span<const std::byte> bytes) {
  return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

MeshFormat detect_format(std::span<const std::byte> bytes) {
  if (bytes.size() >= kStlHeaderSize + 4) {
    const std::uint32_t count = read_u32_le(bytes.data() + kStlHeaderSize);
    if (kStlHeaderSize + 4 + static_cast<std::uint64_t>(count) * kStlRecordSize == bytes.size()) {
      return MeshFormat::stl_binary;
    }
  }
  if (looks_binary(bytes)) {
    if (bytes.size() >= kStlHeaderSize + 4) return MeshFormat::stl_binary;
    throw Error(ErrorCode::unsupported_format, "binary content is not a recognisable STL");
  }
  const auto text = as_text(bytes);
  if (iequals_prefix(trim(text), "solid")) return MeshFormat::stl_ascii;
  if (has_obj_records(text)) return MeshFormat::obj;
  throw Error(ErrorCode::unsupported_format, "content is neither STL nor OBJ");
}

Vec3 face_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = cross(b - a, c - a);
  const double len = norm(n);
  return len > 0.0 ? n * (1.0 / len) : Vec3{};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TriangleMesh parse_mesh(std::span<const std::byte> bytes, std::optional<MeshFormat> format_hint) {
  if (bytes.empty()) malformed("empty input");
  const MeshFormat format = format_hint ? *format_hint : detect_format(bytes);
  switch (format) {
    case MeshFormat::stl_binary:
      return parse_stl_binary(bytes);
    case MeshFormat::stl_ascii:
      return parse_stl_ascii(as_text(bytes));
    case MeshFormat::obj:
      return parse_obj(as_text(bytes));
  }
  throw Error(ErrorCode::unsupported_format, "unknown mesh format");
}

TriangleMesh parse_mesh(std::string_view text, std::optional<MeshFormat> format_hint) {
  return parse_mesh(std::as_bytes(std::span<const char>(text.data(), text.size())), format_hint);
}

std::optional<MeshFormat> format_from_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".obj") return MeshFormat::obj;
  if (ext == ".stl") return std::nullopt;
  throw Error(ErrorCode::unsupported_format, "unsupported mesh extension '" + ext + "'");
}

TriangleMesh load_mesh(const std::filesystem::path& path, double unit_scale) {
  const auto hint = format_from_extension(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open '" + path.string() + "'");
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  TriangleMesh mesh;
  try {
    mesh = parse_mesh(std::string_view(data), hint);
  } catch (const Error& e) {
    // A file named .stl that is neither STL flavour is a broken STL.
    if (e.code() != ErrorCode::unsupported_format) throw;
    malformed("'" + path.string() + "' is not a valid STL file: " + e.what());
  }
  if (unit_scale != 1.0) {
    for (auto& v : mesh.vertices) v *= unit_scale;
  }
  return mesh;
}

std::vector<std::byte> write_stl_binary(const TriangleMesh& mesh) {
  std::vector<std::byte> out;
  out.reserve(kStlHeaderSize + 4 + mesh.triangles.size() * kStlRecordSize);
  constexpr std::string_view header = "dfab binary STL";
  for (std::size_t i = 0; i < kStlHeaderSize; ++i) {
    out.push_back(i < header.size() ? static_cast<std::byte>(header[i]) : std::byte{0});
  }
  append_u32_le(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Vec3 n = face_normal(mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
    for (int a = 0; a < 3; ++a) append_f32_le(out, static_cast<float>(n[a]));
    for (int v = 0; v < 3; ++v) {
      const Vec3 p = mesh.corner(t, v);
      for (int a = 0; a < 3; ++a) append_f32_le(out, static_cast<float>(p[a]));
    }
    out.push_back(std::byte{0});
    out.push_back(std::byte{0});
  }
  return out;
}

std::string write_stl_ascii(const TriangleMesh& mesh, std::string_view name) {
  std::ostringstream os;
  os << "solid " << name << '\n';
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Vec3 n = face_normal(mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
    os << "  facet normal " << format_double(n.x) << ' ' << format_double(n.y) << ' '
       << format_double(n.z) << "\n    outer loop\n";
    for (int v = 0; v < 3; ++v) {
      const Vec3 p = mesh.corner(t, v);
      os << "      vertex " << format_double(p.x) << ' ' << format_double(p.y) << ' '
         << format_double(p.z) << '\n';
    }
    os << "    endloop\n  endfacet\n";
  }
  os << "endsolid " << name << '\n';
  return os.str();
}

std::string write_obj(const TriangleMesh& mesh) {
  std::ostringstream os;
  for (const auto& v : mesh.vertices) {
    os << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z)
       << '\n';
  }
  for (const auto& t : mesh.triangles) {
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  return os.str();
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

double signed_volume(const TriangleMesh& mesh) {
  double six_v = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    six_v += dot(mesh.corner(t, 0), cross(mesh.corner(t, 1), mesh.corner(t, 2)));
  }
  return six_v / 6.0;
}

Aabb bounding_box(const TriangleMesh& mesh) {
  if (mesh.vertices.empty()) throw Error(ErrorCode::empty_mesh, "mesh has no vertices");
  Aabb box{mesh.vertices.front(), mesh.vertices.front()};
  for (const auto& v : mesh.vertices) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], v[a]);
      box.max[a] = std::max(box.max[a], v[a]);
    }
  }
  return box;
}

TriangleMesh scaled(const TriangleMesh& mesh, double factor, const Vec3& about) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v = about + (v - about) * factor;
  return out;
}

TriangleMesh translated(const TriangleMesh& mesh, const Vec3& offset) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v += offset;
  return out;
}

namespace {

using EdgeKey = std::pair<std::uint32_t, std::uint32_t>;

EdgeKey undirected(std::uint32_t a, std::uint32_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::map<EdgeKey, std::vector<std::uint32_t>> edge_incidence(const std::vector<Triangle>& tris) {
  std::map<EdgeKey, std::vector<std::uint32_t>> edges;
  for (std::uint32_t t = 0; t < tris.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      edges[undirected(tris[t][e], tris[t][(e + 1) % 3])].push_back(t);
    }
  }
  return edges;
}

bool has_directed_edge(const Triangle& tri, std::uint32_t a, std::uint32_t b) {
  for (int e = 0; e < 3; ++e) {
    if (tri[e] == a && tri[(e + 1) % 3] == b) return true;
  }
  return false;
}

void flip(Triangle& tri) { std::swap(tri[1], tri[2]); }

struct WeldKeyHash {
  std::size_t operator()(const std::array<std::int64_t, 3>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Maps every vertex to the earliest representative within `tolerance`.
// Representatives end up pairwise farther apart than `tolerance`.
std::vector<std::uint32_t> weld(const std::vector<Vec3>& vertices, double tolerance,
                                std::vector<Vec3>& reps) {
  std::vector<std::uint32_t> remap(vertices.size());
  const double bucket = tolerance > 0.0 ? tolerance : 1.0;
  std::unordered_map<std::array<std::int64_t, 3>, std::vector<std::uint32_t>, WeldKeyHash> grid;
  auto key_of = [&](const Vec3& p) {
    return std::array<std::int64_t, 3>{static_cast<std::int64_t>(std::floor(p.x / bucket)),
                                       static_cast<std::int64_t>(std::floor(p.y / bucket)),
                                       static_cast<std::int64_t>(std::floor(p.z / bucket))};
  };
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Vec3& p = vertices[v];
    const auto key = key_of(p);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = grid.find({key[0] + dx, key[1] + dy, key[2] + dz});
          if (it == grid.end()) continue;
          for (const auto r : it->second) {
            const bool close = tolerance > 0.0 ? distance(reps[r], p) <= tolerance : reps[r] == p;
            if (close && r < best) best = r;
          }
        }
      }
    }
    if (best == std::numeric_limits<std::uint32_t>::max()) {
      best = static_cast<std::uint32_t>(reps.size());
      reps.push_back(p);
      grid[key].push_back(best);
    }
    remap[v] = best;
  }
  return remap;
}

}  // namespace

bool is_watertight(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) return false;
  const auto edges = edge_incidence(mesh.triangles);
  return std::all_of(edges.begin(), edges.end(),
                     [](const auto& kv) { return kv.second.size() == 2; });
}

RepairedMesh repair_mesh(const TriangleMesh& mesh, double weld_tolerance) {
  RepairedMesh result;
  RepairSummary& summary = result.summary;
  result.mesh.format_origin = mesh.format_origin;

  std::vector<Vec3> reps;
  const auto remap = weld(mesh.vertices, weld_tolerance, reps);
  summary.welded_vertices = mesh.vertices.size() - reps.size();

  std::vector<Triangle> tris;
  tris.reserve(mesh.triangles.size());
  std::map<std::array<std::uint32_t, 3>, bool> seen;
  for (const auto& t : mesh.triangles) {
    const Triangle w{remap[t[0]], remap[t[1]], remap[t[2]]};
    if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2] ||
        triangle_area(reps[w[0]], reps[w[1]], reps[w[2]]) < kDegenerateArea) {
      ++summary.removed_degenerate;
      continue;
    }
    std::array<std::uint32_t, 3> key = w;
    std::sort(key.begin(), key.end());
    if (!seen.emplace(key, true).second) {
      ++summary.removed_duplicate;
      continue;
    }
    tris.push_back(w);
  }

  // Propagate a consistent winding through manifold edges, one connected
  // component at a time, seeded by the component's first triangle.
  const auto edges = edge_incidence(tris);
  std::vector<bool> flipped(tris.size(), false);
  std::vector<int> component(tris.size(), -1);
  bool orientable = true;
  bool all_closed = !tris.empty();
  std::vector<bool> component_closed;
  int components = 0;
  for (std::uint32_t seed = 0; seed < tris.size(); ++seed) {
    if (component[seed] >= 0) continue;
    const int id = components++;
    bool closed = true;
    std::queue<std::uint32_t> frontier;
    component[seed] = id;
    frontier.push(seed);
    while (!frontier.empty()) {
      const auto t = frontier.front();
      frontier.pop();
      for (int e = 0; e < 3; ++e) {
        const auto a = tris[t][e];
        const auto b = tris[t][(e + 1) % 3];
        const auto& incident = edges.at(undirected(a, b));
        if (incident.size() != 2) {
          closed = false;
          continue;
        }
        const auto other = incident[0] == t ? incident[1] : incident[0];
        const bool same_direction = has_directed_edge(tris[other], a, b);
        if (component[other] < 0) {
          if (same_direction) {
            flip(tris[other]);
            flipped[other] = !flipped[other];
          }
          component[other] = id;
          frontier.push(other);
        } else if (same_direction) {
          orientable = false;
        }
      }
    }
    component_closed.push_back(closed);
    all_closed = all_closed && closed;
  }

  if (orientable) {
    // Closed components face outward.
    std::vector<double> six_volume(static_cast<std::size_t>(components), 0.0);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      six_volume[static_cast<std::size_t>(component[t])] +=
          dot(reps[tris[t][0]], cross(reps[tris[t][1]], reps[tris[t][2]]));
    }
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto c = static_cast<std::size_t>(component[t]);
      if (component_closed[c] && six_volume[c] < 0.0) {
        flip(tris[t]);
        flipped[t] = !flipped[t];
      }
    }
  }
  summary.flipped_triangles =
      static_cast<std::size_t>(std::count(flipped.begin(), flipped.end(), true));
  summary.manifold = all_closed && orientable;

  // Drop vertices no triangle references, preserving order.
  std::vector<std::uint32_t> compact(reps.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<bool> used(reps.size(), false);
  for (const auto& t : tris) {
    for (auto v : t) used[v] = true;
  }
  for (std::uint32_t v = 0; v < reps.size(); ++v) {
    if (!used[v]) {
      ++summary.removed_unreferenced;
      continue;
    }
    compact[v] = static_cast<std::uint32_t>(result.mesh.vertices.size());
    result.mesh.vertices.push_back(reps[v]);
  }
  result.mesh.triangles.reserve(tris.size());
  for (const auto& t : tris) {
    result.mesh.triangles.push_back({compact[t[0]], compact[t[1]], compact[t[2]]});
  }
  return result;
}

}  // namespace dfab
