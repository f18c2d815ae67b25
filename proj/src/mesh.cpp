#include "jawkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "jawkit/error.hpp"
#include "jawkit/io_util.hpp"
#include "jawkit/log.hpp"

namespace jawkit {

namespace {

constexpr double kDegenerateAreaTol = 1e-12;  // mm^2

[[noreturn]] void fail_parse(const std::filesystem::path& path, size_t offset,
                             const std::string& what) {
  throw Error(ErrorCode::parse_error,
              path.string() + " (byte " + std::to_string(offset) + "): " + what);
}

void validate_indices(TriangleMesh& mesh, const std::filesystem::path& path) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= n) {
        throw Error(ErrorCode::parse_error,
                    path.string() + ": triangle index " + std::to_string(t[k]) +
                        " out of range [0, " + std::to_string(n) + ")");
      }
    }
  }
}

void finish_load(TriangleMesh& mesh, const std::filesystem::path& path) {
  validate_indices(mesh, path);
  if (mesh.vertices.size() < 3) {
    throw Error(ErrorCode::parse_error,
                path.string() + ": mesh has fewer than 3 vertices");
  }
  const size_t dropped = drop_degenerate_triangles(mesh);
  if (dropped > 0) {
    log_warn(path.string(), ": dropped ", dropped, " degenerate triangle(s)");
  }
}

// -- PLY ---------------------------------------------------------------------

enum class PlyType { i8, u8, i16, u16, i32, u32, f32, f64 };

size_t ply_type_size(PlyType t) {
  switch (t) {
    case PlyType::i8:
    case PlyType::u8: return 1;
    case PlyType::i16:
    case PlyType::u16: return 2;
    case PlyType::i32:
    case PlyType::u32:
    case PlyType::f32: return 4;
    case PlyType::f64: return 8;
  }
  return 0;
}

PlyType parse_ply_type(const std::string& s, const std::filesystem::path& path) {
  if (s == "char" || s == "int8") return PlyType::i8;
  if (s == "uchar" || s == "uint8") return PlyType::u8;
  if (s == "short" || s == "int16") return PlyType::i16;
  if (s == "ushort" || s == "uint16") return PlyType::u16;
  if (s == "int" || s == "int32") return PlyType::i32;
  if (s == "uint" || s == "uint32") return PlyType::u32;
  if (s == "float" || s == "float32") return PlyType::f32;
  if (s == "double" || s == "float64") return PlyType::f64;
  throw Error(ErrorCode::parse_error, path.string() + ": unknown PLY type " + s);
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
  PlyType count_type = PlyType::u8;
  PlyType value_type = PlyType::f32;
};

struct PlyElement {
  std::string name;
  size_t count = 0;
  std::vector<PlyProperty> properties;
};

class BinaryCursor {
 public:
  BinaryCursor(const std::string& data, size_t offset, const std::filesystem::path& path)
      : data_(data), offset_(offset), path_(path) {}

  double read(PlyType t) {
    const size_t size = ply_type_size(t);
    if (offset_ + size > data_.size()) {
      fail_parse(path_, offset_, "unexpected end of file");
    }
    const char* p = data_.data() + offset_;
    offset_ += size;
    switch (t) {
      case PlyType::i8: return static_cast<double>(static_cast<int8_t>(*p));
      case PlyType::u8: return static_cast<double>(static_cast<uint8_t>(*p));
      case PlyType::i16: { int16_t v; std::memcpy(&v, p, 2); return v; }
      case PlyType::u16: { uint16_t v; std::memcpy(&v, p, 2); return v; }
      case PlyType::i32: { int32_t v; std::memcpy(&v, p, 4); return v; }
      case PlyType::u32: { uint32_t v; std::memcpy(&v, p, 4); return v; }
      case PlyType::f32: { float v; std::memcpy(&v, p, 4); return v; }
      case PlyType::f64: { double v; std::memcpy(&v, p, 8); return v; }
    }
    return 0.0;
  }

  size_t offset() const { return offset_; }

 private:
  const std::string& data_;
  size_t offset_;
  const std::filesystem::path& path_;
};

class AsciiCursor {
 public:
  AsciiCursor(const std::string& data, size_t offset, const std::filesystem::path& path)
      : stream_(data.substr(offset)), base_(offset), path_(path) {}

  double read(PlyType) {
    double v = 0.0;
    if (!(stream_ >> v)) {
      fail_parse(path_, base_ + static_cast<size_t>(std::max<std::streamoff>(
                            0, static_cast<std::streamoff>(stream_.tellg()))),
                 "unexpected end of ASCII data");
    }
    return v;
  }

 private:
  std::istringstream stream_;
  size_t base_;
  const std::filesystem::path& path_;
};

template <typename Cursor>
TriangleMesh read_ply_body(const std::string& data, size_t offset,
                           const std::vector<PlyElement>& elements,
                           const std::filesystem::path& path) {
  TriangleMesh mesh;
  Cursor cursor(data, offset, path);
  for (const PlyElement& element : elements) {
    const bool is_vertex = element.name == "vertex";
    const bool is_face = element.name == "face";
    int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1;
    if (is_vertex) {
      for (size_t p = 0; p < element.properties.size(); ++p) {
        const std::string& n = element.properties[p].name;
        if (n == "x") ix = static_cast<int>(p);
        if (n == "y") iy = static_cast<int>(p);
        if (n == "z") iz = static_cast<int>(p);
        if (n == "nx") inx = static_cast<int>(p);
        if (n == "ny") iny = static_cast<int>(p);
        if (n == "nz") inz = static_cast<int>(p);
      }
      if (ix < 0 || iy < 0 || iz < 0) {
        throw Error(ErrorCode::parse_error,
                    path.string() + ": vertex element lacks x/y/z properties");
      }
      mesh.vertices.reserve(element.count);
      if (inx >= 0 && iny >= 0 && inz >= 0) mesh.normals.reserve(element.count);
    }
    std::vector<double> row(element.properties.size(), 0.0);
    std::vector<int> poly;
    for (size_t i = 0; i < element.count; ++i) {
      poly.clear();
      for (size_t p = 0; p < element.properties.size(); ++p) {
        const PlyProperty& prop = element.properties[p];
        if (prop.is_list) {
          const size_t n = static_cast<size_t>(cursor.read(prop.count_type));
          for (size_t k = 0; k < n; ++k) {
            const double v = cursor.read(prop.value_type);
            if (is_face &&
                (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
              poly.push_back(static_cast<int>(v));
            }
          }
        } else {
          row[p] = cursor.read(prop.value_type);
        }
      }
      if (is_vertex) {
        mesh.vertices.emplace_back(row[ix], row[iy], row[iz]);
        if (inx >= 0 && iny >= 0 && inz >= 0) {
          mesh.normals.emplace_back(row[inx], row[iny], row[inz]);
        }
      } else if (is_face && poly.size() >= 3) {
        for (size_t k = 2; k < poly.size(); ++k) {
          mesh.triangles.push_back({poly[0], poly[k - 1], poly[k]});
        }
      }
    }
  }
  return mesh;
}

TriangleMesh load_ply(const std::string& data, const std::filesystem::path& path) {
  std::istringstream header(data);
  std::string line;
  if (!std::getline(header, line) || (line != "ply" && line != "ply\r")) {
    fail_parse(path, 0, "not a PLY file");
  }
  bool binary = false;
  bool format_seen = false;
  std::vector<PlyElement> elements;
  size_t data_offset = 0;
  while (std::getline(header, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
    if (keyword == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        binary = false;
      } else if (fmt == "binary_little_endian") {
        binary = true;
      } else {
        throw Error(ErrorCode::unsupported_format,
                    path.string() + ": PLY format " + fmt);
      }
      format_seen = true;
    } else if (keyword == "element") {
      PlyElement e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (keyword == "property") {
      if (elements.empty()) {
        fail_parse(path, static_cast<size_t>(header.tellg()),
                   "property before element");
      }
      PlyProperty p;
      std::string type;
      ls >> type;
      if (type == "list") {
        p.is_list = true;
        std::string count_type, value_type;
        ls >> count_type >> value_type >> p.name;
        p.count_type = parse_ply_type(count_type, path);
        p.value_type = parse_ply_type(value_type, path);
      } else {
        p.value_type = parse_ply_type(type, path);
        ls >> p.name;
      }
      elements.back().properties.push_back(p);
    } else if (keyword == "end_header") {
      data_offset = static_cast<size_t>(header.tellg());
      break;
    } else {
      fail_parse(path, static_cast<size_t>(header.tellg()),
                 "unknown header keyword " + keyword);
    }
  }
  if (!format_seen || data_offset == 0) {
    fail_parse(path, data.size(), "truncated PLY header");
  }
  TriangleMesh mesh =
      binary ? read_ply_body<BinaryCursor>(data, data_offset, elements, path)
             : read_ply_body<AsciiCursor>(data, data_offset, elements, path);
  finish_load(mesh, path);
  return mesh;
}

void append_binary(std::string& out, const void* p, size_t n) {
  out.append(reinterpret_cast<const char*>(p), n);
}

// -- STL ---------------------------------------------------------------------

TriangleMesh load_stl(const std::string& data, const std::filesystem::path& path) {
  const std::string head = data.substr(0, std::min<size_t>(data.size(), 512));
  if (head.rfind("solid", 0) == 0 && head.find("facet") != std::string::npos) {
    throw Error(ErrorCode::unsupported_format,
                path.string() + ": ASCII STL is not supported (binary only)");
  }
  if (data.size() < 84) fail_parse(path, data.size(), "truncated STL header");
  uint32_t count = 0;
  std::memcpy(&count, data.data() + 80, 4);
  const size_t expected = 84 + static_cast<size_t>(count) * 50;
  if (data.size() < expected) {
    fail_parse(path, data.size(),
               "truncated STL body (expected " + std::to_string(expected) + " bytes)");
  }

  TriangleMesh mesh;
  std::map<std::array<float, 3>, int> dedup;
  auto vertex_id = [&](const float* c) {
    const std::array<float, 3> key = {c[0], c[1], c[2]};
    const auto it = dedup.find(key);
    if (it != dedup.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.emplace_back(c[0], c[1], c[2]);
    dedup.emplace(key, id);
    return id;
  };
  for (uint32_t i = 0; i < count; ++i) {
    float record[12];
    std::memcpy(record, data.data() + 84 + static_cast<size_t>(i) * 50, 48);
    mesh.triangles.push_back(
        {vertex_id(record + 3), vertex_id(record + 6), vertex_id(record + 9)});
  }
  finish_load(mesh, path);
  return mesh;
}

// -- OBJ ---------------------------------------------------------------------

int parse_obj_index(const std::string& token, size_t vertex_count,
                    const std::filesystem::path& path, size_t line_no) {
  const size_t slash = token.find('/');
  const std::string first = slash == std::string::npos ? token : token.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(first);
  } catch (...) {
    throw Error(ErrorCode::parse_error,
                path.string() + ":" + std::to_string(line_no) +
                    ": bad face index '" + token + "'");
  }
  if (idx < 0) return static_cast<int>(vertex_count) + idx;  // relative
  return idx - 1;                                            // 1-based
}

TriangleMesh load_obj(const std::string& data, const std::filesystem::path& path) {
  TriangleMesh mesh;
  std::istringstream in(data);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw Error(ErrorCode::parse_error,
                    path.string() + ":" + std::to_string(line_no) + ": bad vertex line");
      }
      mesh.vertices.emplace_back(x, y, z);
    } else if (keyword == "f") {
      std::vector<int> poly;
      std::string token;
      while (ls >> token) {
        poly.push_back(parse_obj_index(token, mesh.vertices.size(), path, line_no));
      }
      if (poly.size() < 3) {
        throw Error(ErrorCode::parse_error,
                    path.string() + ":" + std::to_string(line_no) +
                        ": face with fewer than 3 vertices");
      }
      for (size_t k = 2; k < poly.size(); ++k) {
        mesh.triangles.push_back({poly[0], poly[k - 1], poly[k]});
      }
    }
    // everything else (vn, vt, o, g, usemtl, #, ...) is ignored
  }
  finish_load(mesh, path);
  return mesh;
}

}  // namespace

MeshFormat mesh_format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".ply") return MeshFormat::ply;
  if (ext == ".stl") return MeshFormat::stl;
  if (ext == ".obj") return MeshFormat::obj;
  throw Error(ErrorCode::unsupported_format,
              path.string() + ": unrecognized mesh extension '" + ext + "'");
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  return load_mesh(path, mesh_format_from_path(path));
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  const std::string data = read_text_file(path);
  switch (format) {
    case MeshFormat::ply:
    case MeshFormat::ply_ascii:
      return load_ply(data, path);
    case MeshFormat::stl:
      return load_stl(data, path);
    case MeshFormat::obj:
      return load_obj(data, path);
  }
  throw Error(ErrorCode::unsupported_format, path.string());
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path) {
  save_mesh(mesh, path, mesh_format_from_path(path));
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path,
               MeshFormat format) {
  switch (format) {
    case MeshFormat::ply:
      detail::write_ply(mesh, path, /*binary=*/true, {});
      return;
    case MeshFormat::ply_ascii:
      detail::write_ply(mesh, path, /*binary=*/false, {});
      return;
    case MeshFormat::stl: {
      std::string out(80, '\0');
      std::memcpy(out.data(), "jawkit binary stl", 17);
      const uint32_t count = static_cast<uint32_t>(mesh.triangles.size());
      append_binary(out, &count, 4);
      for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[static_cast<size_t>(t[0])];
        const Vec3& b = mesh.vertices[static_cast<size_t>(t[1])];
        const Vec3& c = mesh.vertices[static_cast<size_t>(t[2])];
        Vec3 n = (b - a).cross(c - a);
        const double len = n.norm();
        if (len > 0.0) n /= len;
        float record[12] = {
            static_cast<float>(n.x()), static_cast<float>(n.y()),
            static_cast<float>(n.z()), static_cast<float>(a.x()),
            static_cast<float>(a.y()), static_cast<float>(a.z()),
            static_cast<float>(b.x()), static_cast<float>(b.y()),
            static_cast<float>(b.z()), static_cast<float>(c.x()),
            static_cast<float>(c.y()), static_cast<float>(c.z())};
        append_binary(out, record, 48);
        const uint16_t attr = 0;
        append_binary(out, &attr, 2);
      }
      write_text_file(path, out);
      return;
    }
    case MeshFormat::obj: {
      std::ostringstream out;
      for (const Vec3& v : mesh.vertices) {
        out << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
            << format_double(v.z()) << "\n";
      }
      for (const auto& t : mesh.triangles) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
      }
      write_text_file(path, out.str());
      return;
    }
  }
}

size_t drop_degenerate_triangles(TriangleMesh& mesh) {
  const size_t before = mesh.triangles.size();
  std::erase_if(mesh.triangles, [&](const std::array<int, 3>& t) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) return true;
    const Vec3& a = mesh.vertices[static_cast<size_t>(t[0])];
    const Vec3& b = mesh.vertices[static_cast<size_t>(t[1])];
    const Vec3& c = mesh.vertices[static_cast<size_t>(t[2])];
    return triangle_area(a, b, c) <= kDegenerateAreaTol;
  });
  return before - mesh.triangles.size();
}

TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t) {
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) v = t * v;
  for (Vec3& n : out.normals) n = t.rotation() * n;
  return out;
}

std::vector<Vec3> compute_vertex_normals(const TriangleMesh& mesh) {
  std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[static_cast<size_t>(t[0])];
    const Vec3& b = mesh.vertices[static_cast<size_t>(t[1])];
    const Vec3& c = mesh.vertices[static_cast<size_t>(t[2])];
    Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len <= 0.0) continue;
    n /= len;
    const Vec3* corners[3] = {&a, &b, &c};
    for (int k = 0; k < 3; ++k) {
      const Vec3 e1 = (*corners[(k + 1) % 3] - *corners[k]).normalized();
      const Vec3 e2 = (*corners[(k + 2) % 3] - *corners[k]).normalized();
      const double angle = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
      normals[static_cast<size_t>(t[k])] += angle * n;
    }
  }
  for (Vec3& n : normals) {
    const double len = n.norm();
    if (len > 0.0) n /= len;
  }
  return normals;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

Aabb bounding_box(const TriangleMesh& mesh) {
  Aabb box;
  if (mesh.vertices.empty()) return box;
  box.min = box.max = mesh.vertices.front();
  for (const Vec3& v : mesh.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

namespace detail {

void write_ply(const TriangleMesh& mesh, const std::filesystem::path& path,
               bool binary, const std::vector<PlyExtraProperty>& extra) {
  for (const auto& prop : extra) {
    if (prop.values.size() != mesh.vertices.size()) {
      throw Error(ErrorCode::invalid_config,
                  "PLY extra property " + prop.name + " size mismatch");
    }
  }
  std::ostringstream header;
  header << "ply\n"
         << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n")
         << "element vertex " << mesh.vertices.size() << "\n"
         << "property double x\nproperty double y\nproperty double z\n";
  const bool with_normals = mesh.has_normals();
  if (with_normals) {
    header << "property double nx\nproperty double ny\nproperty double nz\n";
  }
  for (const auto& prop : extra) {
    header << "property " << (prop.is_uchar ? "uchar" : "double") << ' ' << prop.name
           << "\n";
  }
  header << "element face " << mesh.triangles.size() << "\n"
         << "property list uchar int vertex_indices\nend_header\n";

  std::string out = header.str();
  if (binary) {
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
      const Vec3& v = mesh.vertices[i];
      const double coords[3] = {v.x(), v.y(), v.z()};
      append_binary(out, coords, 24);
      if (with_normals) {
        const Vec3& n = mesh.normals[i];
        const double nn[3] = {n.x(), n.y(), n.z()};
        append_binary(out, nn, 24);
      }
      for (const auto& prop : extra) {
        if (prop.is_uchar) {
          const uint8_t b = static_cast<uint8_t>(prop.values[i]);
          append_binary(out, &b, 1);
        } else {
          append_binary(out, &prop.values[i], 8);
        }
      }
    }
    for (const auto& t : mesh.triangles) {
      const uint8_t n = 3;
      append_binary(out, &n, 1);
      const int32_t idx[3] = {t[0], t[1], t[2]};
      append_binary(out, idx, 12);
    }
  } else {
    std::ostringstream body;
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
      const Vec3& v = mesh.vertices[i];
      body << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
           << format_double(v.z());
      if (with_normals) {
        const Vec3& n = mesh.normals[i];
        body << ' ' << format_double(n.x()) << ' ' << format_double(n.y()) << ' '
             << format_double(n.z());
      }
      for (const auto& prop : extra) {
        if (prop.is_uchar) {
          body << ' ' << static_cast<int>(static_cast<uint8_t>(prop.values[i]));
        } else {
          body << ' ' << format_double(prop.values[i]);
        }
      }
      body << "\n";
    }
    for (const auto& t : mesh.triangles) {
      body << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
    }
    out += body.str();
  }
  write_text_file(path, out);
}

}  // namespace detail

}  // namespace jawkit
