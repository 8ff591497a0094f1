#include <bit>
#include <charconv>
#include <cstring>

#include "hcad/mesh.hpp"

namespace hcad {

namespace {

void put_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
}

void put_f32(std::string& out, double v) { put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

void require_mesh(const TriMesh& mesh) {
  if (mesh.triangles.empty()) throw DegenerateInputError("cannot export an empty mesh");
  for (const Triangle& t : mesh.triangles) {
    for (auto i : t) {
      if (i >= mesh.vertices.size()) throw StructuralError("triangle index out of range");
    }
  }
}

}  // namespace

std::string export_obj(const TriMesh& mesh) {
  require_mesh(mesh);
  std::string out = "# hcad mesh\n";
  for (const Vec3& p : mesh.vertices) {
    out += "v ";
    put_number(out, p.x);
    out += ' ';
    put_number(out, p.y);
    out += ' ';
    put_number(out, p.z);
    out += '\n';
  }
  for (const Triangle& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' + std::to_string(t[2] + 1) + '\n';
  }
  return out;
}

std::string export_stl(const TriMesh& mesh) {
  require_mesh(mesh);
  std::string out(80, ' ');
  const char* tag = "hcad binary STL";
  std::memcpy(out.data(), tag, std::strlen(tag));
  put_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    Vec3 n = cross(b - a, c - a);
    const double len = norm(n);
    n = len > 0.0 ? n / len : Vec3{};
    for (const Vec3& v : {n, a, b, c}) {
      put_f32(out, v.x);
      put_f32(out, v.y);
      put_f32(out, v.z);
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

std::string export_mesh(const TriMesh& mesh, MeshFormat format) {
  return format == MeshFormat::obj ? export_obj(mesh) : export_stl(mesh);
}

std::string export_xyz(const PointCloud& cloud) {
  std::string out;
  for (const Vec3& p : cloud.points) {
    put_number(out, p.x);
    out += ' ';
    put_number(out, p.y);
    out += ' ';
    put_number(out, p.z);
    out += '\n';
  }
  return out;
}

std::string export_ply(const PointCloud& cloud) {
  std::string out = "ply\nformat binary_little_endian 1.0\nelement vertex " + std::to_string(cloud.size()) +
                    "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
  for (const Vec3& p : cloud.points) {
    put_f32(out, p.x);
    put_f32(out, p.y);
    put_f32(out, p.z);
  }
  return out;
}

}  // namespace hcad
