#include "bubbles/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace bubbles {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  throw FormatError("OFF parse error at line " + std::to_string(line) + ": " +
                    what);
}

// Next non-empty, non-comment line.
bool nextLine(std::istream& is, std::string& line, std::size_t& lineno) {
  while (std::getline(is, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void writeOff(std::ostream& os, const LabeledMesh& mesh) {
  os << "OFF\n";
  os << mesh.vertexCount() << ' ' << mesh.faceCount() << " 0\n";
  for (const auto& v : mesh.vertices) {
    os << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';
  }
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& t = mesh.faces[f];
    const auto& l = mesh.labels[f];
    os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << l.lo << ' '
       << l.hi << '\n';
  }
}

void writeOff(const std::string& path, const LabeledMesh& mesh) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open for writing: " + path);
  writeOff(os, mesh);
}

LabeledMesh readOff(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!nextLine(is, line, lineno)) fail("empty stream", lineno);
  {
    std::istringstream ss(line);
    std::string magic;
    ss >> magic;
    if (magic != "OFF") fail("expected OFF header, got '" + magic + "'", lineno);
  }
  if (!nextLine(is, line, lineno)) fail("missing count line", lineno);
  std::size_t nv = 0, nf = 0, ne = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne)) fail("bad count line", lineno);
  }
  LabeledMesh mesh;
  mesh.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!nextLine(is, line, lineno)) fail("unexpected EOF in vertices", lineno);
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) fail("bad vertex line", lineno);
    mesh.addVertex(Vec3(x, y, z));
  }
  mesh.faces.reserve(nf);
  mesh.labels.reserve(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (!nextLine(is, line, lineno)) fail("unexpected EOF in faces", lineno);
    std::istringstream ss(line);
    int n, a, b, c, lo, hi;
    if (!(ss >> n >> a >> b >> c >> lo >> hi)) fail("bad face line", lineno);
    if (n != 3) fail("only triangles are supported", lineno);
    if (lo < 0 || lo >= hi) fail("invalid region pair", lineno);
    if (a < 0 || b < 0 || c < 0 || a >= static_cast<int>(nv) ||
        b >= static_cast<int>(nv) || c >= static_cast<int>(nv)) {
      fail("face vertex index out of range", lineno);
    }
    RegionPair l;
    l.lo = lo;
    l.hi = hi;
    mesh.addFace(a, b, c, l);
  }
  return mesh;
}

LabeledMesh readOff(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open: " + path);
  return readOff(is);
}

void writeObj(std::ostream& os, const LabeledMesh& mesh) {
  for (const auto& v : mesh.vertices) {
    os << "v " << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';
  }
  std::map<RegionPair, std::vector<std::size_t>> groups;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    groups[mesh.labels[f]].push_back(f);
  }
  for (const auto& [label, fs] : groups) {
    os << "g " << label.lo << '_' << label.hi << '\n';
    for (std::size_t f : fs) {
      const auto& t = mesh.faces[f];
      os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
  }
}

void writeObj(const std::string& path, const LabeledMesh& mesh) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open for writing: " + path);
  writeObj(os, mesh);
}

}  // namespace bubbles
