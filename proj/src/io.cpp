#include "phrecon/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phrecon/errors.hpp"

namespace phrecon {

namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return data;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Line-by-line reader that keeps 1-based line numbers and the byte offset
// just past the current line.
class Lines {
 public:
  explicit Lines(std::string_view data) : data_(data) {}

  bool next(std::string_view& line) {
    if (pos_ >= data_.size()) return false;
    std::size_t end = data_.find('\n', pos_);
    if (end == std::string_view::npos) end = data_.size();
    line = data_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }
  std::size_t number() const { return number_; }
  std::size_t offset() const { return std::min(pos_, data_.size()); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

double to_double(std::string_view tok, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(path.string(), line, "malformed number '" + std::string(tok) + "'");
  if (!std::isfinite(v)) throw ParseError(path.string(), line, "non-finite coordinate '" + std::string(tok) + "'");
  return v;
}

long to_long(std::string_view tok, const std::filesystem::path& path, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(path.string(), line, "malformed integer '" + std::string(tok) + "'");
  return v;
}

void push(PointCloud& cloud, const Vec3& p) { cloud.push_back(p, static_cast<std::int64_t>(cloud.size())); }

PointCloud finish(PointCloud cloud, const std::filesystem::path& path) {
  if (cloud.size() == 0) throw EmptyFile(path.string() + ": no points");
  return cloud;
}

bool skippable(std::string_view line) {
  const auto t = tokens(line);
  return t.empty() || t.front().front() == '#';
}

PointCloud load_xyz(std::string_view data, const std::filesystem::path& path) {
  PointCloud cloud;
  Lines lines(data);
  std::string_view line;
  while (lines.next(line)) {
    if (skippable(line)) continue;
    const auto t = tokens(line);
    if (t.size() < 3) throw ParseError(path.string(), lines.number(), "expected at least three coordinates");
    Vec3 p;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double v = to_double(t[k], path, lines.number());
      if (k < 3) p[static_cast<int>(k)] = v;
    }
    push(cloud, p);
  }
  return finish(std::move(cloud), path);
}

PointCloud load_obj_points(std::string_view data, const std::filesystem::path& path) {
  PointCloud cloud;
  Lines lines(data);
  std::string_view line;
  while (lines.next(line)) {
    const auto t = tokens(line);
    if (t.empty() || t[0] != "v") continue;
    if (t.size() < 4) throw ParseError(path.string(), lines.number(), "vertex needs three coordinates");
    push(cloud, Vec3(to_double(t[1], path, lines.number()), to_double(t[2], path, lines.number()),
                     to_double(t[3], path, lines.number())));
  }
  return finish(std::move(cloud), path);
}

PointCloud load_off(std::string_view data, const std::filesystem::path& path) {
  Lines lines(data);
  std::string_view line;
  auto next_content = [&](const char* what) {
    while (lines.next(line))
      if (!skippable(line)) return tokens(line);
    throw ParseError(path.string(), lines.number(), std::string("unexpected end of file, expected ") + what);
  };
  auto t = next_content("header");
  // The keyword may share its line with the counts, and may carry prefixes
  // such as C, N or ST for per-vertex attributes.
  const std::string_view key = t[0];
  if (key.size() < 3 || key.substr(key.size() - 3) != "OFF")
    throw ParseError(path.string(), lines.number(), "missing OFF keyword");
  if (key != "OFF" && key != "COFF" && key != "NOFF" && key != "CNOFF" && key != "STOFF" && key != "STCOFF" &&
      key != "STNOFF" && key != "STCNOFF")
    throw ParseError(path.string(), lines.number(), "unsupported OFF variant '" + std::string(key) + "'");
  t.erase(t.begin());
  if (t.empty()) t = next_content("counts");
  if (t.size() < 3) throw ParseError(path.string(), lines.number(), "expected vertex, face and edge counts");
  const long nv = to_long(t[0], path, lines.number());
  if (nv < 0) throw ParseError(path.string(), lines.number(), "negative vertex count");
  PointCloud cloud;
  for (long i = 0; i < nv; ++i) {
    const auto v = next_content("vertex");
    if (v.size() < 3) throw ParseError(path.string(), lines.number(), "vertex needs three coordinates");
    push(cloud, Vec3(to_double(v[0], path, lines.number()), to_double(v[1], path, lines.number()),
                     to_double(v[2], path, lines.number())));
  }
  return finish(std::move(cloud), path);
}

// PLY ----------------------------------------------------------------------

enum class PlyFormat { ascii, little, big };

struct PlyProperty {
  std::string name;
  std::string type;
  bool list = false;
  std::string count_type;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

std::size_t ply_size(const std::string& type, const std::filesystem::path& path, std::size_t line) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" || type == "float" || type == "float32")
    return 4;
  if (type == "double" || type == "float64") return 8;
  throw ParseError(path.string(), line, "unknown PLY type '" + type + "'");
}

template <class T>
T load_raw(const char* p, bool swap) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, p, sizeof(T));
  if (swap) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

double ply_value(const std::string& type, const char* p, bool swap) {
  if (type == "char" || type == "int8") return load_raw<std::int8_t>(p, swap);
  if (type == "uchar" || type == "uint8") return load_raw<std::uint8_t>(p, swap);
  if (type == "short" || type == "int16") return load_raw<std::int16_t>(p, swap);
  if (type == "ushort" || type == "uint16") return load_raw<std::uint16_t>(p, swap);
  if (type == "int" || type == "int32") return load_raw<std::int32_t>(p, swap);
  if (type == "uint" || type == "uint32") return load_raw<std::uint32_t>(p, swap);
  if (type == "float" || type == "float32") return load_raw<float>(p, swap);
  return load_raw<double>(p, swap);
}

PointCloud load_ply(std::string_view data, const std::filesystem::path& path) {
  Lines lines(data);
  std::string_view line;
  if (!lines.next(line) || line != "ply") throw ParseError(path.string(), 1, "missing 'ply' magic");
  PlyFormat format = PlyFormat::ascii;
  bool have_format = false;
  std::vector<PlyElement> elements;
  for (;;) {
    if (!lines.next(line)) throw ParseError(path.string(), lines.number(), "unterminated PLY header");
    const auto t = tokens(line);
    if (t.empty() || t[0] == "comment" || t[0] == "obj_info") continue;
    if (t[0] == "end_header") break;
    if (t[0] == "format") {
      if (t.size() < 2) throw ParseError(path.string(), lines.number(), "incomplete format line");
      if (t[1] == "ascii") format = PlyFormat::ascii;
      else if (t[1] == "binary_little_endian") format = PlyFormat::little;
      else if (t[1] == "binary_big_endian") format = PlyFormat::big;
      else throw ParseError(path.string(), lines.number(), "unknown PLY format '" + std::string(t[1]) + "'");
      have_format = true;
    } else if (t[0] == "element") {
      if (t.size() < 3) throw ParseError(path.string(), lines.number(), "incomplete element line");
      const long n = to_long(t[2], path, lines.number());
      if (n < 0) throw ParseError(path.string(), lines.number(), "negative element count");
      elements.push_back({std::string(t[1]), static_cast<std::size_t>(n), {}});
    } else if (t[0] == "property") {
      if (elements.empty()) throw ParseError(path.string(), lines.number(), "property before any element");
      PlyProperty prop;
      if (t.size() >= 5 && t[1] == "list") {
        prop = {std::string(t[4]), std::string(t[3]), true, std::string(t[2])};
        ply_size(prop.count_type, path, lines.number());
      } else if (t.size() >= 3) {
        prop = {std::string(t[2]), std::string(t[1]), false, {}};
      } else {
        throw ParseError(path.string(), lines.number(), "incomplete property line");
      }
      ply_size(prop.type, path, lines.number());
      elements.back().properties.push_back(prop);
    } else {
      throw ParseError(path.string(), lines.number(), "unexpected header line '" + std::string(line) + "'");
    }
  }
  if (!have_format) throw ParseError(path.string(), lines.number(), "missing format line");

  PointCloud cloud;
  const bool swap = (format == PlyFormat::big) != (std::endian::native == std::endian::big);
  std::size_t offset = lines.offset();
  for (const auto& el : elements) {
    int axis[3] = {-1, -1, -1};
    if (el.name == "vertex")
      for (std::size_t k = 0; k < el.properties.size(); ++k)
        for (int a = 0; a < 3; ++a)
          if (!el.properties[k].list && el.properties[k].name == std::string(1, char('x' + a))) axis[a] = int(k);
    const bool wanted = el.name == "vertex";
    if (wanted && (axis[0] < 0 || axis[1] < 0 || axis[2] < 0))
      throw ParseError(path.string(), lines.number(), "vertex element lacks x, y or z");
    for (std::size_t i = 0; i < el.count; ++i) {
      Vec3 p = Vec3::Zero();
      if (format == PlyFormat::ascii) {
        if (!lines.next(line)) throw ParseError(path.string(), lines.number(), "unexpected end of " + el.name + " data");
        const auto t = tokens(line);
        std::size_t at = 0;
        for (std::size_t k = 0; k < el.properties.size(); ++k) {
          const auto& prop = el.properties[k];
          if (at >= t.size()) throw ParseError(path.string(), lines.number(), "too few values");
          if (prop.list) {
            const long n = to_long(t[at++], path, lines.number());
            if (n < 0 || at + static_cast<std::size_t>(n) > t.size())
              throw ParseError(path.string(), lines.number(), "bad list length");
            at += static_cast<std::size_t>(n);
            continue;
          }
          const double v = to_double(t[at++], path, lines.number());
          for (int a = 0; a < 3; ++a)
            if (axis[a] == int(k)) p[a] = v;
        }
      } else {
        for (std::size_t k = 0; k < el.properties.size(); ++k) {
          const auto& prop = el.properties[k];
          auto need = [&](std::size_t bytes) {
            if (offset + bytes > data.size()) throw ParseError(path.string(), offset, "truncated binary " + el.name + " data");
          };
          if (prop.list) {
            const std::size_t cs = ply_size(prop.count_type, path, 0);
            need(cs);
            const double n = ply_value(prop.count_type, data.data() + offset, swap);
            offset += cs;
            if (n < 0) throw ParseError(path.string(), offset, "negative list length");
            const std::size_t bytes = static_cast<std::size_t>(n) * ply_size(prop.type, path, 0);
            need(bytes);
            offset += bytes;
            continue;
          }
          const std::size_t s = ply_size(prop.type, path, 0);
          need(s);
          const double v = ply_value(prop.type, data.data() + offset, swap);
          for (int a = 0; a < 3; ++a)
            if (axis[a] == int(k)) {
              if (!std::isfinite(v)) throw ParseError(path.string(), offset, "non-finite coordinate");
              p[a] = v;
            }
          offset += s;
        }
      }
      if (wanted) push(cloud, p);
    }
    if (wanted) break;
  }
  return finish(std::move(cloud), path);
}

}  // namespace

PointCloud load_point_cloud(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  const std::string ext = lower_extension(path);
  if (ext == ".ply") return load_ply(data, path);
  if (ext == ".off") return load_off(data, path);
  if (ext == ".obj") return load_obj_points(data, path);
  return load_xyz(data, path);
}

void write_obj(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (!out) throw IoError("cannot write " + path.string());
  bool ok = true;
  for (const Vec3& v : mesh.vertices) ok &= std::fprintf(out, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z()) > 0;
  for (const Triangle& t : mesh.faces) ok &= std::fprintf(out, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1) > 0;
  ok &= std::fclose(out) == 0;
  if (!ok) throw IoError("failed writing " + path.string());
}

SurfaceMesh load_obj_mesh(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  SurfaceMesh mesh;
  Lines lines(data);
  std::string_view line;
  while (lines.next(line)) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    if (t[0] == "v") {
      if (t.size() < 4) throw ParseError(path.string(), lines.number(), "vertex needs three coordinates");
      mesh.vertices.emplace_back(to_double(t[1], path, lines.number()), to_double(t[2], path, lines.number()),
                                 to_double(t[3], path, lines.number()));
    } else if (t[0] == "f") {
      if (t.size() != 4) throw ParseError(path.string(), lines.number(), "only triangular faces are supported");
      Triangle tri;
      for (int k = 0; k < 3; ++k) {
        // Accept v, v/vt, v//vn and v/vt/vn references.
        const std::string_view ref = t[k + 1].substr(0, t[k + 1].find('/'));
        long idx = to_long(ref, path, lines.number());
        if (idx < 0) idx += static_cast<long>(mesh.vertices.size()) + 1;
        if (idx < 1 || idx > static_cast<long>(mesh.vertices.size()))
          throw ParseError(path.string(), lines.number(), "face index out of range");
        tri[k] = static_cast<Id>(idx - 1);
      }
      mesh.faces.push_back(tri);
    }
  }
  if (mesh.vertices.empty()) throw EmptyFile(path.string() + ": no vertices");
  mesh.update_flags();
  return mesh;
}

}  // namespace phrecon
