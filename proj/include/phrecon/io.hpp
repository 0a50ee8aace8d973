#pragma once

#include <filesystem>

#include "phrecon/mesh.hpp"
#include "phrecon/point_cloud.hpp"

namespace phrecon {

/// Reads points in file order. The format follows the extension: .ply
/// (ascii, binary little or big endian), .off, .obj (v lines), anything else
/// as whitespace-separated text with three or more numbers per line. Only
/// positions are kept; ids are the 0-based file order.
/// Throws IoError if the file cannot be read, EmptyFile if it holds no
/// points, ParseError on malformed content.
PointCloud load_point_cloud(const std::filesystem::path& path);

/// Writes an indexed triangle mesh as OBJ with 17 significant digits.
void write_obj(const std::filesystem::path& path, const SurfaceMesh& mesh);

/// Reads the v and f records of an OBJ file (faces must be triangles).
SurfaceMesh load_obj_mesh(const std::filesystem::path& path);

}  // namespace phrecon
