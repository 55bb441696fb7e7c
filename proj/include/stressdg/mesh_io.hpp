// Minimal ASCII mesh interchange: vertex count + triangle count, vertex
// coordinates, connectivity, optional per-element kappa as a fourth field.
#pragma once

#include <iosfwd>
#include <string>

#include "stressdg/mesh.hpp"

namespace stressdg {

Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);

void write_mesh(std::ostream& out, const Mesh& m, bool with_kappa = true);
void write_mesh_file(const std::string& path, const Mesh& m, bool with_kappa = true);

}  // namespace stressdg
