#include "stressdg/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "stressdg/errors.hpp"

namespace stressdg {

namespace {

// next content line, skipping blanks and '#' comments
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw IoError("mesh file: missing header line");
  int nv = 0, nt = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nt) || nv < 3 || nt < 1)
      throw IoError("mesh file: header must be '<num_vertices> <num_triangles>'");
  }
  std::vector<Eigen::Vector2d> verts(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_line(in, line)) throw IoError("mesh file: truncated vertex list");
    std::istringstream ss(line);
    if (!(ss >> verts[i].x() >> verts[i].y()))
      throw IoError("mesh file: bad vertex line " + std::to_string(i));
  }
  std::vector<std::array<int, 3>> tris(nt);
  std::vector<double> kappa;
  for (int e = 0; e < nt; ++e) {
    if (!next_line(in, line)) throw IoError("mesh file: truncated triangle list");
    std::istringstream ss(line);
    if (!(ss >> tris[e][0] >> tris[e][1] >> tris[e][2]))
      throw IoError("mesh file: bad triangle line " + std::to_string(e));
    double k;
    if (ss >> k) {
      if (kappa.empty() && e > 0)
        throw IoError("mesh file: kappa column must be present on all triangles or none");
      kappa.push_back(k);
    } else if (!kappa.empty()) {
      throw IoError("mesh file: kappa column must be present on all triangles or none");
    }
  }
  return Mesh::from_arrays(std::move(verts), std::move(tris), {}, std::move(kappa));
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& m, bool with_kappa) {
  out << "# triangle mesh: <nv> <nt>, then vertices, then connectivity"
      << (with_kappa ? " + kappa" : "") << "\n";
  out << m.num_vertices() << " " << m.num_elements() << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < m.num_vertices(); ++v)
    out << m.vertex(v).x() << " " << m.vertex(v).y() << "\n";
  for (int e = 0; e < m.num_elements(); ++e) {
    const auto& t = m.triangle(e);
    out << t[0] << " " << t[1] << " " << t[2];
    if (with_kappa) out << " " << m.kappa(e);
    out << "\n";
  }
}

void write_mesh_file(const std::string& path, const Mesh& m, bool with_kappa) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file: " + path);
  write_mesh(out, m, with_kappa);
}

}  // namespace stressdg
