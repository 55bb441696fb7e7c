#include "stressdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stressdg/errors.hpp"

namespace stressdg {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

BoundarySpec BoundarySpec::left_top_dirichlet() {
  BoundarySpec s;
  s.name = "left_top_dirichlet";
  s.dirichlet_at = [](const Eigen::Vector2d& p) {
    const double tol = 1e-10;
    return p.x() < tol || p.y() > 1.0 - tol;
  };
  return s;
}

BoundarySpec BoundarySpec::all_dirichlet() {
  BoundarySpec s;
  s.name = "all_dirichlet";
  s.dirichlet_at = [](const Eigen::Vector2d&) { return true; };
  return s;
}

Mesh Mesh::from_arrays(std::vector<Eigen::Vector2d> vertices,
                       std::vector<std::array<int, 3>> triangles, std::vector<int> subdomain,
                       std::vector<double> kappa) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  const int ne = m.num_elements();
  if (ne == 0) throw MeshError("mesh has no elements");
  for (auto& t : m.triangles_)
    for (int v : t)
      if (v < 0 || v >= m.num_vertices()) throw MeshError("triangle references invalid vertex");

  m.subdomain_ = subdomain.empty() ? std::vector<int>(ne, 0) : std::move(subdomain);
  m.kappa_ = kappa.empty() ? std::vector<double>(ne, 1.0) : std::move(kappa);
  if (static_cast<int>(m.subdomain_.size()) != ne || static_cast<int>(m.kappa_.size()) != ne)
    throw MeshError("subdomain/kappa arrays must have one entry per element");
  for (double k : m.kappa_)
    if (!(k > 0.0)) throw MeshError("kappa must be positive on every element");

  m.build_topology();
  return m;
}

void Mesh::build_topology() {
  const int ne = num_elements();
  area_.resize(ne);
  diameter_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    auto& t = triangles_[e];
    double sa = signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    if (sa < 0.0) {
      std::swap(t[1], t[2]);
      sa = -sa;
    }
    if (!(sa > 1e-15)) throw MeshError("degenerate triangle " + std::to_string(e));
    area_[e] = sa;
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
      d = std::max(d, (vertices_[t[(i + 1) % 3]] - vertices_[t[i]]).norm());
    diameter_[e] = d;
  }

  faces_.clear();
  elem_faces_.assign(ne, {-1, -1, -1});
  std::map<std::pair<int, int>, int> edge_to_face;
  for (int e = 0; e < ne; ++e) {
    const auto& t = triangles_[e];
    for (int le = 0; le < 3; ++le) {
      const int a = t[le], b = t[(le + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_to_face.find(key);
      if (it == edge_to_face.end()) {
        Face f;
        f.v = {a, b};
        f.elem[0] = e;
        f.local_edge[0] = le;
        const Eigen::Vector2d d = vertices_[b] - vertices_[a];
        f.length = d.norm();
        // CCW traversal: outward normal of elem[0] is the edge rotated by -90
        f.normal = Eigen::Vector2d(d.y(), -d.x()) / f.length;
        f.type = FaceType::Dirichlet;  // boundary default; interior fixed below
        edge_to_face.emplace(key, static_cast<int>(faces_.size()));
        elem_faces_[e][le] = static_cast<int>(faces_.size());
        faces_.push_back(f);
      } else {
        Face& f = faces_[it->second];
        if (f.elem[1] >= 0) throw MeshError("non-manifold edge (more than 2 elements)");
        f.elem[1] = e;
        f.local_edge[1] = le;
        f.type = FaceType::Interior;
        elem_faces_[e][le] = it->second;
      }
    }
  }
  refresh_face_lists();
}

void Mesh::refresh_face_lists() {
  star_faces_.clear();
  num_interior_ = num_dirichlet_ = num_neumann_ = 0;
  for (int f = 0; f < num_faces(); ++f) {
    switch (faces_[f].type) {
      case FaceType::Interior:
        ++num_interior_;
        star_faces_.push_back(f);
        break;
      case FaceType::Neumann:
        ++num_neumann_;
        star_faces_.push_back(f);
        break;
      case FaceType::Dirichlet:
        ++num_dirichlet_;
        break;
    }
  }
}

Eigen::Vector2d Mesh::centroid(int e) const {
  const auto& t = triangles_[e];
  return (vertices_[t[0]] + vertices_[t[1]] + vertices_[t[2]]) / 3.0;
}

ElementGeometry Mesh::geometry(int e) const {
  const auto& t = triangles_[e];
  ElementGeometry g;
  g.p0 = vertices_[t[0]];
  g.J.col(0) = vertices_[t[1]] - g.p0;
  g.J.col(1) = vertices_[t[2]] - g.p0;
  g.detJ = g.J.determinant();
  g.Jinv = g.J.inverse();
  return g;
}

double Mesh::h() const {
  double h = 0.0;
  for (double d : diameter_) h = std::max(h, d);
  return h;
}

int Mesh::theta() const { return num_neumann_ == 0 ? 1 : 0; }

int Mesh::euler_characteristic() const {
  return num_vertices() - num_faces() + num_elements();
}

double Mesh::gamma(int f) const {
  const Face& fc = faces_[f];
  if (fc.type == FaceType::Dirichlet)
    throw MeshError("gamma requested on a Dirichlet face (not in F*)");
  const double gk = 1.0 / kappa_[fc.elem[0]];
  if (fc.is_boundary()) return gk;
  return std::min(gk, 1.0 / kappa_[fc.elem[1]]);
}

Mesh diagonal_grid(int n) {
  if (n < 1) throw MeshError("diagonal_grid: n must be >= 1");
  std::vector<Eigen::Vector2d> verts;
  verts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      tris.push_back({a, b, c});  // split along the a-c diagonal
      tris.push_back({a, c, d});
    }
  }
  return Mesh::from_arrays(std::move(verts), std::move(tris));
}

Mesh crisscross_grid(int n) {
  if (n < 1) throw MeshError("crisscross_grid: n must be >= 1");
  std::vector<Eigen::Vector2d> verts;
  verts.reserve((n + 1) * (n + 1) + n * n);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  const int center0 = (n + 1) * (n + 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      verts.emplace_back((i + 0.5) / n, (j + 0.5) / n);
  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const int m = center0 + j * n + i;
      tris.push_back({a, b, m});
      tris.push_back({b, c, m});
      tris.push_back({c, d, m});
      tris.push_back({d, a, m});
    }
  }
  return Mesh::from_arrays(std::move(verts), std::move(tris));
}

Mesh barycentric_trisect(const Mesh& m) {
  std::vector<Eigen::Vector2d> verts;
  verts.reserve(m.num_vertices() + m.num_elements());
  for (int v = 0; v < m.num_vertices(); ++v) verts.push_back(m.vertex(v));
  std::vector<std::array<int, 3>> tris;
  tris.reserve(3 * m.num_elements());
  std::vector<int> sub;
  std::vector<double> kap;
  for (int e = 0; e < m.num_elements(); ++e) {
    const int g = static_cast<int>(verts.size());
    verts.push_back(m.centroid(e));
    const auto& t = m.triangle(e);
    tris.push_back({t[0], t[1], g});
    tris.push_back({t[1], t[2], g});
    tris.push_back({t[2], t[0], g});
    for (int c = 0; c < 3; ++c) {
      sub.push_back(m.subdomain(e));
      kap.push_back(m.kappa(e));
    }
  }
  return Mesh::from_arrays(std::move(verts), std::move(tris), std::move(sub), std::move(kap));
}

Mesh classify_boundary(const Mesh& m, const BoundarySpec& spec) {
  if (!spec.dirichlet_at) throw MeshError("boundary spec has no predicate");
  Mesh out = m;
  int n_dir = 0;
  for (auto& f : out.faces_) {
    if (!f.is_boundary()) continue;
    const Eigen::Vector2d a = out.vertices_[f.v[0]], b = out.vertices_[f.v[1]];
    // sample away from the endpoints so corner vertices cannot straddle
    const bool at_quarter = spec.dirichlet_at(0.75 * a + 0.25 * b);
    const bool at_mid = spec.dirichlet_at(0.5 * (a + b));
    const bool at_three_quarter = spec.dirichlet_at(0.25 * a + 0.75 * b);
    if (at_quarter != at_mid || at_mid != at_three_quarter)
      throw MeshError("boundary face straddles the Dirichlet/Neumann split");
    f.type = at_mid ? FaceType::Dirichlet : FaceType::Neumann;
    if (at_mid) ++n_dir;
  }
  if (n_dir == 0) throw MeshError("Dirichlet boundary set is empty");
  out.refresh_face_lists();
  return out;
}

Mesh set_permeability(const Mesh& m, const std::vector<double>& per_element) {
  if (static_cast<int>(per_element.size()) != m.num_elements())
    throw MeshError("permeability array size mismatch");
  for (double k : per_element)
    if (!(k > 0.0)) throw MeshError("kappa must be positive on every element");
  Mesh out = m;
  out.kappa_ = per_element;
  return out;
}

Mesh set_permeability(const Mesh& m,
                      const std::function<double(const Eigen::Vector2d&)>& at_centroid) {
  std::vector<double> k(m.num_elements());
  for (int e = 0; e < m.num_elements(); ++e) k[e] = at_centroid(m.centroid(e));
  return set_permeability(m, k);
}

Mesh set_subdomains(const Mesh& m, const std::function<int(const Eigen::Vector2d&)>& subdomain_of,
                    const std::vector<double>& kappa_by_subdomain) {
  Mesh out = m;
  for (int e = 0; e < m.num_elements(); ++e) {
    const int j = subdomain_of(m.centroid(e));
    if (j < 0 || j >= static_cast<int>(kappa_by_subdomain.size()))
      throw MeshError("subdomain id out of range");
    if (!(kappa_by_subdomain[j] > 0.0)) throw MeshError("kappa must be positive");
    out.subdomain_[e] = j;
    out.kappa_[e] = kappa_by_subdomain[j];
  }
  return out;
}

Mesh two_subdomain_split_x(const Mesh& m, double x0, double kappa_left, double kappa_right) {
  for (int e = 0; e < m.num_elements(); ++e) {
    const auto& t = m.triangle(e);
    bool left = false, right = false;
    for (int v : t) {
      const double x = m.vertex(v).x();
      if (x < x0 - 1e-12) left = true;
      if (x > x0 + 1e-12) right = true;
    }
    if (left && right)
      throw MeshError("element " + std::to_string(e) + " straddles the x=" + std::to_string(x0) +
                      " permeability interface");
  }
  return set_subdomains(
      m, [x0](const Eigen::Vector2d& c) { return c.x() < x0 ? 0 : 1; },
      {kappa_left, kappa_right});
}

}  // namespace stressdg
