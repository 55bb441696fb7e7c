// Triangle meshes aligned with a permeability partition: construction,
// structured generators, refinement, face topology and boundary tagging.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stressdg {

enum class FaceType { Interior, Dirichlet, Neumann };

struct Face {
  std::array<int, 2> v{-1, -1};          // vertex ids, orientation fixed once
  std::array<int, 2> elem{-1, -1};       // elem[0] = lower-id neighbor; elem[1] = -1 on boundary
  std::array<int, 2> local_edge{-1, -1}; // edge index within each neighbor
  Eigen::Vector2d normal;                // unit, outward from elem[0]
  double length = 0.0;
  FaceType type = FaceType::Interior;

  bool is_boundary() const { return elem[1] < 0; }
};

// Affine map x = p0 + J * xhat from the reference triangle.
struct ElementGeometry {
  Eigen::Vector2d p0;
  Eigen::Matrix2d J;
  Eigen::Matrix2d Jinv;
  double detJ = 0.0;  // = 2 * area (positive orientation enforced)

  Eigen::Vector2d to_physical(const Eigen::Vector2d& ref) const { return p0 + J * ref; }
  Eigen::Vector2d to_reference(const Eigen::Vector2d& phys) const { return Jinv * (phys - p0); }
};

// Assigns boundary faces to the Dirichlet or Neumann part by midpoint
// position. theta = 1 (pure no-slip) is derived after classification.
struct BoundarySpec {
  std::function<bool(const Eigen::Vector2d&)> dirichlet_at;
  std::string name = "custom";

  // Dirichlet on the left (x=0) and top (y=1) sides of the unit square,
  // Neumann (traction) on bottom and right.
  static BoundarySpec left_top_dirichlet();
  static BoundarySpec all_dirichlet();
};

class Mesh {
 public:
  // Builds topology from raw arrays; flips negatively oriented triangles,
  // rejects degenerate ones. Boundary faces default to Dirichlet and kappa
  // to 1 until classify_boundary / set_permeability are applied.
  static Mesh from_arrays(std::vector<Eigen::Vector2d> vertices,
                          std::vector<std::array<int, 3>> triangles,
                          std::vector<int> subdomain = {},
                          std::vector<double> kappa = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(triangles_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  const Eigen::Vector2d& vertex(int i) const { return vertices_[i]; }
  const std::array<int, 3>& triangle(int e) const { return triangles_[e]; }
  const Face& face(int f) const { return faces_[f]; }
  const std::array<int, 3>& element_faces(int e) const { return elem_faces_[e]; }

  double area(int e) const { return area_[e]; }
  double diameter(int e) const { return diameter_[e]; }
  double kappa(int e) const { return kappa_[e]; }
  int subdomain(int e) const { return subdomain_[e]; }
  Eigen::Vector2d centroid(int e) const;
  ElementGeometry geometry(int e) const;

  double h() const;       // max element diameter (longest edge)
  int theta() const;      // 1 iff no Neumann faces
  int euler_characteristic() const;  // V - E + T

  // Face ids of F_h^* = interior + Neumann faces (ascending).
  const std::vector<int>& star_faces() const { return star_faces_; }
  int num_boundary_faces() const { return num_dirichlet_ + num_neumann_; }
  int num_interior_faces() const { return num_interior_; }
  int num_dirichlet_faces() const { return num_dirichlet_; }
  int num_neumann_faces() const { return num_neumann_; }

  // Penalty weight gamma_F = min of the neighbors' 1/kappa (one-sided on
  // Neumann faces); rejects Dirichlet faces.
  double gamma(int f) const;

 private:
  friend Mesh classify_boundary(const Mesh&, const BoundarySpec&);
  friend Mesh set_permeability(const Mesh&, const std::vector<double>&);
  friend Mesh set_permeability(const Mesh&, const std::function<double(const Eigen::Vector2d&)>&);
  friend Mesh set_subdomains(const Mesh&, const std::function<int(const Eigen::Vector2d&)>&,
                             const std::vector<double>&);

  void build_topology();
  void refresh_face_lists();

  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> subdomain_;
  std::vector<double> kappa_;
  std::vector<double> area_;
  std::vector<double> diameter_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 3>> elem_faces_;
  std::vector<int> star_faces_;
  int num_interior_ = 0;
  int num_dirichlet_ = 0;
  int num_neumann_ = 0;
};

// n x n unit-square grid, each cell split along the (i,j)-(i+1,j+1)
// diagonal: 2n^2 triangles, h = sqrt(2)/n.
Mesh diagonal_grid(int n);

// n x n cells each split by both diagonals through the cell center:
// 4n^2 triangles, h = 1/n.
Mesh crisscross_grid(int n);

// Each triangle replaced by the 3 triangles joining its barycenter to its
// vertices; subdomain id and kappa inherited.
Mesh barycentric_trisect(const Mesh& m);

// Re-tags boundary faces using `spec`. Errors if the Dirichlet set is empty
// or a face straddles the Dirichlet/Neumann split.
Mesh classify_boundary(const Mesh& m, const BoundarySpec& spec);

Mesh set_permeability(const Mesh& m, const std::vector<double>& per_element);
Mesh set_permeability(const Mesh& m, const std::function<double(const Eigen::Vector2d&)>& at_centroid);

// Assigns subdomain ids by centroid and kappa by subdomain.
Mesh set_subdomains(const Mesh& m, const std::function<int(const Eigen::Vector2d&)>& subdomain_of,
                    const std::vector<double>& kappa_by_subdomain);

// Two-subdomain split at x = x0 with kappa_left / kappa_right; rejects
// meshes whose elements straddle the interface.
Mesh two_subdomain_split_x(const Mesh& m, double x0, double kappa_left, double kappa_right);

}  // namespace stressdg
