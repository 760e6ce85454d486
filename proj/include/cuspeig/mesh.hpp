#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cuspeig/domain.hpp"

namespace cuspeig {

// Conforming triangulation of the 2-D domain {0 < x2 < 1, 0 < x1 < x2^sigma}.
// Vertex layers sit at heights x2 = (i/M)^beta, layer i is split into
// ~ceil(M * x2^sigma) segments, and consecutive layers are stitched by a
// monotone strip triangulation.  Boundary vertices lie on the exact curve
// x1 = x2^sigma; for sigma > 1 the chords overshoot the convex curve
// slightly, so the polygon area approaches 1/gamma from above as M grows.
struct Mesh {
  Eigen::Matrix<double, Eigen::Dynamic, 2> vertices;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;  // CCW
  Eigen::VectorXd areas;
  std::vector<Eigen::Matrix<double, 2, 3>> grads;  // column j: grad of nodal basis j
  std::vector<std::vector<std::pair<int, int>>> vertex_elements;  // vertex -> (element, local)
  double sigma = 1.0;
  int M = 0;
  double beta = 1.0;

  int num_vertices() const { return static_cast<int>(vertices.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.rows()); }
  double total_area() const { return areas.sum(); }
};

Mesh build_mesh(const CuspDomain& domain, int M, double beta);
Mesh build_mesh(const PyramidDomain& domain, int M, double beta);

// Element grading stays at 2 regardless of sigma: steeper grading stacks
// sub-epsilon sliver elements against the tip (width (i/M)^{beta sigma}),
// and the weights this toolkit meshes for vanish there anyway.
inline double default_mesh_grading() { return 2.0; }

// Mesh from explicit arrays (tests, hand-built fixtures); computes areas,
// gradients and adjacency.  Triangles must be positively oriented.
Mesh make_mesh(Eigen::Matrix<double, Eigen::Dynamic, 2> vertices,
               Eigen::Matrix<int, Eigen::Dynamic, 3> triangles);

// Header "V T", vertex lines "x y", triangle lines "i j k" (0-based).
void write_mesh(const Mesh& mesh, std::ostream& os);

}  // namespace cuspeig
