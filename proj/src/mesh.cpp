#include "cuspeig/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cuspeig {

namespace {

void finalize(Mesh& mesh) {
  const int nelems = mesh.num_triangles();
  mesh.areas.resize(nelems);
  mesh.grads.resize(nelems);
  mesh.vertex_elements.assign(mesh.num_vertices(), {});
  for (int e = 0; e < nelems; ++e) {
    const auto tri = mesh.triangles.row(e);
    const Eigen::Vector2d p0 = mesh.vertices.row(tri[0]);
    const Eigen::Vector2d p1 = mesh.vertices.row(tri[1]);
    const Eigen::Vector2d p2 = mesh.vertices.row(tri[2]);
    const double cross = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                         (p1.y() - p0.y()) * (p2.x() - p0.x());
    if (!(cross > 0.0)) throw std::runtime_error("mesh: non-positive triangle orientation");
    mesh.areas[e] = 0.5 * cross;
    // grad of basis j is the 90-degree rotation of the opposite edge / (2A)
    const Eigen::Vector2d pts[3] = {p0, p1, p2};
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector2d edge = pts[(j + 2) % 3] - pts[(j + 1) % 3];
      mesh.grads[e].col(j) = Eigen::Vector2d(-edge.y(), edge.x()) / cross;
      mesh.vertex_elements[tri[j]].emplace_back(e, j);
    }
  }
}

Mesh build_mesh_impl(double sigma, int M, double beta) {
  if (M < 2) throw std::invalid_argument("build_mesh: M >= 2 violated");
  if (!(beta >= 1.0)) throw std::invalid_argument("build_mesh: beta >= 1 violated");

  // Layer heights, widths and segment counts.
  std::vector<double> height(M + 1), width(M + 1);
  std::vector<int> segments(M + 1);
  std::vector<int> first_vertex(M + 1);
  int nvertices = 0;
  for (int i = 0; i <= M; ++i) {
    const double frac = static_cast<double>(i) / M;
    height[i] = std::pow(frac, beta);
    width[i] = std::pow(height[i], sigma);
    segments[i] = i == 0 ? 0 : std::max(1, static_cast<int>(std::ceil(M * width[i] - 1e-9)));
    first_vertex[i] = nvertices;
    nvertices += segments[i] + 1;
  }
  Mesh mesh;
  mesh.sigma = sigma;
  mesh.M = M;
  mesh.beta = beta;
  mesh.vertices.resize(nvertices, 2);
  for (int i = 0; i <= M; ++i) {
    const int count = segments[i];
    for (int j = 0; j <= count; ++j) {
      const double x = count == 0 ? 0.0 : width[i] * (static_cast<double>(j) / count);
      mesh.vertices.row(first_vertex[i] + j) << x, height[i];
    }
  }

  // Stitch consecutive layers; advance whichever side keeps the walk even.
  std::vector<Eigen::Vector3i> tris;
  for (int layer = 0; layer < M; ++layer) {
    const int r = segments[layer];
    const int s = segments[layer + 1];
    const int a0 = first_vertex[layer];
    const int b0 = first_vertex[layer + 1];
    int i = 0, j = 0;
    while (i < r || j < s) {
      const bool advance_bottom =
          i < r && (j == s || static_cast<long>(i + 1) * s <= static_cast<long>(j + 1) * r);
      if (advance_bottom) {
        tris.emplace_back(a0 + i, a0 + i + 1, b0 + j);
        ++i;
      } else {
        tris.emplace_back(a0 + i, b0 + j + 1, b0 + j);
        ++j;
      }
    }
  }
  mesh.triangles.resize(static_cast<int>(tris.size()), 3);
  for (std::size_t e = 0; e < tris.size(); ++e) mesh.triangles.row(static_cast<int>(e)) = tris[e];

  finalize(mesh);
  return mesh;
}

}  // namespace

Mesh build_mesh(const CuspDomain& domain, int M, double beta) {
  if (domain.n != 2) throw std::invalid_argument("FEM path supports n=2 only");
  return build_mesh_impl(domain.sigma, M, beta);
}

Mesh build_mesh(const PyramidDomain& domain, int M, double beta) {
  if (domain.n != 2) throw std::invalid_argument("FEM path supports n=2 only");
  return build_mesh_impl(1.0, M, beta);
}

Mesh make_mesh(Eigen::Matrix<double, Eigen::Dynamic, 2> vertices,
               Eigen::Matrix<int, Eigen::Dynamic, 3> triangles) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  finalize(mesh);
  return mesh;
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
  os << mesh.num_vertices() << " " << mesh.num_triangles() << "\n";
  char buf[64];
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", mesh.vertices(v, 0), mesh.vertices(v, 1));
    os << buf << "\n";
  }
  for (int e = 0; e < mesh.num_triangles(); ++e)
    os << mesh.triangles(e, 0) << " " << mesh.triangles(e, 1) << " " << mesh.triangles(e, 2)
       << "\n";
}

}  // namespace cuspeig
