#include "cuspeig/fem.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cuspeig {

FemFunction interpolate(const Mesh& mesh, const ScalarField& f) {
  FemFunction u;
  u.mesh = &mesh;
  u.values.resize(mesh.num_vertices());
  Eigen::VectorXd x(2);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    x[0] = mesh.vertices(v, 0);
    x[1] = mesh.vertices(v, 1);
    u.values[v] = f(x);
  }
  return u;
}

const TriangleRule& triangle_rule() {
  static const TriangleRule rule = [] {
    TriangleRule r;
    // Dunavant degree-6 orbits.
    const double a1 = 0.249286745170910, w1 = 0.116786275726379;
    const double a2 = 0.063089014491502, w2 = 0.050844906370207;
    const double a3 = 0.053145049844816, b3 = 0.310352451033785, w3 = 0.082851075618374;
    int idx = 0;
    auto push = [&](double l0, double l1, double l2, double w) {
      r.bary[idx] = {l0, l1, l2};
      r.weights[idx] = w;
      ++idx;
    };
    push(1.0 - 2.0 * a1, a1, a1, w1);
    push(a1, 1.0 - 2.0 * a1, a1, w1);
    push(a1, a1, 1.0 - 2.0 * a1, w1);
    push(1.0 - 2.0 * a2, a2, a2, w2);
    push(a2, 1.0 - 2.0 * a2, a2, w2);
    push(a2, a2, 1.0 - 2.0 * a2, w2);
    const double c3 = 1.0 - a3 - b3;
    push(c3, a3, b3, w3);
    push(c3, b3, a3, w3);
    push(a3, c3, b3, w3);
    push(b3, c3, a3, w3);
    push(a3, b3, c3, w3);
    push(b3, a3, c3, w3);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    for (double& w : r.weights) w /= sum;
    return r;
  }();
  return rule;
}

double grad_p_norm(const FemFunction& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("grad_p_norm: p >= 1 violated");
  const Mesh& mesh = *u.mesh;
  double sum = 0.0;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    const Eigen::Vector2d g = mesh.grads[e].col(0) * u.values[tri[0]] +
                              mesh.grads[e].col(1) * u.values[tri[1]] +
                              mesh.grads[e].col(2) * u.values[tri[2]];
    sum += mesh.areas[e] * std::pow(g.norm(), p);
  }
  return std::pow(sum, 1.0 / p);
}

double fem_weighted_q_norm(const FemFunction& u, const WeightSpec& w, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("fem_weighted_q_norm: q >= 1 violated");
  const Mesh& mesh = *u.mesh;
  const TriangleRule& rule = triangle_rule();
  double sum = 0.0;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    const double u0 = u.values[tri[0]], u1 = u.values[tri[1]], u2 = u.values[tri[2]];
    const double y0 = mesh.vertices(tri[0], 1), y1 = mesh.vertices(tri[1], 1),
                 y2 = mesh.vertices(tri[2], 1);
    double local = 0.0;
    for (int k = 0; k < TriangleRule::npoints; ++k) {
      const auto& l = rule.bary[k];
      const double uq = l[0] * u0 + l[1] * u1 + l[2] * u2;
      const double height = l[0] * y0 + l[1] * y1 + l[2] * y2;
      local += rule.weights[k] * std::pow(std::abs(uq), q) * weight_value_at_height(w, height);
    }
    sum += mesh.areas[e] * local;
  }
  return std::pow(sum, 1.0 / q);
}

FemQuadCache build_quad_cache(const Mesh& mesh, const WeightSpec& w) {
  const TriangleRule& rule = triangle_rule();
  FemQuadCache cache;
  const int total = mesh.num_triangles() * TriangleRule::npoints;
  cache.weighted_measure.resize(total);
  cache.measure.resize(total);
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    const double y0 = mesh.vertices(tri[0], 1), y1 = mesh.vertices(tri[1], 1),
                 y2 = mesh.vertices(tri[2], 1);
    for (int k = 0; k < TriangleRule::npoints; ++k) {
      const auto& l = rule.bary[k];
      const double height = l[0] * y0 + l[1] * y1 + l[2] * y2;
      const double measure = mesh.areas[e] * rule.weights[k];
      const int idx = e * TriangleRule::npoints + k;
      cache.measure[idx] = measure;
      cache.weighted_measure[idx] = measure * weight_value_at_height(w, height);
    }
  }
  return cache;
}

void interpolate_at_quadrature(const FemFunction& u, Eigen::VectorXd& out) {
  const Mesh& mesh = *u.mesh;
  const TriangleRule& rule = triangle_rule();
  out.resize(mesh.num_triangles() * TriangleRule::npoints);
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    const double u0 = u.values[tri[0]], u1 = u.values[tri[1]], u2 = u.values[tri[2]];
    for (int k = 0; k < TriangleRule::npoints; ++k) {
      const auto& l = rule.bary[k];
      out[e * TriangleRule::npoints + k] = l[0] * u0 + l[1] * u1 + l[2] * u2;
    }
  }
}

void write_eigenfunction(const FemFunction& u, std::ostream& os) {
  const Mesh& mesh = *u.mesh;
  char buf[96];
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", mesh.vertices(v, 0),
                  mesh.vertices(v, 1), u.values[v]);
    os << buf << "\n";
  }
}

}  // namespace cuspeig
