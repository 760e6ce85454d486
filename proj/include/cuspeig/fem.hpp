#pragma once

#include <array>
#include <iosfwd>

#include "cuspeig/mesh.hpp"
#include "cuspeig/quadrature.hpp"
#include "cuspeig/weight.hpp"

namespace cuspeig {

// Piecewise-linear scalar field by nodal values; gradient constant per element.
struct FemFunction {
  const Mesh* mesh = nullptr;
  Eigen::VectorXd values;
};

FemFunction interpolate(const Mesh& mesh, const ScalarField& f);

// Symmetric degree-6 rule on the reference triangle, 12 interior points,
// weights normalized to sum to one (scale by the element area).
struct TriangleRule {
  static constexpr int npoints = 12;
  std::array<std::array<double, 3>, npoints> bary;
  std::array<double, npoints> weights;
};
const TriangleRule& triangle_rule();

// ( sum_K A_K |grad u|_K^p )^{1/p}; exact for piecewise-linear u.
double grad_p_norm(const FemFunction& u, double p);

// Per-element quadrature of |u|^q w; the weight is evaluated at interior
// quadrature points only, so the cusp tip is never touched.
double fem_weighted_q_norm(const FemFunction& u, const WeightSpec& w, double q);

// Flattened per-(element, quadrature point) data reused across solver
// iterations: weighted measures, plain measures, and point heights.
struct FemQuadCache {
  Eigen::VectorXd weighted_measure;  // A_K * w_qp * weight(x_qp)
  Eigen::VectorXd measure;           // A_K * w_qp
  int points_per_element = TriangleRule::npoints;
};
FemQuadCache build_quad_cache(const Mesh& mesh, const WeightSpec& w);

// Values of u at every cached quadrature point, flattened like the cache.
void interpolate_at_quadrature(const FemFunction& u, Eigen::VectorXd& out);

// "x y value" per vertex.
void write_eigenfunction(const FemFunction& u, std::ostream& os);

}  // namespace cuspeig
