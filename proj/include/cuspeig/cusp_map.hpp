#pragma once

#include <Eigen/Core>

#include "cuspeig/domain.hpp"
#include "cuspeig/params.hpp"

namespace cuspeig {

// The stretching homeomorphism phi_a between the pyramid and the cusp,
//   phi_a(y) = (y_1 y_n^{a sigma - 1}, ..., y_{n-1} y_n^{a sigma - 1}, y_n^a),
// defined for 0 < a <= a_max = (n-p)/(gamma-p).
struct CuspMap {
  ProblemParams params;
  DerivedParams derived;
  double a = 1.0;
};

CuspMap make_cusp_map(const ProblemParams& params, double a);
inline CuspMap make_cusp_map(const ProblemParams& params) {
  return make_cusp_map(params, derive_params(params).a_max);
}

// Maps a point strictly inside Omega_n to a point strictly inside Omega_gamma.
Eigen::VectorXd phi(const CuspMap& map, const Eigen::VectorXd& y);

// Inverse map; phi(phi_inverse(x)) = x.
Eigen::VectorXd phi_inverse(const CuspMap& map, const Eigen::VectorXd& x);

// Jacobi matrix of phi_a at y (upper triangular plus last column).
Eigen::MatrixXd jacobian_matrix(const CuspMap& map, const Eigen::VectorXd& y);

// det D(phi_a)(y) = a y_n^{a gamma - n}.
double jacobian_det(const CuspMap& map, const Eigen::VectorXd& y);
double jacobian_det(const CuspMap& map, double y_n);

}  // namespace cuspeig
