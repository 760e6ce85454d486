#pragma once

#include <Eigen/Core>

#include "cuspeig/params.hpp"

namespace cuspeig {

// Omega_gamma = { 0 < x_n < 1, 0 < x_i < x_n^sigma }, gamma = sigma(n-1)+1.
struct CuspDomain {
  int n = 2;
  double gamma = 3.0;
  double sigma = 2.0;
};

// Omega_n: the sigma = 1 case, a pyramid over the unit (n-1)-cube.
struct PyramidDomain {
  int n = 2;
};

CuspDomain make_cusp_domain(int n, double gamma);
inline CuspDomain make_cusp_domain(const ProblemParams& params) {
  return make_cusp_domain(params.n, params.gamma);
}

// Side length of the cross-section cube at height t.
inline double cross_section_side(const CuspDomain& d, double t) { return std::pow(t, d.sigma); }
inline double cross_section_side(const PyramidDomain&, double t) { return t; }

inline double domain_volume(const CuspDomain& d) { return 1.0 / d.gamma; }
inline double domain_volume(const PyramidDomain& d) { return 1.0 / d.n; }

// The n-simplex volume 1/n!; cross-reference only.  The pyramid over the
// unit (n-1)-cube integrates to 1/n, which is what every computed bound
// uses (the two coincide at n = 2).
double simplex_volume_verbatim(int n);

// Diameter by farthest pair over the closure's extreme points
// {0} and the corners of the unit cube face at x_n = 1.
double domain_diameter(const CuspDomain& d);
double domain_diameter(const PyramidDomain& d);

bool contains(const CuspDomain& d, const Eigen::VectorXd& x);
bool contains(const PyramidDomain& d, const Eigen::VectorXd& y);

}  // namespace cuspeig
