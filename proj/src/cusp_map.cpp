#include "cuspeig/cusp_map.hpp"

#include <cmath>
#include <sstream>

namespace cuspeig {

CuspMap make_cusp_map(const ProblemParams& params, double a) {
  CuspMap map{params, derive_params(params), a};
  if (!(a > 0.0) || !(a <= map.derived.a_max + 1e-15)) {
    std::ostringstream os;
    os << "cusp map: a must satisfy 0 < a <= a_max = " << map.derived.a_max << " (got a=" << a
       << "); composition operator unbounded for this a";
    throw std::invalid_argument(os.str());
  }
  return map;
}

namespace {

void require_positive_height(double t, const char* what) {
  if (!(t > 0.0)) {
    std::ostringstream os;
    os << what << ": degenerate at y_n=0";
    throw std::domain_error(os.str());
  }
}

}  // namespace

Eigen::VectorXd phi(const CuspMap& map, const Eigen::VectorXd& y) {
  const int n = map.params.n;
  require_positive_height(y.size() == n ? y[n - 1] : 0.0, "phi");
  if (!contains(PyramidDomain{n}, y)) throw std::domain_error("phi: point outside Omega_n");
  const double yn = y[n - 1];
  const double stretch = std::pow(yn, map.a * map.derived.sigma - 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n - 1; ++i) x[i] = y[i] * stretch;
  x[n - 1] = std::pow(yn, map.a);
  return x;
}

Eigen::VectorXd phi_inverse(const CuspMap& map, const Eigen::VectorXd& x) {
  const int n = map.params.n;
  require_positive_height(x.size() == n ? x[n - 1] : 0.0, "phi_inverse");
  const CuspDomain domain = make_cusp_domain(map.params);
  if (!contains(domain, x)) throw std::domain_error("phi_inverse: point outside Omega_gamma");
  const double xn = x[n - 1];
  const double shrink = std::pow(xn, 1.0 / map.a - map.derived.sigma);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n - 1; ++i) y[i] = x[i] * shrink;
  y[n - 1] = std::pow(xn, 1.0 / map.a);
  return y;
}

Eigen::MatrixXd jacobian_matrix(const CuspMap& map, const Eigen::VectorXd& y) {
  const int n = map.params.n;
  require_positive_height(y.size() == n ? y[n - 1] : 0.0, "jacobian_matrix");
  const double yn = y[n - 1];
  const double as = map.a * map.derived.sigma;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double diag = std::pow(yn, as - 1.0);
  const double corner = (as - 1.0) * std::pow(yn, as - 2.0);
  for (int i = 0; i < n - 1; ++i) {
    J(i, i) = diag;
    J(i, n - 1) = corner * y[i];
  }
  J(n - 1, n - 1) = map.a * std::pow(yn, map.a - 1.0);
  return J;
}

double jacobian_det(const CuspMap& map, double y_n) {
  require_positive_height(y_n, "jacobian_det");
  return map.a * std::pow(y_n, map.a * map.params.gamma - map.params.n);
}

double jacobian_det(const CuspMap& map, const Eigen::VectorXd& y) {
  return jacobian_det(map, y.size() > 0 ? y[y.size() - 1] : 0.0);
}

}  // namespace cuspeig
