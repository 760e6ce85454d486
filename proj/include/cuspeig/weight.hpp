#pragma once

#include <string>

#include <Eigen/Core>

#include "cuspeig/domain.hpp"
#include "cuspeig/params.hpp"

namespace cuspeig {

enum class WeightKind { unit, family, optimal, power };

// Every supported weight is a power of the height coordinate,
// w(x) = coef * x_n^expo.  The family member w_{gamma,a} has
// coef = 1/a, expo = n/a - gamma; the optimal weight is family(a_max).
struct WeightSpec {
  WeightKind kind = WeightKind::unit;
  double a = 0.0;     // only meaningful for kind == family / optimal
  double coef = 1.0;
  double expo = 0.0;
};

WeightSpec unit_weight();
WeightSpec power_weight(double coef, double expo);
WeightSpec family_weight(const ProblemParams& params, double a);
WeightSpec optimal_weight(const ProblemParams& params);

inline double weight_value_at_height(const WeightSpec& w, double x_n) {
  return w.expo == 0.0 ? w.coef : w.coef * std::pow(x_n, w.expo);
}

inline double weight_value(const WeightSpec& w, const Eigen::VectorXd& x) {
  return weight_value_at_height(w, x[x.size() - 1]);
}

// Local integrability over Omega_gamma by exponent arithmetic:
// the fiber integrand x_n^{expo + gamma - 1} must have exponent > -1.
bool is_integrable(const WeightSpec& w, const CuspDomain& domain);

std::string describe(const WeightSpec& w);

}  // namespace cuspeig
