#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cuspeig/bounds.hpp"
#include "cuspeig/cusp_map.hpp"
#include "cuspeig/eigensolver.hpp"
#include "cuspeig/quadrature.hpp"

namespace cuspeig {

struct CheckRecord {
  std::string name;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool inconclusive = false;
};

// Scalar field with an evaluable gradient, for the operator inequalities.
struct DifferentiableField {
  std::string name;
  ScalarField value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

// Random quadratic polynomials in n variables with closed-form gradients.
std::vector<DifferentiableField> random_quadratic_fields(int n, int count, std::uint64_t seed);

// ||grad(u o phi_a)||_{L^p(Omega_n)} <= distortion_bound(a) ||grad u||_{L^p(Omega_gamma)}
// with the chain rule grad(u o phi_a) = (D phi_a)^T (grad u o phi_a).
CheckRecord check_composition_inequality(const ProblemParams& params, double a,
                                         const DifferentiableField& u,
                                         const QuadratureScheme& scheme);

// Change-of-variables isometry: the w_{gamma,a}-weighted q-norm of
// v o phi_a^{-1} over Omega_gamma equals the plain q-norm of v over Omega_n.
CheckRecord check_isometry(const ProblemParams& params, double a, const ScalarField& v,
                           const std::string& field_name, double q,
                           const QuadratureScheme& scheme);

// Pointwise ordering of the weight family for a1 < a2 <= a_max.  The
// printed inequality w_{gamma,a2} <= (a1/a2) w_{gamma,a1} reduces to
// x^{n(1/a2 - 1/a1)} <= 1, which on (0,1) holds nowhere (equality at
// x = 1); the validity region is computed from the exponent and recorded.
// What is certified is the true direction w_{gamma,a2} >= (a1/a2)
// w_{gamma,a1}, strict for x_n < 1, which yields the space inclusion
// L^q(w_{gamma,a2}) subset L^q(w_{gamma,a1}) with constant (a2/a1)^{1/q}.
CheckRecord check_weight_ordering(const ProblemParams& params, double a1, double a2,
                                  const std::vector<double>& sample_heights);

// Quantitative inclusion surrogate on random fields:
// ||u||_{q,w_{gamma,a1}} <= (a2/a1)^{1/q} ||u||_{q,w_{gamma,a2}}.
CheckRecord check_weight_space_inclusion(const ProblemParams& params, double a1, double a2,
                                         double q, int nfields, std::uint64_t seed,
                                         const QuadratureScheme& scheme);

// mu_h >= bound * (1 - tol_budget) for the canonical and verbatim bounds;
// inconclusive when the solve did not converge or a bound is non-positive.
std::vector<CheckRecord> compare_bound(const ProblemParams& params, const WeightSpec& w,
                                       const EigenResult& eigen, const BoundReport& bounds,
                                       double tol_budget = 1e-2);

// The solver-free battery the CLI serializes.
std::vector<CheckRecord> run_default_suite(const ProblemParams& params, double a,
                                           const QuadratureScheme& scheme, std::uint64_t seed);

void write_check_csv(const std::vector<CheckRecord>& records, std::ostream& os);

}  // namespace cuspeig
