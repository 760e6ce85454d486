#pragma once

#include <stdexcept>

namespace cuspeig {

// Problem data for the weighted Neumann (p,q)-eigenvalue problem on the
// cuspidal domain with cusp parameter gamma.  gamma = n gives sigma = 1
// (no cusp).  Admissible range: 1 < p < n, p <= q < p* = np/(n-p),
// n <= gamma < infinity.
struct ProblemParams {
  int n = 2;
  double p = 1.5;
  double q = 1.5;
  double gamma = 3.0;
};

struct DerivedParams {
  double sigma = 1.0;   // (gamma-1)/(n-1)
  double a_max = 1.0;   // (n-p)/(gamma-p), admissibility bound for the cusp map
  double delta = 0.0;   // 1/p - 1/q, in [0, 1/n) on the admissible range
  double p_star = 0.0;  // np/(n-p)
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const ProblemParams& params);

// Solver-only relaxation: p = n (hence p = q = 2 in the FEM path) is
// admitted for oracle cross-checks against the linear eigenproblem.
// Closed-form bounds still require the strict range.
void validate_for_solver(const ProblemParams& params);

DerivedParams derive_params(const ProblemParams& params);

inline double sigma_from_gamma(int n, double gamma) { return (gamma - 1.0) / (n - 1.0); }
inline double gamma_from_sigma(int n, double sigma) { return sigma * (n - 1.0) + 1.0; }

}  // namespace cuspeig
