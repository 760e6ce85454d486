#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cuspeig/fem.hpp"
#include "cuspeig/params.hpp"

namespace cuspeig {

struct SolverConfig {
  double eta0 = 1.0;        // initial step size
  double backtrack = 0.5;   // line-search shrink factor
  double armijo = 1e-4;     // sufficient-decrease coefficient
  double rel_tol = 1e-10;   // relative quotient decrease considered stagnant
  int patience = 25;        // stagnant iterations before stopping
  int max_iterations = 50000;
  int restarts = 3;
  std::uint64_t seed = 0;
  int workers = 1;
  double grad_epsilon = 1e-10;  // regularization inside |grad u|^{p-2} for p < 2
  bool trace = false;           // record accepted quotients
};

struct EigenResult {
  double mu_h = 0.0;
  FemFunction eigenfunction;  // recentered, unit weighted-q-norm
  int iterations = 0;
  int restarts_used = 0;
  double residual = 0.0;  // last relative quotient decrease
  int M = 0;
  double beta = 1.0;
  bool converged = false;
  std::vector<double> trace_quotients;
};

// Bisection for the unique root of a nonincreasing function on [lo, hi];
// requires h(lo) >= 0 >= h(hi).
double recenter_root(const std::function<double(double)>& h, double lo, double hi,
                     double abs_tol);

// Unique shift t with int |u-t|^{q-2}(u-t) w dx = 0 (discrete quadrature),
// found by bisection on [min u, max u] to 1e-14 * (max u - min u).
// Returns (t, u - t); the shifted field minimizes ||u - c||_{q,w} over c.
std::pair<double, FemFunction> recenter(const FemFunction& u, const WeightSpec& w, double q);

// ||grad u||_p^p / ||u - t~||_{q,w}^p.  Rejects constant fields.
double rayleigh_quotient(const FemFunction& u, double p, double q, const WeightSpec& w);

// Projected descent over the constraint set: Euclidean quotient gradient,
// backtracking line search, recenter + renormalize after every accepted
// step.  Restarts from the x2 interpolant, the x1 interpolant, and seeded
// Gaussian nodal fields; returns the best.
EigenResult minimize_rq(const Mesh& mesh, const ProblemParams& params, const WeightSpec& w,
                        const SolverConfig& config);

// p = q = 2 oracle: smallest non-zero eigenvalue of (stiffness, weighted
// mass) by shifted inverse iteration with deflation of the constant vector.
double linear_oracle_solve(const Mesh& mesh, const WeightSpec& w);

}  // namespace cuspeig
