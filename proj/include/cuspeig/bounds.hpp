#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuspeig/params.hpp"
#include "cuspeig/weight.hpp"

namespace cuspeig {

// Volume of the unit ball in R^n, omega_n = 2 pi^{n/2} / (n Gamma(n/2)),
// by the exact recursion omega_n = (2 pi / n) omega_{n-2}.
double unit_ball_volume(int n);

// Ess-sup bound for the p-distortion of phi_a on Omega_n,
//   (1/a)^{1/p} sqrt((n-1)(a sigma - 1)^2 + n - 1 + a^2),
// valid because the height exponent a - 1 - (a gamma - n)/p is >= 0
// exactly when a <= a_max.  Rejects a > a_max.
double distortion_bound(const ProblemParams& params, double a);

// Poincare-Sobolev constant estimate for a convex domain,
//   (d^n / (n |Omega|)) ((1-delta)/(1/n-delta))^{1-delta}
//     omega_n^{1-1/n} |Omega|^{1/n-delta},  delta = 1/p - 1/q.
double poincare_constant_convex(const ProblemParams& params, double diameter, double volume);

// Literal simplex specialization of the convex estimate, using the n!
// simplex volume.  Cross-reference only; the composed bounds use the
// integrated pyramid volume 1/n.
double poincare_constant_simplex_verbatim(const ProblemParams& params);

// pi_p = 2 pi (p-1)^{1/p} / (p sin(pi/p)); pi_2 = pi.
double pi_p(double p);

// B_{p,q}(Omega_gamma, w_gamma) <= B_{p,q}(Omega_n) * distortion_bound(a_max).
double poincare_constant_weighted(const ProblemParams& params);

struct MuBounds {
  double canonical = 0.0;       // composed from the constituent estimates
  double paper_verbatim = 0.0;  // the closed-form constant in its literal form
};

// Lower bound for the first non-trivial (p,q)-eigenvalue with weight
// w_gamma.  canonical = poincare_constant_weighted(params)^{-p};
// paper_verbatim evaluates C(gamma,p,q) d^{-np} |Omega_n|^{(pq(n-1)+n(q-1))/(qn)}
// literally.  The two are not algebraically identical; reports carry both.
MuBounds mu_lower_main(const ProblemParams& params);

// p = q specialization.  canonical = (pi_p/d)^p * distortion_bound(a_max)^{-p}
// (sharp convex p-Poincare estimate composed with the distortion factor);
// paper_verbatim = C(gamma,p) d^{-p} with C(gamma,p) in literal form.
MuBounds mu_lower_pp(const ProblemParams& params);

// General-weight p-eigenvalue bound via the auxiliary exponent q > p and
// the ratio norm ||w / w_gamma^{p/q}||_{L^{q/(q-p)}}.
MuBounds mu_lower_general_weight(const ProblemParams& params, double ratio_norm);

struct BoundReport {
  ProblemParams params;
  DerivedParams derived;
  double K_p = 0.0;
  double B_convex = 0.0;
  double B_weighted = 0.0;
  double mu_lower_composed = 0.0;  // always B_weighted^{-p}
  double mu_lower_canonical = 0.0;
  double mu_lower_paper_verbatim = 0.0;
  double verbatim_to_canonical = 0.0;
  std::optional<double> pi_p;  // present only when p = q
  std::vector<std::string> notes;
};

BoundReport make_bound_report(const ProblemParams& params);

}  // namespace cuspeig
