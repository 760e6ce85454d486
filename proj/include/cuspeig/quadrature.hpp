#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "cuspeig/domain.hpp"
#include "cuspeig/weight.hpp"

namespace cuspeig {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

// Tensor rule over the fiber decomposition
//   int_0^1 ( int_{cube(side(t))} f dx' ) dt
// with grading substitution t = s^beta to resolve power behaviour at the
// tip; m Gauss points in s, k per cross-section direction.
struct FiberGaussScheme {
  int m = 16;
  int k = 16;
  double beta = 2.0;
};

struct MonteCarloScheme {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
};

struct QuadratureScheme {
  enum class Kind { fiber_gauss, monte_carlo };
  Kind kind = Kind::fiber_gauss;
  FiberGaussScheme fg;
  MonteCarloScheme mc;
  int workers = 1;

  static QuadratureScheme fiber_gauss(int m, int k, double beta) {
    QuadratureScheme s;
    s.kind = Kind::fiber_gauss;
    s.fg = FiberGaussScheme{m, k, beta};
    return s;
  }
  static QuadratureScheme monte_carlo(std::int64_t samples, std::uint64_t seed) {
    QuadratureScheme s;
    s.kind = Kind::monte_carlo;
    s.mc = MonteCarloScheme{samples, seed};
    return s;
  }
};

inline double default_grading(double sigma) { return std::max(2.0, sigma); }

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int m);

double integrate(const ScalarField& f, const CuspDomain& domain, const QuadratureScheme& scheme);
double integrate(const ScalarField& f, const PyramidDomain& domain, const QuadratureScheme& scheme);

// ( int |u|^q w dx )^{1/q}
double weighted_norm(const ScalarField& u, const WeightSpec& w, double q, const CuspDomain& domain,
                     const QuadratureScheme& scheme);
double weighted_norm(const ScalarField& u, const WeightSpec& w, double q,
                     const PyramidDomain& domain, const QuadratureScheme& scheme);

struct DivergentNormError : std::runtime_error {
  explicit DivergentNormError(const std::string& msg, double fiber_exponent)
      : std::runtime_error(msg), exponent(fiber_exponent) {}
  double exponent;
};

// Fiber exponent of (w / w_gamma^{p/q})^{q/(q-p)} over Omega_gamma; the
// ratio norm diverges exactly when this is <= -1.
double ratio_norm_fiber_exponent(const WeightSpec& w, const ProblemParams& params);

// || w / w_gamma^{p/q} ||_{L^{q/(q-p)}(Omega_gamma)} in closed form.
// Power-law weights reduce to a single fiber integral, so divergence is
// decided by exponent arithmetic, never by numerical blow-up.
double ratio_norm(const WeightSpec& w, const ProblemParams& params);

}  // namespace cuspeig
