#include "cuspeig/params.hpp"

#include <cmath>
#include <sstream>

namespace cuspeig {

void validate(const ProblemParams& params) {
  const auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << "invalid parameters (n=" << params.n << ", p=" << params.p << ", q=" << params.q
       << ", gamma=" << params.gamma << "): " << msg;
    throw std::invalid_argument(os.str());
  };

  if (params.n < 2) fail("n >= 2 violated");
  if (!(std::isfinite(params.p) && std::isfinite(params.q) && std::isfinite(params.gamma)))
    fail("parameters must be finite");
  if (!(params.p > 1.0)) fail("p > 1 violated");
  if (!(params.p < params.n)) fail("p < n violated");
  if (!(params.q >= params.p)) fail("p <= q violated");
  const double p_star = params.n * params.p / (params.n - params.p);
  if (!(params.q < p_star)) {
    std::ostringstream os;
    os << "q < p* violated: q >= p* = " << p_star;
    fail(os.str());
  }
  if (!(params.gamma >= params.n)) fail("gamma >= n violated");
}

void validate_for_solver(const ProblemParams& params) {
  if (params.p == params.n) {
    ProblemParams strict = params;
    strict.p = 0.5 * (1.0 + params.n);  // midpoint of the strict range
    strict.q = strict.p;
    validate(strict);  // n, gamma checks with a placeholder exponent
    if (!(params.q == params.p))
      throw std::invalid_argument("solver with p = n supports q = p only");
    return;
  }
  validate(params);
}

DerivedParams derive_params(const ProblemParams& params) {
  validate(params);
  DerivedParams d;
  d.sigma = sigma_from_gamma(params.n, params.gamma);
  d.a_max = (params.n - params.p) / (params.gamma - params.p);
  d.delta = 1.0 / params.p - 1.0 / params.q;
  d.p_star = params.n * params.p / (params.n - params.p);
  return d;
}

}  // namespace cuspeig
