#include "cuspeig/weight.hpp"

#include <cmath>
#include <sstream>

namespace cuspeig {

WeightSpec unit_weight() { return WeightSpec{WeightKind::unit, 0.0, 1.0, 0.0}; }

WeightSpec power_weight(double coef, double expo) {
  if (!(coef >= 0.0)) throw std::invalid_argument("power weight: coef >= 0 violated");
  return WeightSpec{WeightKind::power, 0.0, coef, expo};
}

WeightSpec family_weight(const ProblemParams& params, double a) {
  const DerivedParams d = derive_params(params);
  if (!(a > 0.0 && a <= d.a_max + 1e-15))
    throw std::invalid_argument("family weight: a must satisfy 0 < a <= a_max");
  WeightSpec w;
  w.kind = WeightKind::family;
  w.a = a;
  w.coef = 1.0 / a;
  w.expo = params.n / a - params.gamma;
  return w;
}

WeightSpec optimal_weight(const ProblemParams& params) {
  // Same arithmetic path as family(a_max), so the two agree bit for bit.
  WeightSpec w = family_weight(params, derive_params(params).a_max);
  w.kind = WeightKind::optimal;
  return w;
}

bool is_integrable(const WeightSpec& w, const CuspDomain& domain) {
  return w.expo + domain.gamma - 1.0 > -1.0;
}

std::string describe(const WeightSpec& w) {
  std::ostringstream os;
  switch (w.kind) {
    case WeightKind::unit: os << "unit"; break;
    case WeightKind::family: os << "family:" << w.a; break;
    case WeightKind::optimal: os << "optimal"; break;
    case WeightKind::power: os << "power:" << w.coef << "," << w.expo; break;
  }
  return os.str();
}

}  // namespace cuspeig
