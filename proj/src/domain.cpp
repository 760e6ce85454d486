#include "cuspeig/domain.hpp"

#include <cmath>
#include <vector>

namespace cuspeig {

CuspDomain make_cusp_domain(int n, double gamma) {
  if (n < 2) throw std::invalid_argument("domain: n >= 2 violated");
  if (!(gamma >= n)) throw std::invalid_argument("domain: gamma >= n violated");
  return CuspDomain{n, gamma, sigma_from_gamma(n, gamma)};
}

namespace {

// Extreme points of the closure: the cusp tip and the 2^(n-1) corners of
// the top face.  Exact for these product domains.
double diameter_by_vertices(int n) {
  std::vector<Eigen::VectorXd> verts;
  verts.emplace_back(Eigen::VectorXd::Zero(n));
  const int corners = 1 << (n - 1);
  for (int mask = 0; mask < corners; ++mask) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n - 1; ++i) v[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    v[n - 1] = 1.0;
    verts.push_back(v);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      best = std::max(best, (verts[i] - verts[j]).norm());
  return best;
}

}  // namespace

double simplex_volume_verbatim(int n) {
  if (n < 1) throw std::invalid_argument("simplex_volume_verbatim: n >= 1 violated");
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return 1.0 / factorial;
}

double domain_diameter(const CuspDomain& d) {
  if (d.sigma == 1.0) return std::sqrt(static_cast<double>(d.n));
  return diameter_by_vertices(d.n);
}

double domain_diameter(const PyramidDomain& d) { return std::sqrt(static_cast<double>(d.n)); }

bool contains(const CuspDomain& d, const Eigen::VectorXd& x) {
  if (x.size() != d.n) return false;
  const double t = x[d.n - 1];
  if (!(t > 0.0 && t < 1.0)) return false;
  const double side = cross_section_side(d, t);
  for (int i = 0; i < d.n - 1; ++i)
    if (!(x[i] > 0.0 && x[i] < side)) return false;
  return true;
}

bool contains(const PyramidDomain& d, const Eigen::VectorXd& y) {
  if (y.size() != d.n) return false;
  const double t = y[d.n - 1];
  if (!(t > 0.0 && t < 1.0)) return false;
  for (int i = 0; i < d.n - 1; ++i)
    if (!(y[i] > 0.0 && y[i] < t)) return false;
  return true;
}

}  // namespace cuspeig
