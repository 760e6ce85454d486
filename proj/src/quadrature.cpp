#include "cuspeig/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cuspeig/parallel.hpp"

namespace cuspeig {

GaussRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1 violated");
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  // Newton iteration on the Legendre polynomial P_m over [-1, 1].
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (1.0 + x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

void check_finite(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("integrand not finite at quadrature node");
}

// Shared fiber structure of Omega_gamma and Omega_n: height t in (0,1),
// cross-section cube of side t^sigma.
double integrate_fiber_gauss(const ScalarField& f, int n, double sigma,
                             const FiberGaussScheme& fg, int workers) {
  const GaussRule fiber = gauss_legendre(fg.m);
  const GaussRule cross = gauss_legendre(fg.k);
  const int cross_dims = n - 1;
  std::size_t cross_count = 1;
  for (int d = 0; d < cross_dims; ++d) cross_count *= fg.k;
  const std::size_t total = static_cast<std::size_t>(fg.m) * cross_count;

  std::vector<double> partial((total + kChunkSize - 1) / kChunkSize, 0.0);
  parallel_for_chunks(total, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Eigen::VectorXd x(n);
    double sum = 0.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t i = idx / cross_count;
      std::size_t rest = idx % cross_count;
      const double s = fiber.nodes[i];
      const double t = std::pow(s, fg.beta);
      const double dtds = fg.beta * std::pow(s, fg.beta - 1.0);
      const double side = std::pow(t, sigma);
      double weight = fiber.weights[i] * dtds;
      for (int d = 0; d < cross_dims; ++d) {
        const std::size_t j = rest % fg.k;
        rest /= fg.k;
        x[d] = side * cross.nodes[j];
        weight *= side * cross.weights[j];
      }
      x[n - 1] = t;
      const double v = f(x);
      check_finite(v);
      sum += weight * v;
    }
    partial[chunk] = sum;
  });
  double total_sum = 0.0;
  for (double s : partial) total_sum += s;
  return total_sum;
}

inline double uniform01(std::mt19937_64& rng) {
  // strictly inside (0,1); keeps the cusp tip out of every sample set
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double integrate_monte_carlo(const ScalarField& f, int n, double sigma,
                             const MonteCarloScheme& mc, int workers) {
  if (mc.samples <= 0) throw std::invalid_argument("monte_carlo: samples >= 1 violated");
  const double gamma_eff = sigma * (n - 1) + 1.0;
  const std::size_t count = static_cast<std::size_t>(mc.samples);

  // Sample generation is a single sequential stream so the point set is
  // independent of the worker count.
  std::vector<double> points(count * n);
  std::mt19937_64 rng(mc.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = std::pow(uniform01(rng), 1.0 / gamma_eff);
    const double side = std::pow(t, sigma);
    for (int d = 0; d < n - 1; ++d) points[i * n + d] = side * uniform01(rng);
    points[i * n + n - 1] = t;
  }

  const double mean = chunked_sum(count, workers, [&](std::size_t i) {
                        Eigen::Map<const Eigen::VectorXd> x(&points[i * n], n);
                        const double v = f(x);
                        check_finite(v);
                        return v;
                      }) /
                      static_cast<double>(count);
  return mean / gamma_eff;  // |domain| = 1/gamma_eff
}

double integrate_impl(const ScalarField& f, int n, double sigma, const QuadratureScheme& scheme) {
  switch (scheme.kind) {
    case QuadratureScheme::Kind::fiber_gauss:
      return integrate_fiber_gauss(f, n, sigma, scheme.fg, scheme.workers);
    case QuadratureScheme::Kind::monte_carlo:
      return integrate_monte_carlo(f, n, sigma, scheme.mc, scheme.workers);
  }
  throw std::logic_error("integrate: unknown scheme kind");
}

}  // namespace

double integrate(const ScalarField& f, const CuspDomain& domain, const QuadratureScheme& scheme) {
  return integrate_impl(f, domain.n, domain.sigma, scheme);
}

double integrate(const ScalarField& f, const PyramidDomain& domain,
                 const QuadratureScheme& scheme) {
  return integrate_impl(f, domain.n, 1.0, scheme);
}

namespace {

template <class Domain>
double weighted_norm_impl(const ScalarField& u, const WeightSpec& w, double q,
                          const Domain& domain, const QuadratureScheme& scheme) {
  if (!(q >= 1.0)) throw std::invalid_argument("weighted_norm: q >= 1 violated");
  const ScalarField integrand = [&](const Eigen::VectorXd& x) {
    return std::pow(std::abs(u(x)), q) * weight_value(w, x);
  };
  return std::pow(integrate(integrand, domain, scheme), 1.0 / q);
}

}  // namespace

double weighted_norm(const ScalarField& u, const WeightSpec& w, double q, const CuspDomain& domain,
                     const QuadratureScheme& scheme) {
  return weighted_norm_impl(u, w, q, domain, scheme);
}

double weighted_norm(const ScalarField& u, const WeightSpec& w, double q,
                     const PyramidDomain& domain, const QuadratureScheme& scheme) {
  return weighted_norm_impl(u, w, q, domain, scheme);
}

double ratio_norm_fiber_exponent(const WeightSpec& w, const ProblemParams& params) {
  const DerivedParams d = derive_params(params);
  if (!(params.p < params.q)) throw std::invalid_argument("ratio_norm: requires p < q");
  (void)d;
  const WeightSpec w_gamma = optimal_weight(params);
  const double pq = params.p / params.q;
  const double hoelder = params.q / (params.q - params.p);
  const double ratio_expo = (w.expo - w_gamma.expo * pq) * hoelder;
  return ratio_expo + params.gamma - 1.0;
}

double ratio_norm(const WeightSpec& w, const ProblemParams& params) {
  const double fiber_expo = ratio_norm_fiber_exponent(w, params);
  if (fiber_expo <= -1.0) {
    std::ostringstream os;
    os << "divergent ratio norm: fiber exponent " << fiber_expo << " <= -1";
    throw DivergentNormError(os.str(), fiber_expo);
  }
  const WeightSpec w_gamma = optimal_weight(params);
  const double pq = params.p / params.q;
  const double coef_ratio = w.coef / std::pow(w_gamma.coef, pq);
  return coef_ratio * std::pow(1.0 / (fiber_expo + 1.0), (params.q - params.p) / params.q);
}

}  // namespace cuspeig
