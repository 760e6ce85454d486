#include "cuspeig/eigensolver.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "cuspeig/parallel.hpp"

namespace cuspeig {

namespace {

// |x|^q and |x|^{q-2}x with fast paths for the exponents the solver meets.
struct PowQ {
  explicit PowQ(double q_) : q(q_) {
    if (q == 2.0)
      mode = 0;
    else if (q == 1.5)
      mode = 1;
    else if (q == 3.0)
      mode = 2;
    else
      mode = 3;
  }
  double q;
  int mode;

  double abs_pow(double x) const {  // |x|^q
    const double a = std::abs(x);
    switch (mode) {
      case 0: return a * a;
      case 1: return a * std::sqrt(a);
      case 2: return a * a * a;
      default: return std::pow(a, q);
    }
  }
  double signed_pow(double x) const {  // |x|^{q-2} x
    switch (mode) {
      case 0: return x;
      case 1: return x < 0.0 ? -std::sqrt(-x) : std::sqrt(x);
      case 2: return x * std::abs(x);
      default: return x < 0.0 ? -std::pow(-x, q - 1.0) : std::pow(x, q - 1.0);
    }
  }
};

struct Workspace {
  const Mesh* mesh = nullptr;
  WeightSpec weight;
  double p = 2.0, q = 2.0;
  int workers = 1;
  double eps = 1e-10;
  FemQuadCache cache;
  PowQ powq{2.0};

  Eigen::VectorXd uq;          // values at quadrature points
  Eigen::MatrixX2d stiff_el;   // per element: A (|g|^2+eps^2)^{(p-2)/2} g
  Eigen::VectorXd sigma_el;    // per element: A (|g|^2+eps^2)^{(p-2)/2}
  Eigen::VectorXd num_el;      // per element: A |g|^p
  Eigen::MatrixX3d moment_el;  // per element: int |u|^{q-2} u phi_loc w

  Eigen::SparseMatrix<double> mass;  // weighted mass matrix (assembled once)
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> precond;
  double mu_at_factor = -1.0;
};

Eigen::SparseMatrix<double> assemble_weighted_mass(const Mesh& mesh, const FemQuadCache& cache) {
  const TriangleRule& rule = triangle_rule();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_triangles() * 9);
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double mij = 0.0;
        for (int k = 0; k < TriangleRule::npoints; ++k)
          mij += cache.weighted_measure[e * TriangleRule::npoints + k] * rule.bary[k][i] *
                 rule.bary[k][j];
        trip.emplace_back(tri[i], tri[j], mij);
      }
  }
  Eigen::SparseMatrix<double> mass(mesh.num_vertices(), mesh.num_vertices());
  mass.setFromTriplets(trip.begin(), trip.end());
  return mass;
}

Workspace make_workspace(const Mesh& mesh, const WeightSpec& w, double p, double q,
                         const SolverConfig& config) {
  Workspace ws;
  ws.mesh = &mesh;
  ws.weight = w;
  ws.p = p;
  ws.q = q;
  ws.workers = config.workers;
  ws.eps = config.grad_epsilon;
  ws.cache = build_quad_cache(mesh, w);
  ws.powq = PowQ(q);
  if (!(ws.cache.weighted_measure.sum() > 0.0))
    throw std::runtime_error("recenter: weight integral is zero on the mesh");
  const int nel = mesh.num_triangles();
  ws.stiff_el.resize(nel, 2);
  ws.sigma_el.resize(nel);
  ws.num_el.resize(nel);
  ws.moment_el.resize(nel, 3);
  ws.mass = assemble_weighted_mass(mesh, ws.cache);
  return ws;
}

// Direction solve: (K_sigma + mu M_w) d = g / p, where K_sigma is the
// diffusion operator the quotient gradient linearizes to (coefficient
// A sigma per element).  The raw Euclidean gradient needs >5e4 iterations
// for p < 2 at production mesh sizes; this lagged-diffusivity direction
// keeps the same projected-descent framework with Newton-like step
// counts, and at p = q = 2 the unit step is exactly a shifted inverse
// iteration update.  For p = 2 the operator only changes through the mu
// shift, so the factorization is reused until mu moves.
bool preconditioned_direction(Workspace& ws, double mu, const Eigen::VectorXd& grad,
                              Eigen::VectorXd& dir) {
  const Mesh& mesh = *ws.mesh;
  const bool stale =
      !ws.precond || ws.p != 2.0 || std::abs(mu - ws.mu_at_factor) > 1e-3 * ws.mu_at_factor;
  if (stale) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mesh.num_triangles() * 9);
    for (int e = 0; e < mesh.num_triangles(); ++e) {
      const auto tri = mesh.triangles.row(e);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          trip.emplace_back(tri[i], tri[j],
                            ws.sigma_el[e] * mesh.grads[e].col(i).dot(mesh.grads[e].col(j)));
    }
    Eigen::SparseMatrix<double> P(mesh.num_vertices(), mesh.num_vertices());
    P.setFromTriplets(trip.begin(), trip.end());
    P += std::max(mu, 1e-12) * ws.mass;
    if (!ws.precond) {
      ws.precond = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
      ws.precond->analyzePattern(P);
    }
    ws.precond->factorize(P);
    if (ws.precond->info() != Eigen::Success) {
      ws.precond.reset();
      return false;
    }
    ws.mu_at_factor = mu;
  }
  dir = ws.precond->solve(grad / ws.p);
  return grad.dot(dir) > 0.0;
}

void interp_quadrature(const Workspace& ws, const Eigen::VectorXd& values, Eigen::VectorXd& uq) {
  const Mesh& mesh = *ws.mesh;
  const TriangleRule& rule = triangle_rule();
  uq.resize(mesh.num_triangles() * TriangleRule::npoints);
  parallel_for_chunks(mesh.num_triangles(), ws.workers,
                      [&](std::size_t, std::size_t begin, std::size_t end) {
                        for (std::size_t e = begin; e < end; ++e) {
                          const auto tri = mesh.triangles.row(static_cast<int>(e));
                          const double u0 = values[tri[0]], u1 = values[tri[1]],
                                       u2 = values[tri[2]];
                          for (int k = 0; k < TriangleRule::npoints; ++k) {
                            const auto& l = rule.bary[k];
                            uq[e * TriangleRule::npoints + k] = l[0] * u0 + l[1] * u1 + l[2] * u2;
                          }
                        }
                      });
}

double q_mass(const Workspace& ws, const Eigen::VectorXd& uq, double shift) {
  return chunked_sum(uq.size(), ws.workers, [&](std::size_t i) {
    return ws.cache.weighted_measure[i] * ws.powq.abs_pow(uq[i] - shift);
  });
}

double signed_moment(const Workspace& ws, const Eigen::VectorXd& uq, double shift) {
  return chunked_sum(uq.size(), ws.workers, [&](std::size_t i) {
    return ws.cache.weighted_measure[i] * ws.powq.signed_pow(uq[i] - shift);
  });
}

double recenter_shift(const Workspace& ws, const Eigen::VectorXd& values,
                      const Eigen::VectorXd& uq) {
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (hi == lo) return lo;
  return recenter_root([&](double t) { return signed_moment(ws, uq, t); }, lo, hi,
                       1e-14 * (hi - lo));
}

// Recenter and renormalize in place; returns the weighted q-mass after
// normalization (1 up to rounding).
double project(Workspace& ws, Eigen::VectorXd& values) {
  interp_quadrature(ws, values, ws.uq);
  const double t = recenter_shift(ws, values, ws.uq);
  values.array() -= t;
  interp_quadrature(ws, values, ws.uq);
  const double mass = q_mass(ws, ws.uq, 0.0);
  if (!(mass > 0.0)) throw std::runtime_error("minimize_rq: field vanishes after recentering");
  const double norm = std::pow(mass, 1.0 / ws.q);
  values /= norm;
  ws.uq /= norm;
  return q_mass(ws, ws.uq, 0.0);
}

// Dirichlet energy sum_K A |grad u|^p and the per-element pieces the
// gradient assembly needs.  Returns N.
double assemble_numerator(Workspace& ws, const Eigen::VectorXd& values, bool with_gradient) {
  const Mesh& mesh = *ws.mesh;
  const double p = ws.p;
  const double eps2 = ws.eps * ws.eps;
  parallel_for_chunks(mesh.num_triangles(), ws.workers,
                      [&](std::size_t, std::size_t begin, std::size_t end) {
                        for (std::size_t e = begin; e < end; ++e) {
                          const int ei = static_cast<int>(e);
                          const auto tri = mesh.triangles.row(ei);
                          const Eigen::Vector2d g = mesh.grads[ei].col(0) * values[tri[0]] +
                                                    mesh.grads[ei].col(1) * values[tri[1]] +
                                                    mesh.grads[ei].col(2) * values[tri[2]];
                          const double g2 = g.squaredNorm();
                          ws.num_el[ei] = mesh.areas[ei] * std::pow(std::sqrt(g2), p);
                          if (with_gradient) {
                            const double scale =
                                p == 2.0 ? 1.0 : std::pow(g2 + eps2, 0.5 * p - 1.0);
                            ws.sigma_el[ei] = mesh.areas[ei] * scale;
                            ws.stiff_el.row(ei) = (mesh.areas[ei] * scale) * g.transpose();
                          }
                        }
                      });
  double total = 0.0;
  for (int e = 0; e < mesh.num_triangles(); ++e) total += ws.num_el[e];
  return total;
}

void assemble_moments(Workspace& ws, const Eigen::VectorXd& uq) {
  const Mesh& mesh = *ws.mesh;
  const TriangleRule& rule = triangle_rule();
  parallel_for_chunks(mesh.num_triangles(), ws.workers,
                      [&](std::size_t, std::size_t begin, std::size_t end) {
                        for (std::size_t e = begin; e < end; ++e) {
                          const int ei = static_cast<int>(e);
                          double m0 = 0.0, m1 = 0.0, m2 = 0.0;
                          for (int k = 0; k < TriangleRule::npoints; ++k) {
                            const std::size_t idx = e * TriangleRule::npoints + k;
                            const double s = ws.cache.weighted_measure[idx] *
                                             ws.powq.signed_pow(uq[idx]);
                            m0 += s * rule.bary[k][0];
                            m1 += s * rule.bary[k][1];
                            m2 += s * rule.bary[k][2];
                          }
                          ws.moment_el.row(ei) << m0, m1, m2;
                        }
                      });
}

// Gradient of the quotient at a projected iterate (mass ~ 1).
void assemble_gradient(Workspace& ws, double mu, double mass, Eigen::VectorXd& grad) {
  const Mesh& mesh = *ws.mesh;
  const double p = ws.p, q = ws.q;
  const double d_pow = std::pow(mass, p / q);
  const double d_chain = mu * std::pow(mass, p / q - 1.0);
  grad.resize(mesh.num_vertices());
  parallel_for_chunks(mesh.num_vertices(), ws.workers,
                      [&](std::size_t, std::size_t begin, std::size_t end) {
                        for (std::size_t v = begin; v < end; ++v) {
                          double stiff = 0.0, moment = 0.0;
                          for (const auto& [e, loc] : mesh.vertex_elements[v]) {
                            stiff += ws.stiff_el.row(e).dot(mesh.grads[e].col(loc));
                            moment += ws.moment_el(e, loc);
                          }
                          grad[v] = p * (stiff - d_chain * moment) / d_pow;
                        }
                      });
}

struct RestartOutcome {
  Eigen::VectorXd values;
  double mu = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

Eigen::VectorXd initial_field(const Mesh& mesh, int restart, std::uint64_t seed) {
  const int nv = mesh.num_vertices();
  Eigen::VectorXd u(nv);
  if (restart == 0) {
    for (int v = 0; v < nv; ++v) u[v] = mesh.vertices(v, 1);
  } else if (restart == 1) {
    for (int v = 0; v < nv; ++v) u[v] = mesh.vertices(v, 0);
  } else {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(restart));
    auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    for (int v = 0; v < nv; ++v) {
      const double u1 = uniform(), u2 = uniform();
      u[v] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  return u;
}

RestartOutcome run_restart(Workspace& ws, const SolverConfig& config, int restart) {
  RestartOutcome out;
  Eigen::VectorXd u = initial_field(*ws.mesh, restart, config.seed);
  double mass = project(ws, u);
  double mu = assemble_numerator(ws, u, /*with_gradient=*/true) / std::pow(mass, ws.p / ws.q);
  if (config.trace) out.trace.push_back(mu);

  Eigen::VectorXd grad, dir;
  double eta = config.eta0;
  int stagnant = 0;

  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    assemble_moments(ws, ws.uq);
    assemble_gradient(ws, mu, mass, grad);
    if (!(grad.squaredNorm() > 0.0)) {
      out.converged = true;
      out.residual = 0.0;
      break;
    }
    if (!preconditioned_direction(ws, mu, grad, dir)) dir = grad;
    const double slope = grad.dot(dir);

    // Backtracking on the projected trial point; the preconditioned step
    // is Newton-like, so retry from unit length each iteration.
    eta = std::min(config.eta0, eta * 4.0);
    bool accepted = false;
    double mu_next = mu, mass_next = mass;
    for (int bt = 0; bt < 80; ++bt) {
      Eigen::VectorXd candidate = u - eta * dir;
      double cand_mass;
      try {
        cand_mass = project(ws, candidate);
      } catch (const std::runtime_error&) {
        eta *= config.backtrack;
        continue;
      }
      const double cand_mu =
          assemble_numerator(ws, candidate, /*with_gradient=*/true) /
          std::pow(cand_mass, ws.p / ws.q);
      if (cand_mu <= mu - config.armijo * eta * slope) {
        u = candidate;
        mu_next = cand_mu;
        mass_next = cand_mass;
        accepted = true;
        break;
      }
      eta *= config.backtrack;
    }
    if (!accepted) {
      // No admissible decrease left; stationary only if progress was ever made.
      out.converged = iter > 0;
      out.residual = 0.0;
      break;
    }

    const double rel = (mu - mu_next) / std::max(mu, 1e-300);
    out.residual = rel;
    mu = mu_next;
    mass = mass_next;
    if (config.trace) out.trace.push_back(mu);
    stagnant = rel < config.rel_tol ? stagnant + 1 : 0;
    if (stagnant >= config.patience) {
      out.converged = true;
      ++iter;
      break;
    }
  }

  out.values = u;
  out.mu = mu;
  out.iterations = iter;
  return out;
}

}  // namespace

double recenter_root(const std::function<double(double)>& h, double lo, double hi,
                     double abs_tol) {
  if (!(hi >= lo)) throw std::invalid_argument("recenter_root: invalid bracket");
  double flo = h(lo), fhi = h(hi);
  if (!(flo >= 0.0 && fhi <= 0.0))
    throw std::runtime_error("recenter_root: bracket does not straddle the root");
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, FemFunction> recenter(const FemFunction& u, const WeightSpec& w, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("recenter: q > 1 violated");
  SolverConfig config;
  Workspace ws = make_workspace(*u.mesh, w, 2.0, q, config);
  Eigen::VectorXd uq;
  interp_quadrature(ws, u.values, uq);
  const double lo = u.values.minCoeff(), hi = u.values.maxCoeff();
  FemFunction shifted{u.mesh, u.values};
  if (hi == lo) {
    shifted.values.setZero();
    return {lo, shifted};
  }
  const double t = recenter_root([&](double s) { return signed_moment(ws, uq, s); }, lo, hi,
                                 1e-14 * (hi - lo));
  shifted.values.array() -= t;
  return {t, shifted};
}

double rayleigh_quotient(const FemFunction& u, double p, double q, const WeightSpec& w) {
  if (u.values.maxCoeff() == u.values.minCoeff())
    throw std::invalid_argument("rayleigh_quotient: quotient undefined for constant fields");
  const auto [t, shifted] = recenter(u, w, q);
  const double denom = fem_weighted_q_norm(shifted, w, q);
  return std::pow(grad_p_norm(u, p), p) / std::pow(denom, p);
}

EigenResult minimize_rq(const Mesh& mesh, const ProblemParams& params, const WeightSpec& w,
                        const SolverConfig& config) {
  if (mesh.num_vertices() < 3)
    throw std::invalid_argument("minimize_rq: mesh has fewer than 2 interior degrees of freedom");
  if (!(params.q >= params.p)) throw std::invalid_argument("minimize_rq: requires p <= q");

  Workspace ws = make_workspace(mesh, w, params.p, params.q, config);

  // Ties within 1e-12 keep the earlier restart.
  RestartOutcome best;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    RestartOutcome outcome = run_restart(ws, config, r);
    if (!have_best || outcome.mu < best.mu * (1.0 - 1e-12)) {
      best = std::move(outcome);
      have_best = true;
    }
  }

  EigenResult result;
  result.eigenfunction = FemFunction{&mesh, best.values};
  result.mu_h = rayleigh_quotient(result.eigenfunction, params.p, params.q, w);
  result.iterations = best.iterations;
  result.restarts_used = config.restarts;
  result.residual = best.residual;
  result.M = mesh.M;
  result.beta = mesh.beta;
  result.converged = best.converged;
  result.trace_quotients = std::move(best.trace);
  return result;
}

double linear_oracle_solve(const Mesh& mesh, const WeightSpec& w) {
  const int nv = mesh.num_vertices();
  const TriangleRule& rule = triangle_rule();

  std::vector<Eigen::Triplet<double>> k_trip, m_trip;
  k_trip.reserve(mesh.num_triangles() * 9);
  m_trip.reserve(mesh.num_triangles() * 9);
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto tri = mesh.triangles.row(e);
    const double y0 = mesh.vertices(tri[0], 1), y1 = mesh.vertices(tri[1], 1),
                 y2 = mesh.vertices(tri[2], 1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double kij =
            mesh.areas[e] * mesh.grads[e].col(i).dot(mesh.grads[e].col(j));
        double mij = 0.0;
        for (int k = 0; k < TriangleRule::npoints; ++k) {
          const auto& l = rule.bary[k];
          const double height = l[0] * y0 + l[1] * y1 + l[2] * y2;
          mij += rule.weights[k] * l[i] * l[j] * weight_value_at_height(w, height);
        }
        mij *= mesh.areas[e];
        k_trip.emplace_back(tri[i], tri[j], kij);
        m_trip.emplace_back(tri[i], tri[j], mij);
      }
  }
  Eigen::SparseMatrix<double> K(nv, nv), M(nv, nv);
  K.setFromTriplets(k_trip.begin(), k_trip.end());
  M.setFromTriplets(m_trip.begin(), m_trip.end());

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(nv);
  const Eigen::VectorXd m_ones = M * ones;
  const double m_total = ones.dot(m_ones);
  if (!(m_total > 0.0))
    throw std::runtime_error("linear_oracle_solve: singular weighted mass");

  auto deflate = [&](Eigen::VectorXd& v) { v -= (m_ones.dot(v) / m_total) * ones; };
  auto m_normalize = [&](Eigen::VectorXd& v) {
    const double s = std::sqrt(v.dot(M * v));
    if (!(s > 0.0)) throw std::runtime_error("linear_oracle_solve: deflated start vanished");
    v /= s;
  };

  Eigen::SparseMatrix<double> A = K + M;  // unit spectral shift keeps A positive definite
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("linear_oracle_solve: factorization failed");

  Eigen::VectorXd v = mesh.vertices.col(1);
  deflate(v);
  m_normalize(v);
  double lambda = v.dot(K * v);
  int steady = 0;
  for (int it = 0; it < 2000; ++it) {
    Eigen::VectorXd x = solver.solve(M * v);
    deflate(x);
    m_normalize(x);
    const double next = x.dot(K * x);
    steady = std::abs(next - lambda) <= 1e-13 * std::max(1.0, std::abs(next)) ? steady + 1 : 0;
    lambda = next;
    v = x;
    if (steady >= 3) break;
  }
  return lambda;
}

}  // namespace cuspeig
