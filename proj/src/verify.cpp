#include "cuspeig/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace cuspeig {

namespace {

std::string param_tag(const ProblemParams& params) {
  std::ostringstream os;
  os << "n=" << params.n << ";p=" << params.p << ";q=" << params.q << ";gamma=" << params.gamma;
  return os.str();
}

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53) - 1.0;
}

}  // namespace

std::vector<DifferentiableField> random_quadratic_fields(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DifferentiableField> fields;
  fields.reserve(count);
  for (int f = 0; f < count; ++f) {
    const double c0 = uniform_pm1(rng);
    Eigen::VectorXd lin(n);
    Eigen::MatrixXd quad(n, n);
    for (int i = 0; i < n; ++i) lin[i] = uniform_pm1(rng);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) quad(i, j) = uniform_pm1(rng);
    DifferentiableField field;
    field.name = "quadratic_" + std::to_string(f);
    field.value = [c0, lin, quad, n](const Eigen::VectorXd& x) {
      double v = c0 + lin.dot(x);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v += quad(i, j) * x[i] * x[j];
      return v;
    };
    field.gradient = [lin, quad, n](const Eigen::VectorXd& x) {
      Eigen::VectorXd g = lin;
      for (int k = 0; k < n; ++k) {
        g[k] += 2.0 * quad(k, k) * x[k];
        for (int i = 0; i < k; ++i) g[k] += quad(i, k) * x[i];
        for (int j = k + 1; j < n; ++j) g[k] += quad(k, j) * x[j];
      }
      return g;
    };
    fields.push_back(std::move(field));
  }
  return fields;
}

CheckRecord check_composition_inequality(const ProblemParams& params, double a,
                                         const DifferentiableField& u,
                                         const QuadratureScheme& scheme) {
  const CuspMap map = make_cusp_map(params, a);
  const CuspDomain cusp = make_cusp_domain(params);
  const PyramidDomain pyramid{params.n};
  const double p = params.p;

  const ScalarField pullback_grad_p = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = phi(map, y);
    const Eigen::VectorXd g = jacobian_matrix(map, y).transpose() * u.gradient(x);
    return std::pow(g.norm(), p);
  };
  const ScalarField grad_p = [&](const Eigen::VectorXd& x) {
    return std::pow(u.gradient(x).norm(), p);
  };

  CheckRecord rec;
  rec.name = "composition_inequality";
  rec.params = param_tag(params) + ";a=" + std::to_string(a) + ";field=" + u.name;
  rec.lhs = std::pow(integrate(pullback_grad_p, pyramid, scheme), 1.0 / p);
  rec.rhs = distortion_bound(params, a) * std::pow(integrate(grad_p, cusp, scheme), 1.0 / p);
  rec.tolerance = 1e-6;
  rec.margin = rec.rhs - rec.lhs;
  rec.pass = rec.lhs <= rec.rhs * (1.0 + rec.tolerance);
  return rec;
}

CheckRecord check_isometry(const ProblemParams& params, double a, const ScalarField& v,
                           const std::string& field_name, double q,
                           const QuadratureScheme& scheme) {
  const CuspMap map = make_cusp_map(params, a);
  const CuspDomain cusp = make_cusp_domain(params);
  const PyramidDomain pyramid{params.n};
  const WeightSpec w = family_weight(params, a);

  const ScalarField composed = [&](const Eigen::VectorXd& x) { return v(phi_inverse(map, x)); };

  CheckRecord rec;
  rec.name = "isometry";
  rec.params =
      param_tag(params) + ";a=" + std::to_string(a) + ";q=" + std::to_string(q) + ";field=" +
      field_name;
  rec.lhs = weighted_norm(composed, w, q, cusp, scheme);
  rec.rhs = weighted_norm(v, unit_weight(), q, pyramid, scheme);
  rec.tolerance = 1e-6;
  rec.margin = std::abs(rec.lhs - rec.rhs);
  rec.pass = rec.margin <= rec.tolerance * std::max(rec.rhs, 1e-30);
  return rec;
}

CheckRecord check_weight_ordering(const ProblemParams& params, double a1, double a2,
                                  const std::vector<double>& sample_heights) {
  if (!(a1 > 0.0 && a1 < a2)) throw std::invalid_argument("check_weight_ordering: need 0 < a1 < a2");
  const WeightSpec w1 = family_weight(params, a1);
  const WeightSpec w2 = family_weight(params, a2);

  // Printed direction w_{a2} <= (a1/a2) w_{a1} is x^{n(1/a2-1/a1)} <= 1;
  // the exponent is negative, so it holds only on {x_n >= 1}.
  const double expo_diff = params.n * (1.0 / a2 - 1.0 / a1);

  CheckRecord rec;
  rec.name = "weight_ordering";
  {
    std::ostringstream os;
    os << param_tag(params) << ";a1=" << a1 << ";a2=" << a2
       << ";printed_direction_exponent=" << expo_diff << ";printed_direction_region=x_n>=1";
    rec.params = os.str();
  }
  double min_slack = std::numeric_limits<double>::infinity();
  bool strict = true;
  for (double t : sample_heights) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("check_weight_ordering: heights in (0,1)");
    const double lhs = weight_value_at_height(w2, t);
    const double bound = (a1 / a2) * weight_value_at_height(w1, t);
    const double slack = lhs - bound;
    min_slack = std::min(min_slack, slack);
    strict = strict && slack > 0.0;
  }
  rec.lhs = min_slack;
  rec.rhs = 0.0;
  rec.margin = min_slack;
  rec.tolerance = 0.0;
  rec.pass = strict;
  return rec;
}

CheckRecord check_weight_space_inclusion(const ProblemParams& params, double a1, double a2,
                                         double q, int nfields, std::uint64_t seed,
                                         const QuadratureScheme& scheme) {
  if (!(a1 > 0.0 && a1 < a2)) throw std::invalid_argument("check_weight_space_inclusion: need 0 < a1 < a2");
  const WeightSpec w1 = family_weight(params, a1);
  const WeightSpec w2 = family_weight(params, a2);
  const CuspDomain cusp = make_cusp_domain(params);
  const double constant = std::pow(a2 / a1, 1.0 / q);

  double worst_ratio = 0.0;
  const auto fields = random_quadratic_fields(params.n, nfields, seed);
  for (const auto& field : fields) {
    const double lhs = weighted_norm(field.value, w1, q, cusp, scheme);
    const double rhs = constant * weighted_norm(field.value, w2, q, cusp, scheme);
    if (rhs > 0.0) worst_ratio = std::max(worst_ratio, lhs / rhs);
  }

  CheckRecord rec;
  rec.name = "weight_space_inclusion";
  {
    std::ostringstream os;
    os << param_tag(params) << ";a1=" << a1 << ";a2=" << a2 << ";q=" << q
       << ";constant=" << constant << ";fields=" << nfields;
    rec.params = os.str();
  }
  rec.lhs = worst_ratio;
  rec.rhs = 1.0;
  rec.tolerance = 1e-6;
  rec.margin = rec.rhs - rec.lhs;
  rec.pass = worst_ratio <= 1.0 + rec.tolerance;
  return rec;
}

std::vector<CheckRecord> compare_bound(const ProblemParams& params, const WeightSpec& w,
                                       const EigenResult& eigen, const BoundReport& bounds,
                                       double tol_budget) {
  std::vector<CheckRecord> out;
  const auto make = [&](const std::string& which, double bound) {
    CheckRecord rec;
    rec.name = "bound_ordering_" + which;
    rec.params = param_tag(params) + ";weight=" + describe(w) + ";M=" + std::to_string(eigen.M);
    rec.tolerance = tol_budget;
    rec.lhs = bound * (1.0 - tol_budget);
    rec.rhs = eigen.mu_h;
    rec.margin = rec.rhs - rec.lhs;
    if (!eigen.converged || !(bound > 0.0)) {
      rec.pass = false;
      rec.inconclusive = true;
    } else {
      rec.pass = rec.margin >= 0.0;
    }
    return rec;
  };
  out.push_back(make("canonical", bounds.mu_lower_canonical));
  out.push_back(make("verbatim", bounds.mu_lower_paper_verbatim));
  return out;
}

std::vector<CheckRecord> run_default_suite(const ProblemParams& params, double a,
                                           const QuadratureScheme& scheme, std::uint64_t seed) {
  std::vector<CheckRecord> records;
  const int n = params.n;

  std::vector<DifferentiableField> fields;
  fields.push_back({"const_1", [](const Eigen::VectorXd&) { return 1.0; },
                    [n](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(n).eval(); }});
  fields.push_back({"height", [n](const Eigen::VectorXd& x) { return x[n - 1]; },
                    [n](const Eigen::VectorXd&) {
                      Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
                      g[n - 1] = 1.0;
                      return g;
                    }});
  fields.push_back({"x1", [](const Eigen::VectorXd& x) { return x[0]; },
                    [n](const Eigen::VectorXd&) {
                      Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
                      g[0] = 1.0;
                      return g;
                    }});
  fields.push_back({"height_sq", [n](const Eigen::VectorXd& x) { return x[n - 1] * x[n - 1]; },
                    [n](const Eigen::VectorXd& x) {
                      Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
                      g[n - 1] = 2.0 * x[n - 1];
                      return g;
                    }});
  for (auto& f : random_quadratic_fields(n, 8, seed)) fields.push_back(std::move(f));

  for (const auto& field : fields)
    records.push_back(check_composition_inequality(params, a, field, scheme));

  for (double q : {1.5, 2.0}) {
    for (const auto& field : fields) {
      if (field.name == "const_1" || field.name == "height" || field.name == "x1" ||
          field.name == "height_sq")
        records.push_back(check_isometry(params, a, field.value, field.name, q, scheme));
    }
  }

  const std::vector<double> heights = {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99};
  records.push_back(check_weight_ordering(params, a / 2.0, a, heights));
  records.push_back(
      check_weight_space_inclusion(params, a / 2.0, a, params.q, 20, seed + 1, scheme));
  return records;
}

void write_check_csv(const std::vector<CheckRecord>& records, std::ostream& os) {
  os << "check,params,lhs,rhs,margin,tolerance,pass\n";
  char buf[256];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", rec.lhs, rec.rhs, rec.margin,
                  rec.tolerance);
    os << rec.name << "," << rec.params << "," << buf << ","
       << (rec.inconclusive ? "inconclusive" : rec.pass ? "true" : "false") << "\n";
  }
}

}  // namespace cuspeig
