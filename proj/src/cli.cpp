#include "cuspeig/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cuspeig/bounds.hpp"
#include "cuspeig/eigensolver.hpp"
#include "cuspeig/mesh.hpp"
#include "cuspeig/verify.hpp"

namespace cuspeig {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

std::string join_list(const std::vector<double>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text += ",";
    text += fmt(values[i]);
  }
  return text;
}

void apply_option(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "command") config.command = value;
  else if (key == "n") config.n = std::stoi(value);
  else if (key == "p") config.p = std::stod(value);
  else if (key == "q") config.q = std::stod(value);
  else if (key == "gamma") config.gamma = std::stod(value);
  else if (key == "sigma") config.sigma = std::stod(value);
  else if (key == "weight") config.weight = value;
  else if (key == "M") config.M = std::stoi(value);
  else if (key == "beta") config.beta = std::stod(value);
  else if (key == "seed") config.seed = std::stoull(value);
  else if (key == "workers") config.workers = std::stoi(value);
  else if (key == "max_iterations") config.max_iterations = std::stoi(value);
  else if (key == "restarts") config.restarts = std::stoi(value);
  else if (key == "a") config.a = std::stod(value);
  else if (key == "gammas") config.gammas = parse_list(value);
  else if (key == "ps") config.ps = parse_list(value);
  else if (key == "qs") config.qs = parse_list(value);
  else if (key == "with_solve") config.with_solve = value == "true" || value == "1";
  else if (key == "out") config.out = value;
  else if (key == "dump_mesh") config.dump_mesh = value;
  else if (key == "dump_eigenfunction") config.dump_eigenfunction = value;
  else throw std::invalid_argument("unknown option '" + key + "'");
}

std::string flag_to_key(const std::string& flag) {
  std::string key = flag.substr(2);
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    apply_option(config, key, value);
  }
}

ProblemParams resolve_params(const RunConfig& config, bool solver_mode = false) {
  if (config.gamma && config.sigma)
    throw std::invalid_argument("give either --gamma or --sigma, not both");
  ProblemParams params;
  params.n = config.n;
  params.p = config.p;
  params.q = config.q;
  params.gamma = config.sigma ? gamma_from_sigma(config.n, *config.sigma)
                              : config.gamma.value_or(3.0);
  if (solver_mode)
    validate_for_solver(params);
  else
    validate(params);
  return params;
}

WeightSpec resolve_weight(const RunConfig& config, const ProblemParams& params) {
  const std::string& spec = config.weight;
  if (spec == "unit") return unit_weight();
  if (spec == "optimal") return optimal_weight(params);
  if (spec.rfind("family:", 0) == 0) return family_weight(params, std::stod(spec.substr(7)));
  if (spec.rfind("power:", 0) == 0) {
    const auto values = parse_list(spec.substr(6));
    if (values.size() != 2)
      throw std::invalid_argument("weight power:c,e expects two values");
    return power_weight(values[0], values[1]);
  }
  throw std::invalid_argument("unknown weight '" + spec + "' (unit|optimal|family:a|power:c,e)");
}

double resolve_mesh_beta(const RunConfig& config) {
  return config.beta ? *config.beta : default_mesh_grading();
}

struct JsonObject {
  std::ostringstream os;
  bool first = true;
  void sep() {
    if (!first) os << ",";
    first = false;
  }
  void field(const std::string& key, double v) { sep(); os << "\"" << key << "\":" << fmt(v); }
  void field(const std::string& key, int v) { sep(); os << "\"" << key << "\":" << v; }
  void field(const std::string& key, std::uint64_t v) { sep(); os << "\"" << key << "\":" << v; }
  void field(const std::string& key, bool v) {
    sep();
    os << "\"" << key << "\":" << (v ? "true" : "false");
  }
  void field(const std::string& key, const std::string& v) {
    sep();
    os << "\"" << key << "\":\"" << v << "\"";
  }
  void field_list(const std::string& key, const std::vector<std::string>& items) {
    sep();
    os << "\"" << key << "\":[";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) os << ",";
      os << "\"" << items[i] << "\"";
    }
    os << "]";
  }
  std::string str() const { return "{" + os.str() + "}\n"; }
};

class OutputTarget {
 public:
  OutputTarget(const RunConfig& config, std::ostream& fallback) : fallback_(fallback) {
    if (!config.out.empty()) {
      file_.open(config.out);
      if (!file_) throw std::invalid_argument("cannot open output file '" + config.out + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemParams params = resolve_params(config);
  const BoundReport report = make_bound_report(params);

  JsonObject json;
  json.field("command", std::string("bounds"));
  json.field("n", params.n);
  json.field("p", params.p);
  json.field("q", params.q);
  json.field("gamma", params.gamma);
  json.field("sigma", report.derived.sigma);
  json.field("a_max", report.derived.a_max);
  json.field("delta", report.derived.delta);
  json.field("p_star", report.derived.p_star);
  json.field("K_p", report.K_p);
  json.field("B_convex", report.B_convex);
  json.field("B_weighted", report.B_weighted);
  json.field("mu_lower_composed", report.mu_lower_composed);
  json.field("mu_lower_canonical", report.mu_lower_canonical);
  json.field("mu_lower_paper_verbatim", report.mu_lower_paper_verbatim);
  json.field("verbatim_to_canonical", report.verbatim_to_canonical);
  if (report.pi_p) json.field("pi_p", *report.pi_p);

  if (params.p < params.q) {
    const WeightSpec w = resolve_weight(config, params);
    json.field("weight", describe(w));
    try {
      const double rn = ratio_norm(w, params);
      const MuBounds general = mu_lower_general_weight(params, rn);
      json.field("ratio_norm", rn);
      json.field("mu_lower_general_canonical", general.canonical);
      json.field("mu_lower_general_verbatim", general.paper_verbatim);
    } catch (const DivergentNormError& e) {
      json.field("general_weight_error",
                 std::string("weight not admissible for chosen q: ") + e.what());
    }
  }
  json.field_list("notes", report.notes);
  out << json.str();
  (void)err;
  return kExitOk;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemParams params = resolve_params(config, /*solver_mode=*/true);
  if (params.n != 2) throw std::invalid_argument("FEM path supports n=2 only");
  const CuspDomain domain = make_cusp_domain(params);
  const double beta = resolve_mesh_beta(config);
  const Mesh mesh = build_mesh(domain, config.M, beta);
  const WeightSpec w = resolve_weight(config, params);

  SolverConfig solver;
  solver.seed = config.seed;
  solver.workers = config.workers;
  solver.max_iterations = config.max_iterations;
  solver.restarts = config.restarts;
  const EigenResult result = minimize_rq(mesh, params, w, solver);

  if (!config.dump_mesh.empty()) {
    std::ofstream f(config.dump_mesh);
    if (!f) throw std::invalid_argument("cannot open '" + config.dump_mesh + "'");
    write_mesh(mesh, f);
  }
  if (!config.dump_eigenfunction.empty()) {
    std::ofstream f(config.dump_eigenfunction);
    if (!f) throw std::invalid_argument("cannot open '" + config.dump_eigenfunction + "'");
    write_eigenfunction(result.eigenfunction, f);
  }

  JsonObject json;
  json.field("command", std::string("solve"));
  json.field("n", params.n);
  json.field("p", params.p);
  json.field("q", params.q);
  json.field("gamma", params.gamma);
  json.field("sigma", domain.sigma);
  json.field("weight", describe(w));
  json.field("M", config.M);
  json.field("beta", beta);
  json.field("seed", config.seed);
  json.field("workers", config.workers);
  json.field("mu_h", result.mu_h);
  json.field("iterations", result.iterations);
  json.field("restarts_used", result.restarts_used);
  json.field("residual", result.residual);
  json.field("converged", result.converged);
  out << json.str();

  if (!result.converged) {
    err << "solve: not converged within the iteration budget\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemParams params = resolve_params(config);
  const DerivedParams derived = derive_params(params);
  const double a = config.a.value_or(derived.a_max);
  make_cusp_map(params, a);  // validates 0 < a <= a_max

  QuadratureScheme scheme = QuadratureScheme::fiber_gauss(48, 24, default_grading(derived.sigma));
  scheme.workers = config.workers;

  std::vector<CheckRecord> records = run_default_suite(params, a, scheme, config.seed);

  if (config.with_solve) {
    if (params.n != 2) throw std::invalid_argument("FEM path supports n=2 only");
    const CuspDomain domain = make_cusp_domain(params);
    const Mesh mesh = build_mesh(domain, config.M, resolve_mesh_beta(config));
    const WeightSpec w = resolve_weight(config, params);
    SolverConfig solver;
    solver.seed = config.seed;
    solver.workers = config.workers;
    solver.max_iterations = config.max_iterations;
    solver.restarts = config.restarts;
    const EigenResult eigen = minimize_rq(mesh, params, w, solver);
    const BoundReport report = make_bound_report(params);
    for (auto& rec : compare_bound(params, w, eigen, report)) records.push_back(std::move(rec));
  }

  write_check_csv(records, out);
  const bool hard_failure = std::any_of(records.begin(), records.end(), [](const CheckRecord& r) {
    return !r.pass && !r.inconclusive;
  });
  if (hard_failure) {
    err << "verify: at least one check failed\n";
    return kExitVerifyFailure;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const double gamma_default = config.sigma ? gamma_from_sigma(config.n, *config.sigma)
                                            : config.gamma.value_or(3.0);
  const std::vector<double> gammas = config.gammas.value_or(std::vector<double>{gamma_default});
  const std::vector<double> ps = config.ps.value_or(std::vector<double>{config.p});
  const std::vector<double> qs = config.qs.value_or(std::vector<double>{config.q});
  if (gammas.empty() || ps.empty() || qs.empty())
    throw std::invalid_argument("sweep: empty grid");

  out << "n,p,q,gamma,a_max,K_p,B_convex,B_weighted,mu_lower_canonical,mu_lower_paper,mu_h,error\n";
  int valid_rows = 0;
  for (double p : ps)
    for (double q : qs)
      for (double gamma : gammas) {
        out << config.n << "," << fmt(p) << "," << fmt(q) << "," << fmt(gamma) << ",";
        try {
          const ProblemParams params{config.n, p, q, gamma};
          const BoundReport report = make_bound_report(params);
          std::string mu_h_text;
          if (config.with_solve) {
            if (params.n != 2) throw std::invalid_argument("FEM path supports n=2 only");
            const CuspDomain domain = make_cusp_domain(params);
            const Mesh mesh = build_mesh(domain, config.M, resolve_mesh_beta(config));
            SolverConfig solver;
            solver.seed = config.seed;
            solver.workers = config.workers;
            solver.max_iterations = config.max_iterations;
            solver.restarts = config.restarts;
            const EigenResult eigen =
                minimize_rq(mesh, params, resolve_weight(config, params), solver);
            mu_h_text = fmt(eigen.mu_h);
          }
          out << fmt(report.derived.a_max) << "," << fmt(report.K_p) << ","
              << fmt(report.B_convex) << "," << fmt(report.B_weighted) << ","
              << fmt(report.mu_lower_canonical) << "," << fmt(report.mu_lower_paper_verbatim)
              << "," << mu_h_text << ",\n";
          ++valid_rows;
        } catch (const std::exception& e) {
          std::string msg = e.what();
          std::replace(msg.begin(), msg.end(), ',', ';');
          out << ",,,,,,," << msg << "\n";
        }
      }
  if (valid_rows == 0) {
    err << "sweep: no valid rows\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  std::size_t start = 0;
  if (!args.empty() && args[0].rfind("--", 0) != 0) {
    config.command = args[0];
    start = 1;
  }

  // Command line wins over the config file: gather flags, load the file
  // first, then re-apply the flags.
  std::vector<std::pair<std::string, std::string>> options;
  std::string config_path;
  for (std::size_t i = start; i < args.size(); ++i) {
    const std::string& flag = args[i];
    if (flag.rfind("--", 0) != 0) throw std::invalid_argument("expected flag, got '" + flag + "'");
    const std::string key = flag_to_key(flag);
    if (key == "with_solve") {
      options.emplace_back(key, "true");
      continue;
    }
    if (i + 1 >= args.size()) throw std::invalid_argument("flag '" + flag + "' expects a value");
    const std::string value = args[++i];
    if (key == "config")
      config_path = value;
    else
      options.emplace_back(key, value);
  }
  if (!config_path.empty()) load_config_file(config, config_path);
  for (const auto& [key, value] : options) apply_option(config, key, value);

  if (config.command.empty())
    throw std::invalid_argument("usage: cuspeig <bounds|solve|verify|sweep> [--flags]");
  return config;
}

void write_config(const RunConfig& config, std::ostream& os) {
  os << "# cuspeig run configuration\n";
  os << "command=" << config.command << "\n";
  os << "n=" << config.n << "\n";
  os << "p=" << fmt(config.p) << "\n";
  os << "q=" << fmt(config.q) << "\n";
  if (config.gamma) os << "gamma=" << fmt(*config.gamma) << "\n";
  if (config.sigma) os << "sigma=" << fmt(*config.sigma) << "\n";
  os << "weight=" << config.weight << "\n";
  os << "M=" << config.M << "\n";
  if (config.beta) os << "beta=" << fmt(*config.beta) << "\n";
  os << "seed=" << config.seed << "\n";
  os << "workers=" << config.workers << "\n";
  os << "max_iterations=" << config.max_iterations << "\n";
  os << "restarts=" << config.restarts << "\n";
  if (config.a) os << "a=" << fmt(*config.a) << "\n";
  if (config.gammas) os << "gammas=" << join_list(*config.gammas) << "\n";
  if (config.ps) os << "ps=" << join_list(*config.ps) << "\n";
  if (config.qs) os << "qs=" << join_list(*config.qs) << "\n";
  os << "with_solve=" << (config.with_solve ? "true" : "false") << "\n";
  if (!config.out.empty()) os << "out=" << config.out << "\n";
  if (!config.dump_mesh.empty()) os << "dump_mesh=" << config.dump_mesh << "\n";
  if (!config.dump_eigenfunction.empty())
    os << "dump_eigenfunction=" << config.dump_eigenfunction << "\n";
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    OutputTarget target(config, out);
    if (config.command == "bounds") return cmd_bounds(config, target.stream(), err);
    if (config.command == "solve") return cmd_solve(config, target.stream(), err);
    if (config.command == "verify") return cmd_verify(config, target.stream(), err);
    if (config.command == "sweep") return cmd_sweep(config, target.stream(), err);
    err << "unknown command '" << config.command << "'\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return config.command == "verify" ? kExitVerifyFailure : kExitValidation;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_command(parse_args(args), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace cuspeig
