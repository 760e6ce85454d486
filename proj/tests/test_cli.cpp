#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cuspeig/cli.hpp"

using namespace cuspeig;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double extract(const std::string& json, const std::string& key) {
  const auto pos = json.find("\"" + key + "\":");
  REQUIRE(pos != std::string::npos);
  return std::stod(json.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("bounds command emits the p=q report") {
  const CliResult r = run({"bounds", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3"});
  CHECK(r.code == kExitOk);
  CHECK(extract(r.out, "mu_lower_canonical") == doctest::Approx(0.90688159381203615).epsilon(1e-12));
  CHECK(extract(r.out, "mu_lower_paper_verbatim") ==
        doctest::Approx(0.17050755102805049).epsilon(1e-12));
  CHECK(extract(r.out, "pi_p") == doctest::Approx(3.0469919990461722).epsilon(1e-12));
  CHECK(r.out.find("\"notes\":[") != std::string::npos);
}

TEST_CASE("bounds command rejects invalid exponents with exit 2") {
  const CliResult r = run({"bounds", "--n", "2", "--p", "1.5", "--q", "7", "--gamma", "3"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("p* = 6") != std::string::npos);
}

TEST_CASE("bounds via sigma collapses to the no-cusp constants") {
  const CliResult direct = run({"bounds", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "2"});
  const CliResult via_sigma =
      run({"bounds", "--n", "2", "--p", "1.5", "--q", "1.5", "--sigma", "1"});
  CHECK(direct.code == kExitOk);
  CHECK(via_sigma.code == kExitOk);
  CHECK(extract(direct.out, "sigma") == 1.0);
  CHECK(extract(direct.out, "mu_lower_canonical") ==
        extract(via_sigma.out, "mu_lower_canonical"));

  const CliResult both = run({"bounds", "--gamma", "3", "--sigma", "2"});
  CHECK(both.code == kExitValidation);
}

TEST_CASE("bounds carries the general-weight section when p < q") {
  const CliResult optimal =
      run({"bounds", "--n", "2", "--p", "1.5", "--q", "2", "--gamma", "3", "--weight", "optimal"});
  CHECK(optimal.code == kExitOk);
  CHECK(extract(optimal.out, "ratio_norm") == doctest::Approx(0.84089641525371454).epsilon(1e-12));
  CHECK(optimal.out.find("mu_lower_general_canonical") != std::string::npos);

  const CliResult unit =
      run({"bounds", "--n", "2", "--p", "1.5", "--q", "2", "--gamma", "3", "--weight", "unit"});
  CHECK(unit.code == kExitOk);
  CHECK(unit.out.find("general_weight_error") != std::string::npos);
  CHECK(unit.out.find("-7") != std::string::npos);
}

TEST_CASE("solve command hits the pi^2 window and is reproducible") {
  const std::vector<std::string> args = {"solve", "--n", "2",      "--p",    "2",  "--q",
                                         "2",     "--sigma", "1",  "--weight", "unit", "--M",
                                         "24",    "--seed",  "1"};
  const CliResult r1 = run(args);
  CHECK(r1.code == kExitOk);
  const double mu = extract(r1.out, "mu_h");
  CHECK(mu >= 9.8696);
  CHECK(mu <= 10.07);

  const CliResult r2 = run(args);
  CHECK(r2.out == r1.out);

  std::vector<std::string> four = args;
  four.push_back("--workers");
  four.push_back("4");
  const CliResult r4 = run(four);
  CHECK(extract(r4.out, "mu_h") == mu);
}

TEST_CASE("solve rejects n != 2") {
  const CliResult r =
      run({"solve", "--n", "3", "--p", "1.5", "--q", "1.5", "--gamma", "4", "--M", "8"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("FEM path supports n=2 only") != std::string::npos);
}

TEST_CASE("solve flags non-convergence with exit 3 and still serializes") {
  const CliResult r = run({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                           "--M", "8", "--max-iterations", "1"});
  CHECK(r.code == kExitNoConvergence);
  CHECK(r.out.find("\"converged\":false") != std::string::npos);
  CHECK(r.out.find("\"mu_h\":") != std::string::npos);
}

TEST_CASE("solve writes mesh and eigenfunction dumps") {
  const std::string mesh_path = "/tmp/cuspeig_test_mesh.txt";
  const std::string eig_path = "/tmp/cuspeig_test_eig.txt";
  const CliResult r = run({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                           "--M", "8", "--seed", "3", "--dump-mesh", mesh_path,
                           "--dump-eigenfunction", eig_path});
  CHECK(r.code == kExitOk);
  std::ifstream mesh_in(mesh_path);
  int nv = 0, nt = 0;
  REQUIRE((mesh_in >> nv >> nt));
  CHECK(nv > 0);
  CHECK(nt > 0);
  std::ifstream eig_in(eig_path);
  double x, y, value;
  int rows = 0;
  while (eig_in >> x >> y >> value) ++rows;
  CHECK(rows == nv);
  std::remove(mesh_path.c_str());
  std::remove(eig_path.c_str());
}

TEST_CASE("verify default suite passes and bad stretching is rejected") {
  const CliResult r = run({"verify", "--n", "2", "--p", "1.5", "--q", "2", "--gamma", "3"});
  CHECK(r.code == kExitOk);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "check,params,lhs,rhs,margin,tolerance,pass");
  int nrows = 0;
  while (std::getline(rows, line)) {
    CHECK(line.find(",true") != std::string::npos);
    ++nrows;
  }
  CHECK(nrows > 10);

  const CliResult bad = run({"verify", "--a", "0.5", "--gamma", "3", "--p", "1.5", "--q", "1.5"});
  CHECK(bad.code == kExitValidation);
}

TEST_CASE("isometry rows keep sub-tolerance margins") {
  const CliResult r = run({"verify", "--n", "2", "--p", "1.5", "--q", "2", "--gamma", "3"});
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  int isometry_rows = 0;
  while (std::getline(rows, line)) {
    if (line.rfind("isometry,", 0) != 0) continue;
    ++isometry_rows;
    // columns: check,params,lhs,rhs,margin,tolerance,pass
    std::istringstream fields(line);
    std::string field;
    for (int c = 0; c <= 4; ++c) std::getline(fields, field, ',');
    const double margin = std::stod(field);
    std::getline(fields, field, ',');
    CHECK(margin < 1e-6 * 10.0);  // margin is |lhs-rhs|, tolerance-scaled
  }
  CHECK(isometry_rows >= 8);
}

TEST_CASE("verify --with-solve appends passing bound-ordering records") {
  const CliResult r = run({"verify", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                           "--with-solve", "--M", "16", "--seed", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("bound_ordering_canonical") != std::string::npos);
  CHECK(r.out.find("bound_ordering_verbatim") != std::string::npos);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line))
    if (line.rfind("bound_ordering", 0) == 0) CHECK(line.find(",true") != std::string::npos);
}

TEST_CASE("sweep emits monotone bounds in grid order") {
  const CliResult r = run({"sweep", "--n", "2", "--p", "1.5", "--q", "1.5", "--gammas",
                           "2.5,3,4,6"});
  CHECK(r.code == kExitOk);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line.rfind("n,p,q,gamma,a_max,K_p,B_convex,B_weighted,mu_lower_canonical,"
                   "mu_lower_paper,mu_h,error", 0) == 0);
  double prev = std::numeric_limits<double>::infinity();
  int nrows = 0;
  while (std::getline(rows, line)) {
    std::istringstream fields(line);
    std::string field;
    for (int c = 0; c <= 8; ++c) std::getline(fields, field, ',');
    const double canonical = std::stod(field);
    CHECK(canonical < prev);
    prev = canonical;
    ++nrows;
  }
  CHECK(nrows == 4);
}

TEST_CASE("sweep records invalid rows and fails on empty grids") {
  const CliResult mixed =
      run({"sweep", "--n", "2", "--ps", "1.5,2.5", "--qs", "1.5,2.5"});
  CHECK(mixed.code == kExitOk);
  CHECK(mixed.out.find("violated") != std::string::npos);

  const CliResult empty = run({"sweep", "--n", "2", "--gammas", ""});
  CHECK(empty.code == kExitValidation);

  const CliResult all_bad = run({"sweep", "--n", "2", "--ps", "2.5", "--qs", "2.5"});
  CHECK(all_bad.code == kExitValidation);
}

TEST_CASE("sweep --with-solve keeps mu_h above the canonical bound") {
  const CliResult r = run({"sweep", "--n", "2", "--p", "1.5", "--q", "1.5", "--gammas", "2.5,3",
                           "--with-solve", "--M", "16", "--seed", "1"});
  CHECK(r.code == kExitOk);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    std::istringstream fields(line);
    std::string field;
    double canonical = 0.0, mu_h = 0.0;
    for (int c = 0; c <= 10; ++c) {
      std::getline(fields, field, ',');
      if (c == 8) canonical = std::stod(field);
      if (c == 10) mu_h = std::stod(field);
    }
    CHECK(mu_h >= canonical * 0.99);
  }
}

TEST_CASE("config file round trip reproduces identical runs") {
  const std::string path = "/tmp/cuspeig_test_config.cfg";
  RunConfig config = parse_args({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                                 "--M", "12", "--seed", "9"});
  {
    std::ofstream f(path);
    write_config(config, f);
  }
  const CliResult direct = run({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                                "--M", "12", "--seed", "9"});
  const CliResult loaded = run({"solve", "--config", path});
  CHECK(loaded.code == direct.code);
  CHECK(loaded.out == direct.out);

  // command-line flags override file values
  const CliResult overridden = run({"solve", "--config", path, "--seed", "10"});
  CHECK(overridden.out.find("\"seed\":10") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("config files accept comments and blank lines") {
  const std::string path = "/tmp/cuspeig_test_config2.cfg";
  {
    std::ofstream f(path);
    f << "# run setup\n\nn=2\np=1.5\nq=1.5\ngamma=3 # inline comment\n";
  }
  RunConfig config = parse_args({"bounds", "--config", path});
  CHECK(config.n == 2);
  CHECK(config.gamma.has_value());
  CHECK(*config.gamma == 3.0);
  std::remove(path.c_str());
}

TEST_CASE("--out redirects the primary output") {
  const std::string path = "/tmp/cuspeig_test_out.json";
  const CliResult r = run({"bounds", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                           "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str().find("mu_lower_canonical") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("emitted JSON parses cleanly") {
  const CliResult bounds =
      run({"bounds", "--n", "2", "--p", "1.5", "--q", "2", "--gamma", "3", "--weight", "unit"});
  const auto bounds_json = nlohmann::json::parse(bounds.out);
  CHECK(bounds_json.at("command") == "bounds");
  CHECK(bounds_json.at("notes").is_array());
  CHECK(bounds_json.contains("general_weight_error"));

  const CliResult solve = run({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                               "--M", "8", "--seed", "2"});
  const auto solve_json = nlohmann::json::parse(solve.out);
  CHECK(solve_json.at("converged").is_boolean());
  CHECK(solve_json.at("mu_h").is_number());
}

TEST_CASE("inadmissible family weight is rejected through the CLI") {
  const CliResult r = run({"solve", "--n", "2", "--p", "1.5", "--q", "1.5", "--gamma", "3",
                           "--M", "8", "--weight", "family:0.5"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("a_max") != std::string::npos);
}

TEST_CASE("unknown commands and flags exit with the validation code") {
  CHECK(run({"frobnicate"}).code == kExitValidation);
  CHECK(run({"bounds", "--frobnicate", "1"}).code == kExitValidation);
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"bounds", "--p"}).code == kExitValidation);
}
