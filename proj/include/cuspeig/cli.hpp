#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cuspeig {

// Exit codes: 0 success, 2 validation, 3 non-convergence, 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitVerifyFailure = 4;

struct RunConfig {
  std::string command;
  int n = 2;
  double p = 1.5;
  double q = 1.5;
  std::optional<double> gamma;
  std::optional<double> sigma;  // gamma = sigma (n-1) + 1; never both
  std::string weight = "optimal";
  int M = 64;
  std::optional<double> beta;  // default max(2, sigma)
  std::uint64_t seed = 0;
  int workers = 1;
  int max_iterations = 50000;
  int restarts = 3;
  std::optional<double> a;  // stretching parameter for verify
  std::optional<std::vector<double>> gammas, ps, qs;
  bool with_solve = false;
  std::string out;
  std::string dump_mesh;
  std::string dump_eigenfunction;
};

// key=value lines, '#' comments.  Flags given on the command line override
// file values.
RunConfig parse_args(const std::vector<std::string>& args);
void write_config(const RunConfig& config, std::ostream& os);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

// Convenience for main() and in-process tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspeig
