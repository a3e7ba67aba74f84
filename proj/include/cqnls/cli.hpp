#ifndef CQNLS_CLI_HPP
#define CQNLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqnls/evolve.hpp"
#include "cqnls/report.hpp"

namespace cqnls {

enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,
  kExitAssertion = 2,
  kExitIo = 3,
  kExitUsage = 64,
};

struct RunConfig {
  std::string subcommand;
  double L = 0.0;
  std::string omega_spec;
  std::vector<double> omegas;
  bool omega_is_range = false;
  std::size_t N = 256;
  double dt = 0.0;
  double t_end = 0.0;
  double delta = 1e-3;
  Perturbation perturbation = Perturbation::mode_cos1;
  std::uint64_t seed = 12345;
  unsigned jobs = 1;
  std::string output = "-";
  std::string format;
};

/// "w" or "start:stop:count" (uniform, endpoints included).
std::vector<double> parse_omega(const std::string& spec, bool* is_range = nullptr);

/// Executes one subcommand. Library errors propagate; assertion failures are
/// listed in Report::failures.
Report run(const RunConfig& config);

/// Full command-line entry point; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqnls

#endif  // CQNLS_CLI_HPP
