#ifndef POPMCMC_RUNNER_HPP
#define POPMCMC_RUNNER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "popmcmc/run_config.hpp"

namespace popmcmc::harness {

// Raised when a sweep produces a non-finite log target; run() turns it into
// exit status 2 after writing the state dump.
struct NanTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes a dump of the chain dimensions and throws NanTarget when the log
// target is not finite.
void require_finite_target(double log_target, const std::string& dump_path,
                           const std::vector<int>& chain_ks, long sweep);

// Executes the configured experiment deterministically for its seed and
// writes trace.csv, summary.json, timing.json and a verbatim config echo
// into the output directory. Returns the process exit status.
int run(const RunConfig& cfg);

}  // namespace popmcmc::harness

#endif
