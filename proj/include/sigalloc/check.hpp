#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigalloc {

struct CheckResult {
  std::string name;
  long trials = 0;
  bool pass = false;
  std::string detail; // first failure, with the trial index for replay
};

// Randomized property suite behind `check`: the dissipation identity, state
// conservation, Lyapunov decrease, the oracle KKT certificate, and a
// finite-difference audit of the gradients. Deterministic in (seed, trials):
// trial t of property k uses derive_seed(derive_seed(seed, k), t).
std::vector<CheckResult> run_property_checks(std::uint64_t seed, long trials);

} // namespace sigalloc
