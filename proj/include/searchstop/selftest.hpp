#pragma once

#include <ostream>

namespace searchstop {

// Fast deterministic invariant suite (no Monte Carlo, fixed seeds): prints
// one "ok"/"FAIL" line per group to `out` and returns true iff all pass.
bool run_selftest(std::ostream& out);

}  // namespace searchstop
