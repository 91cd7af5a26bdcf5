#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treelab/stats.hpp"

namespace treelab {

// Acceptance criteria, grouped by runtime class. Each entry is one named
// check with its estimate, target, tolerance, standard error and pass flag;
// known-defect reference rows fail honestly with an explanatory note.

// c01..c06: exact symbolic checks (no randomness; seed recorded as 0).
std::vector<CheckResult> verify_symbolic();

// c07..c13: seeded coalescent Monte Carlo.
std::vector<CheckResult> verify_coalescent(std::uint64_t seed);

// c14..c17: seeded Moran-path Monte Carlo.
std::vector<CheckResult> verify_moran(std::uint64_t seed);

// One-line "[PASS]/[FAIL] name est=... target=..." rendering.
std::string format_check_line(const CheckResult& r);

}  // namespace treelab
