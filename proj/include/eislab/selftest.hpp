#pragma once

// The acceptance battery behind `eislab selftest` and the ctest acceptance
// suite: one pass/fail line per criterion, deterministic output.

#include <iosfwd>
#include <string>

namespace eislab::selftest {

// Runs every criterion, printing one line per criterion to `out`.
// When `write_baselines` is non-empty, the measured fitted constants are
// written there as JSON (used once to seed the committed baseline file).
// Returns the number of failed criteria.
int run_acceptance(std::ostream& out, const std::string& write_baselines = "");

}  // namespace eislab::selftest
