#pragma once

// Worked examples of every module plus seeded randomized property checks,
// assembled into one deterministic JSON report.

#include <cstdint>

#include "wildhodge/io.hpp"

namespace wildhodge {

struct SelftestOptions {
  std::uint64_t seed = 42;
  int trunc = kDefaultTrunc;
  unsigned precision_bits = 128;
  int rounds = 6;  // random cases per property
};

struct SelftestOutcome {
  io::Json report;
  std::size_t passed = 0, failed = 0;
};

SelftestOutcome run_selftest(const SelftestOptions& options);

}  // namespace wildhodge
