#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topodyn/zoo.hpp"

namespace topodyn {

/// One quantified implication (or equivalence) checked over the universe.
/// A system counts as tested when the full left-hand hypothesis holds and
/// the conclusion was then verified; systems failing the hypothesis are
/// skipped, never failed.
struct InvariantOutcome {
  std::string name;
  std::uint64_t tested = 0;
  std::uint64_t skipped = 0;
  /// One entry per failing system: serialized document plus detail text.
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

struct InvariantSuiteConfig {
  /// Exhaustive pass over every system with 1..exhaustive_max points.
  int exhaustive_max = 3;
  /// Point counts covered by seeded sampling (only values above
  /// exhaustive_max and at most kMaxEnumPoints are used).
  std::vector<int> sample_points = {4, 5};
  /// Total number of sampled systems, split evenly across sample_points.
  std::uint64_t sample_budget = 12000;
  std::uint64_t seed = kDefaultSeed;
};

struct InvariantSuiteReport {
  InvariantSuiteConfig config;
  /// (point count, systems covered) per enumeration or sampling pass.
  std::vector<std::pair<int, std::uint64_t>> coverage;
  std::vector<InvariantOutcome> invariants;

  std::uint64_t total_violations() const;
  bool all_passed() const { return total_violations() == 0; }
};

/// Checks every recorded invariant over the exhaustive small-point universe
/// plus a deterministic seeded sample at the larger point counts.
InvariantSuiteReport run_invariant_suite(const InvariantSuiteConfig& config);

/// Names of the invariants in report order (exposed so callers can pin
/// expectations to specific rows).
std::vector<std::string> invariant_names();

}  // namespace topodyn
