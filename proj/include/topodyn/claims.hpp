#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topodyn/properties.hpp"
#include "topodyn/system_doc.hpp"

namespace topodyn {

/// One pinned expectation about a reference system.
struct ClaimExpectation {
  Property property;
  bool expected;
};

/// A reference system with the property pattern it is known to exhibit.
/// Non-checkable entries describe behaviour outside the finite engine
/// (they carry a skip reason instead of a system).
struct ReferenceClaim {
  std::string id;
  std::string summary;
  std::optional<NamedSystem> system;
  std::vector<ClaimExpectation> expectations;
  std::string skip_reason;

  bool checkable() const { return system.has_value(); }
};

/// The built-in separation examples, in report order.
const std::vector<ReferenceClaim>& reference_claims();

struct ClaimResult {
  std::string id;
  bool checkable = false;
  /// One entry per expectation that the engine contradicts.
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty(); }
};

struct ClaimCheckReport {
  std::vector<ClaimResult> results;
  bool all_passed() const;
};

/// Classifies one claim's system (when checkable) and compares the observed
/// properties against its expectations.
ClaimResult check_claim(const ReferenceClaim& claim);

/// Runs check_claim over every built-in reference claim.
ClaimCheckReport check_reference_claims();

}  // namespace topodyn
