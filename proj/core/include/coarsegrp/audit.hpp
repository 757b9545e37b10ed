#pragma once

// The randomized invariant suite behind `coarsegrp audit`: every
// theorem-backed assertion of every module, driven by one seed.

#include <cstdint>
#include <string>
#include <vector>

namespace cg::audit {

struct AuditOptions {
  std::uint64_t seed = 42;
  /// Random cases per section.
  std::size_t cases = 40;
  /// Test-only: corrupt one check so the harness has something to catch.
  bool inject_fault = false;
};

struct AuditSection {
  std::string name;
  std::size_t cases = 0;
  /// Cases where the checked implication had its premise satisfied.
  std::size_t premises = 0;
  std::vector<std::string> violations;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::size_t cases_per_section = 0;
  std::vector<AuditSection> sections;

  std::size_t violation_count() const;
};

AuditReport run_audit(const AuditOptions& opts);

}  // namespace cg::audit
