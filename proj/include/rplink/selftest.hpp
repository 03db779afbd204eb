#pragma once

#include <string>
#include <vector>

namespace rplink {

// Result of one acceptance criterion: pass/fail, wall time, and a short
// detail string (counts checked, seeds used, or the first failure reason).
struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full acceptance suite with fixed seeds. Every criterion is
// executed even if earlier ones fail; failures are reported, not thrown.
std::vector<CriterionResult> run_acceptance();

// One human-readable line per criterion ("PASS criterion 3: ..."), plus a
// final summary line.
std::string acceptance_report(const std::vector<CriterionResult>& results);

std::string acceptance_json(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rplink
