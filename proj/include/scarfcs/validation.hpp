#pragma once

#include <functional>
#include <string>
#include <vector>

namespace scarfcs::validation {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities against their thresholds, one line.
  std::string detail;
  double seconds = 0.0;
};

/// Runs the nine built-in checks: eigensystem, shape invariance,
/// normalization oracles, statistics signs, exact anchors, cross-identities,
/// autocorrelation, carpets and the rational normalization audit.
/// `on_result` is called as each one finishes.
std::vector<CriterionResult> run_all(
    unsigned threads = 1,
    const std::function<void(const CriterionResult&)>& on_result = {});

CriterionResult eigensystem_suite();
CriterionResult shape_invariance_suite();
CriterionResult normalization_suite();
CriterionResult statistics_signs();
CriterionResult exact_anchors();
CriterionResult cross_identities();
CriterionResult autocorrelation_suite();
CriterionResult carpet_suite(unsigned threads);
CriterionResult rational_norm_audit();

}  // namespace scarfcs::validation
