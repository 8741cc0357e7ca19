#pragma once

// The acceptance suite: each check builds its own towers, runs both sides of
// an identity and reports the worst deviation it saw.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace infext {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock allowance; exceeding it fails the criterion.
  double budget_seconds = 0.0;
};

CriterionResult verify_route_equivalence(std::uint64_t seed);
CriterionResult verify_eigen_relation();
CriterionResult verify_spectrum_structure();
CriterionResult verify_singularity_witness();
CriterionResult verify_heat_closed_form();
CriterionResult verify_levy_khinchin();
CriterionResult verify_levy_representation(std::uint64_t seed);
CriterionResult verify_monte_carlo(std::uint64_t seed);
CriterionResult verify_structural(std::uint64_t seed);

/// Criteria 1..9 in order.
std::vector<CriterionResult> verify_all(std::uint64_t seed,
                                        const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace infext
