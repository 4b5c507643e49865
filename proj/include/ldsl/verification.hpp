#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ldsl/sequence.hpp"

namespace ldsl {

/// Outcome of one seeded property campaign. worst_ratio is the largest
/// observed lhs/(rhs + tolerance) or residual/(tolerance·scale); a suite
/// passes iff failures == 0, which implies worst_ratio <= 1.
struct SuiteSummary {
  std::string name;
  Index cases = 0;
  Index failures = 0;
  double worst_ratio = 0.0;
};

/// product_rule, summation_by_parts, greens, wronskian, recurrence, lemma1,
/// lemma2, pointwise_bound.
const std::vector<std::string>& verification_suites();

/// Runs one suite by name, or every suite for "all". Each suite derives its own
/// generator from `seed`, so results do not depend on which suites run together.
std::vector<SuiteSummary> run_verification(std::string_view suite, std::uint64_t seed, Index cases);

}  // namespace ldsl
