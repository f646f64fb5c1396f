#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "permgen/error.hpp"

namespace permgen {

/// Outcome of one randomized law over many trials.
struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// First failing input, or for expected-negative checks the reported witness.
  std::string counterexample;
  /// The law is expected to fail (a documented non-example); it passes when
  /// the failure is observed with the expected witness.
  bool expected_negative = false;

  bool passed() const noexcept { return failures == 0; }
};

struct SuiteReport {
  std::vector<PropertyResult> properties;

  bool passed() const noexcept;
};

enum class PropertyScope { Axioms, Permissibility, Groupwise, ConvexValued, All };

/// Throws InvalidArgument on an unknown scope name.
PropertyScope parse_scope(std::string_view name);

/// Runs every law in scope with `trials` random instances each. Instances
/// are drawn from a seeded generator, so a report is reproducible from
/// (scope, trials, seed).
SuiteReport run_properties(PropertyScope scope, std::size_t trials, std::uint64_t seed);

}  // namespace permgen
