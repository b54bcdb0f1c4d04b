#pragma once

// Randomized battery over the exact identities and inequalities of the
// field, geometry, spectral and counting layers. Failures are report content,
// never exceptions.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdist/point_set.hpp"

namespace ffdist {

struct VerifyOptions {
  // Corrupt lambda_I(0) in the table used by the group-action property.
  bool inject_lambda_fault = false;
  // Random sets have at most this many points (and at most q^2).
  std::size_t max_set_size = 40;
};

struct PropertyResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failure
  double elapsed_ms = 0;

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::uint32_t q = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  double elapsed_ms = 0;

  bool passed() const noexcept;
  nlohmann::json to_json() const;
};

std::vector<std::string> verify_property_names();

// Requires the plane's field to satisfy the hypothesis; otherwise every
// property is reported as failed with that reason.
VerifyReport verify_suite(const PlanePtr& plane, std::size_t trials, std::uint64_t seed,
                          const VerifyOptions& options = {});

}  // namespace ffdist
