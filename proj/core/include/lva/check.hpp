#pragma once

#include <cstdint>
#include <string>

namespace lva {

/// Outcome of one family of checked identities.
struct CheckRecord {
  std::string name;
  /// Short tag naming the mathematical statement being tested.
  std::string anchor;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  /// Human-readable description of the first failing instance, if any.
  std::string counterexample;

  bool passed() const { return failures == 0; }

  void record(bool ok, const std::string& witness = {}) {
    ++instances;
    if (!ok) {
      if (failures == 0) counterexample = witness;
      ++failures;
    }
  }

  void merge(const CheckRecord& other) {
    instances += other.instances;
    if (failures == 0 && other.failures) counterexample = other.counterexample;
    failures += other.failures;
  }
};

}  // namespace lva
