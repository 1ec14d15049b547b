#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvlab/tv_engine.hpp"

namespace tvlab {

struct Verdict {
  std::string invariant;
  std::uint64_t trial = 0;
  bool pass = false;
  std::string detail;
};

struct SuiteConfig {
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_n = 10;  // largest instance dimension drawn
  SweepOptions sweep;      // enumeration cap and worker count
};

struct SuiteReport {
  std::string suite;
  std::vector<Verdict> verdicts;

  bool all_pass() const;
  std::size_t failures() const;
  std::size_t count(std::string_view invariant) const;
  /// One JSON object per verdict, newline separated; no timing data, so equal
  /// configurations give byte-identical text.
  std::string jsonl() const;
};

/// forms | membership | lemma2 | claim1 | claims23 | chain | tensorize
const std::vector<std::string>& suite_names();

/// Runs one named invariant suite over seeded random instances. Throws
/// DomainError for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace tvlab
