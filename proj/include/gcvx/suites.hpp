#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcvx/report.hpp"

// The law suites behind the CLI. Every suite is deterministic for a fixed config.
namespace gcvx::suites {

using nlohmann::json;

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_size;     ///< largest semilattice
  std::optional<std::size_t> max_points;   ///< largest measurable space
  std::optional<std::size_t> samples;      ///< random instances
  std::optional<std::size_t> grid;         ///< grid denominator
  std::optional<std::size_t> max_support;  ///< outer support bound for two-level measures
  /// "mu", "integrator" or "h" swaps in a deliberately broken implementation.
  std::string mutation;
};

/// Keys: seed, maxSize, maxPoints, samples, grid, maxSupport, mutation. Anything
/// else, or a value of the wrong type, is a UsageError.
SuiteConfig config_from_json(const json& j);

const std::vector<std::string>& suite_names();

/// Throws UsageError on an unknown suite.
report::LawReport run_suite(const std::string& name, const SuiteConfig& config = {});

struct Explanation {
  std::string suite;
  std::string law;
  std::string instance;
  bool passed = false;
  bool erratum_expected = false;
  json witness;
  std::vector<std::string> trace;
};

/// Replays one check named "suite/law/instance". Throws UsageError when no
/// check with that reference exists under `config`.
Explanation explain(const std::string& ref, const SuiteConfig& config = {});

}  // namespace gcvx::suites
