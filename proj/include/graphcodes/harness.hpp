#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphcodes/common.hpp"
#include "graphcodes/extremal.hpp"
#include "graphcodes/graphcode.hpp"
#include "json.hpp"

namespace graphcodes {

enum class CorruptStrategy { uniform_random, clustered, targeted };

std::string strategy_name(CorruptStrategy s);
CorruptStrategy strategy_from_name(const std::string& name);

// Exact-count adversarial channel: exactly `errors` positions get a different
// tuple and exactly `erasures` further positions are erased, all disjoint.
struct ChannelSpec {
  std::uint32_t errors = 0;
  std::uint32_t erasures = 0;
  CorruptStrategy strategy = CorruptStrategy::uniform_random;
  std::uint64_t seed = 0;
};

ReceivedWord corrupt(const GraphCode& code, const LeftWord& word, const ChannelSpec& spec);
FoldedReceived corrupt_folded(const FoldedCode& code, const FoldedWord& word,
                              const ChannelSpec& spec);

struct CellReport {
  std::uint32_t errors = 0;
  std::uint32_t erasures = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t wrong_decodes = 0;
  bool in_budget = false;
  double mean_list = 0.0;
  std::uint64_t max_list = 0;
  double mean_ms = 0.0;
};

struct TrialReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t degree = 0;
  std::uint32_t k = 0;
  std::uint32_t ell = 0;
  double rho = 0.0;
  std::string strategy;
  Fraction rate{0};
  std::vector<CellReport> cells;
};

// All (e, s) with 2e + s < n - k; with include_boundary also the cells at
// equality, which sit just outside the guarantee.
std::vector<std::pair<std::uint32_t, std::uint32_t>> full_unique_grid(std::uint32_t n,
                                                                      std::uint32_t k,
                                                                      bool include_boundary);

TrialReport trial_unique(const GraphCode& code, std::uint32_t k,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& grid,
                         std::uint64_t trials, std::uint64_t seed,
                         CorruptStrategy strategy = CorruptStrategy::uniform_random,
                         bool enforce = true);

TrialReport trial_list(const GraphCode& code, const ListDecodeOptions& opts,
                       const std::vector<std::uint32_t>& error_counts, std::uint64_t trials,
                       std::uint64_t seed,
                       CorruptStrategy strategy = CorruptStrategy::uniform_random,
                       bool enforce = true);

struct ScalingInstance {
  GraphCode code;
  std::uint32_t k = 1;
  std::uint32_t errors = 0;
  std::uint32_t erasures = 0;
};

struct ScalingPoint {
  std::uint32_t n = 0;
  std::uint64_t trials = 0;
  double mean_ms = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t wrong_decodes = 0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double exponent = 0.0;
};

ScalingReport runtime_scaling(const std::vector<ScalingInstance>& instances,
                              std::uint64_t trials, std::uint64_t seed);

nlohmann::json trial_report_to_json(const TrialReport& report);
std::string trial_report_csv(const TrialReport& report);
nlohmann::json scaling_report_to_json(const ScalingReport& report);

// Drops wall-clock fields so reports from repeat runs compare equal.
nlohmann::json strip_volatile(nlohmann::json j);

struct CodeBundle;

// Builds graph, mother, and code from the config's graph/mother/code sections.
// Error messages name the failing stage.
CodeBundle build_bundle(const nlohmann::json& config);

void run_experiment(const nlohmann::json& config, const std::string& out_dir);

}  // namespace graphcodes
