#ifndef GRAPHCODES_EXTREMAL_HPP
#define GRAPHCODES_EXTREMAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphcodes/bigraph.hpp"
#include "graphcodes/common.hpp"

namespace graphcodes {

enum class DisperserKind { plain, multiset };

/// A (k, delta) target property. Plain: every left subset of size >= k covers
/// at least a (1 - delta) fraction of the right side. Multiset: for every
/// family of t >= 2 right subsets with pairwise symmetric difference at least
/// delta * n_right, at most t * k left vertices have their whole neighborhood
/// outside some pairwise symmetric difference.
struct DisperserSpec {
  std::uint32_t k = 0;
  double delta = 0.0;
  DisperserKind kind = DisperserKind::plain;
};

enum class Verdict { certified_exhaustive, refuted, passed_randomized };

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

struct MultisetViolation {
  std::vector<std::vector<std::uint32_t>> family;  // right subsets, each ascending
  std::vector<std::uint32_t> offenders;            // offending left vertices, ascending
};

/// Result of a certification or refutation run. Refuted verdicts always carry
/// a witness that replays as a violation; passed-randomized records the trial
/// count and seed that produced it.
struct Certificate {
  DisperserSpec spec;
  Verdict verdict = Verdict::passed_randomized;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t t_max = 0;  // multiset only
  std::optional<std::vector<std::uint32_t>> witness_subset;
  std::optional<MultisetViolation> witness_family;
};

struct PlannedParams {
  std::uint32_t degree = 0;
  std::uint32_t n_right = 0;
};

PlannedParams plan_disperser_params(std::uint32_t n_left, std::uint32_t k, double delta);
PlannedParams plan_multiset_params(std::uint32_t n_left, std::uint32_t k, double delta);

/// log2(k * degree / n_right) for the given graph.
double entropy_loss(const BipartiteGraph& g, std::uint32_t k);

/// |Gamma(S)| for a left subset.
std::uint64_t disperser_coverage(const BipartiteGraph& g,
                                 const std::vector<std::uint32_t>& subset);

/// True iff the subset witnesses a plain violation: |S| >= k and coverage
/// strictly below (1 - delta) * n_right.
bool check_disperser_violation(const BipartiteGraph& g, const DisperserSpec& spec,
                               const std::vector<std::uint32_t>& subset);

/// Replays a multiset family: validates the pairwise-distance constraint and
/// returns the offending left vertices when they number strictly more than
/// t * k; nullopt when the family is no violation.
std::optional<std::vector<std::uint32_t>> check_multiset_violation(
    const BipartiteGraph& g, const DisperserSpec& spec,
    const std::vector<std::vector<std::uint32_t>>& family);

Certificate certify_disperser_exhaustive(const BipartiteGraph& g, const DisperserSpec& spec,
                                         std::uint64_t budget = kDefaultEnumBudget);

/// Random size-k subsets plus one greedy adversarial subset (repeatedly add the
/// left vertex contributing fewest new right vertices). Sound refuter only:
/// never returns certified-exhaustive.
Certificate refute_disperser_randomized(const BipartiteGraph& g, const DisperserSpec& spec,
                                        std::uint64_t trials, std::uint64_t seed);

/// Enumerates every family of t in [2, t_max] pairwise-far right subsets.
/// The budget counts family prefixes visited, so infeasible instances fail
/// fast with BudgetExceeded instead of running forever.
Certificate certify_multiset_exhaustive(const BipartiteGraph& g, const DisperserSpec& spec,
                                        std::uint32_t t_max,
                                        std::uint64_t budget = kDefaultEnumBudget);

/// Random families of exactly t subsets, resampled until the pairwise
/// constraint holds (bounded retries). Requires 2 <= t <= n_left / k.
Certificate refute_multiset_randomized(const BipartiteGraph& g, const DisperserSpec& spec,
                                       std::uint32_t t, std::uint64_t trials,
                                       std::uint64_t seed);

struct SampleOptions {
  std::uint64_t attempt_budget = 50;
  std::uint64_t seed = 0;
  std::uint64_t refute_trials = 500;
  std::uint64_t enum_budget = kDefaultEnumBudget;
  std::uint32_t t_max = 3;
  bool force_randomized = false;
};

struct SampledGraph {
  BipartiteGraph graph;
  Certificate certificate;
  std::uint64_t attempts_used = 0;
};

/// Samples left-regular graphs until one certifies (exhaustively when the
/// budget allows, by randomized refutation otherwise). Errors once the attempt
/// budget is spent without a non-refuted graph.
SampledGraph sample_certified(std::uint32_t n_left, std::uint32_t n_right, std::uint32_t degree,
                              const DisperserSpec& spec, const SampleOptions& options = {});

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace graphcodes

#endif
