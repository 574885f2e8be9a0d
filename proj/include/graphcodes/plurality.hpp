#ifndef GRAPHCODES_PLURALITY_HPP
#define GRAPHCODES_PLURALITY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "graphcodes/common.hpp"

namespace graphcodes {

/// Words compared position-wise by symbol id. Tuple alphabets are first
/// dictionary-packed (see pack_tuple_words) so ids are plain integers.
using PackedWord = std::vector<std::uint32_t>;

/// Plurality vector of a set of distinct equal-length words: pl[j] is the
/// count of the most frequent symbol at position j.
struct PluralityReport {
  std::uint32_t n = 0;
  std::uint32_t list_size = 0;
  std::vector<std::uint32_t> pl;
  std::uint64_t sum = 0;

  /// |{j : pl[j] >= beta * list_size}|.
  std::uint64_t count_at_least(double beta) const;
};

PluralityReport plurality_vector(const std::vector<PackedWord>& lam);

/// True iff the plurality sum is strictly below eps * n * L.
bool average_radius_check(const std::vector<PackedWord>& lam, double eps);

/// True iff at most delta * n positions have plurality >= beta * L.
bool plurality_condition_check(const std::vector<PackedWord>& lam, double beta, double delta);

/// eps * L * n * (ln L + 2). Natural log.
double abel_bound(double eps, std::uint32_t list_size, std::uint32_t n);

struct MultisetListBound {
  std::uint32_t l_bar = 0;
  double radius = 0.0;      // may be <= 0; reported as-is
  std::uint32_t list_size = 0;
};

/// l_bar = ceil(n_left / (5k)); radius = 1 - 10 (k / n_left)(ln l_bar + 2);
/// list = l_bar - 1. Natural log.
MultisetListBound multiset_list_bound(std::uint32_t n_left, std::uint32_t k);

/// Random search for a small tester subset T of the ground set, of size
/// ceil(2 / beta), such that at least 0.3 * |sets| of the given sets meet T in
/// >= 2 elements. Requires beta <= 1/2, beta * ground_size >= 2, and every set
/// to have >= ceil(beta * ground_size) elements. nullopt after `trials` misses.
std::optional<std::vector<std::uint32_t>> counting_lemma_witness(
    const std::vector<std::vector<std::uint32_t>>& sets, std::uint32_t ground_size, double beta,
    std::uint64_t trials, std::uint64_t seed);

enum class ScanMode { exhaustive, sampled };

struct ScanOptions {
  ScanMode mode = ScanMode::exhaustive;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumBudget;
};

struct ScanResult {
  std::vector<std::uint32_t> witness;  // indices into the scanned code, ascending
  std::uint64_t sum = 0;
};

/// Maximizes the plurality sum over size-L subsets of the code, exactly
/// (lexicographically first maximizer) or by seeded sampling.
ScanResult scan_plurality(const std::vector<PackedWord>& code, std::uint32_t list_size,
                          const ScanOptions& opts = {});

/// Widens 16-bit symbol words into packed words.
std::vector<PackedWord> widen_words(const std::vector<std::vector<std::uint16_t>>& words);

}  // namespace graphcodes

#endif
