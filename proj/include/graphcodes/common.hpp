#ifndef GRAPHCODES_COMMON_HPP
#define GRAPHCODES_COMMON_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace graphcodes {

/// Exact rational, used wherever a rate or bound must be checked without rounding.
using Fraction = boost::rational<long long>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration would exceed its configured cap. Never truncates silently.
struct BudgetExceeded : Error {
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultEnumBudget = 10'000'000;

// Real-valued threshold comparisons tolerate 1e-9 absolute slack so binary-inexact
// fractions (0.1, 0.3, ...) cannot flip an integer-count verdict. Integer budget
// checks elsewhere are exact and do not go through these.
inline constexpr double kThresholdTol = 1e-9;
inline bool ge_tol(double a, double b) { return a >= b - kThresholdTol; }
inline bool le_tol(double a, double b) { return a <= b + kThresholdTol; }

std::uint64_t splitmix64(std::uint64_t x);

/// Seed derivation scheme: every consumer of randomness draws its seed as
/// derive_seed(root, stream) for a documented stream index. One root seed
/// therefore fixes the whole run.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Thin RNG wrapper so every draw goes through one audited interface.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform in [0, 1).
  double unit();

  /// k distinct values from [0, n), in random order.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Binomial coefficient, saturating at uint64 max instead of overflowing.
std::uint64_t choose(std::uint64_t n, std::uint64_t k);

/// Visits size-k index combinations of [0, n) in lexicographic order.
/// Stops early when fn returns false; throws BudgetExceeded past `budget` visits.
void for_each_combination(std::uint32_t n, std::uint32_t k, std::uint64_t budget,
                          const std::function<bool(const std::vector<std::uint32_t>&)>& fn);

}  // namespace graphcodes

#endif
