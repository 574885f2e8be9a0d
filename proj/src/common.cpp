#include "graphcodes/common.hpp"

#include <limits>

namespace graphcodes {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root ^ splitmix64(stream + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below: zero bound");
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(engine_);
}

double Rng::unit() {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw Error("sample_without_replacement: k > n");
  // Partial Fisher-Yates over an index pool.
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > kMax / factor) return kMax;  // saturate
    result = result * factor / i;
  }
  return result;
}

void for_each_combination(std::uint32_t n, std::uint32_t k, std::uint64_t budget,
                          const std::function<bool(const std::vector<std::uint32_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  std::uint64_t visited = 0;
  while (true) {
    if (++visited > budget) throw BudgetExceeded("combination enumeration budget exceeded");
    if (!fn(idx)) return;
    if (k == 0) return;
    // advance to the next combination in lexicographic order
    std::int64_t pos = static_cast<std::int64_t>(k) - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                           n - k + static_cast<std::uint32_t>(pos)) {
      --pos;
    }
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (auto i = static_cast<std::size_t>(pos) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace graphcodes
