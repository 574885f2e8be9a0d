#include "graphcodes/plurality.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace graphcodes {

namespace {

void validate_set(const std::vector<PackedWord>& lam) {
  if (lam.empty()) throw Error("plurality: empty codeword set");
  const auto n = lam[0].size();
  if (n == 0) throw Error("plurality: zero-length words");
  std::set<PackedWord> seen;
  for (const auto& w : lam) {
    if (w.size() != n) throw Error("plurality: non-uniform word lengths");
    if (!seen.insert(w).second) throw Error("plurality: duplicate word");
  }
}

std::uint64_t plurality_sum_only(const std::vector<PackedWord>& lam) {
  const auto n = lam[0].size();
  std::uint64_t sum = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  for (std::size_t j = 0; j < n; ++j) {
    counts.clear();
    std::uint32_t best = 0;
    for (const auto& w : lam) best = std::max(best, ++counts[w[j]]);
    sum += best;
  }
  return sum;
}

}  // namespace

std::uint64_t PluralityReport::count_at_least(double beta) const {
  const double threshold = beta * list_size;
  std::uint64_t c = 0;
  for (const auto p : pl)
    if (ge_tol(static_cast<double>(p), threshold)) ++c;
  return c;
}

PluralityReport plurality_vector(const std::vector<PackedWord>& lam) {
  validate_set(lam);
  PluralityReport rep;
  rep.n = static_cast<std::uint32_t>(lam[0].size());
  rep.list_size = static_cast<std::uint32_t>(lam.size());
  rep.pl.resize(rep.n);
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  for (std::uint32_t j = 0; j < rep.n; ++j) {
    counts.clear();
    std::uint32_t best = 0;
    for (const auto& w : lam) best = std::max(best, ++counts[w[j]]);
    rep.pl[j] = best;
    rep.sum += best;
  }
  return rep;
}

bool average_radius_check(const std::vector<PackedWord>& lam, double eps) {
  const auto rep = plurality_vector(lam);
  const double bound = eps * rep.n * rep.list_size;
  // strict: sum < eps * n * L
  return !ge_tol(static_cast<double>(rep.sum), bound);
}

bool plurality_condition_check(const std::vector<PackedWord>& lam, double beta, double delta) {
  if (!(beta > 0.0) || !le_tol(beta, 1.0)) throw Error("plurality condition: need 0 < beta <= 1");
  if (!(delta > 0.0) || !le_tol(delta, 1.0))
    throw Error("plurality condition: need 0 < delta <= 1");
  const auto rep = plurality_vector(lam);
  return le_tol(static_cast<double>(rep.count_at_least(beta)),
                delta * static_cast<double>(rep.n));
}

double abel_bound(double eps, std::uint32_t list_size, std::uint32_t n) {
  if (list_size < 1) throw Error("abel_bound: need list size >= 1");
  return eps * list_size * n * (std::log(static_cast<double>(list_size)) + 2.0);
}

MultisetListBound multiset_list_bound(std::uint32_t n_left, std::uint32_t k) {
  if (k == 0 || k >= n_left) throw Error("multiset_list_bound: need 0 < k < n_left");
  MultisetListBound b;
  b.l_bar = static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(n_left) + 5ULL * k - 1) / (5ULL * k));
  b.radius = 1.0 - 10.0 * (static_cast<double>(k) / n_left) *
                       (std::log(static_cast<double>(b.l_bar)) + 2.0);
  b.list_size = b.l_bar - 1;
  return b;
}

std::optional<std::vector<std::uint32_t>> counting_lemma_witness(
    const std::vector<std::vector<std::uint32_t>>& sets, std::uint32_t ground_size, double beta,
    std::uint64_t trials, std::uint64_t seed) {
  if (sets.empty()) throw Error("counting_lemma_witness: empty family");
  if (!le_tol(beta, 0.5)) throw Error("counting_lemma_witness: need beta <= 1/2");
  if (!ge_tol(beta * ground_size, 2.0))
    throw Error("counting_lemma_witness: need beta * ground size >= 2");
  const auto min_set = static_cast<std::uint64_t>(std::ceil(beta * ground_size - kThresholdTol));
  for (const auto& s : sets) {
    if (s.size() < min_set) throw Error("counting_lemma_witness: set below the beta threshold");
    for (const auto e : s)
      if (e >= ground_size) throw Error("counting_lemma_witness: element out of range");
  }
  const auto t_size =
      static_cast<std::uint32_t>(std::ceil(2.0 / beta - kThresholdTol));

  Rng rng(seed);
  std::vector<std::uint8_t> in_t(ground_size);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto t = rng.sample_without_replacement(ground_size, t_size);
    std::fill(in_t.begin(), in_t.end(), 0);
    for (const auto e : t) in_t[e] = 1;
    std::uint64_t hits = 0;
    for (const auto& s : sets) {
      std::uint32_t overlap = 0;
      for (const auto e : s)
        if (in_t[e] && ++overlap >= 2) break;
      if (overlap >= 2) ++hits;
    }
    if (ge_tol(static_cast<double>(hits), 0.3 * static_cast<double>(sets.size()))) {
      std::sort(t.begin(), t.end());
      return t;
    }
  }
  return std::nullopt;
}

ScanResult scan_plurality(const std::vector<PackedWord>& code, std::uint32_t list_size,
                          const ScanOptions& opts) {
  validate_set(code);
  if (list_size < 1 || list_size > code.size())
    throw Error("scan_plurality: need 1 <= L <= |code|");

  ScanResult best;
  std::vector<PackedWord> lam(list_size);
  const auto consider = [&](const std::vector<std::uint32_t>& indices) {
    for (std::uint32_t i = 0; i < list_size; ++i) lam[i] = code[indices[i]];
    const auto sum = plurality_sum_only(lam);
    if (sum > best.sum || (sum == best.sum && (best.witness.empty() || indices < best.witness))) {
      best.sum = sum;
      best.witness = indices;
    }
  };

  if (opts.mode == ScanMode::exhaustive) {
    if (choose(code.size(), list_size) > opts.budget)
      throw BudgetExceeded("scan_plurality: subset count exceeds budget");
    for_each_combination(static_cast<std::uint32_t>(code.size()), list_size, opts.budget,
                         [&](const std::vector<std::uint32_t>& indices) {
                           consider(indices);
                           return true;
                         });
  } else {
    Rng rng(opts.seed);
    for (std::uint64_t trial = 0; trial < opts.trials; ++trial) {
      auto indices =
          rng.sample_without_replacement(static_cast<std::uint32_t>(code.size()), list_size);
      std::sort(indices.begin(), indices.end());
      consider(indices);
    }
  }
  return best;
}

std::vector<PackedWord> widen_words(const std::vector<std::vector<std::uint16_t>>& words) {
  std::vector<PackedWord> out;
  out.reserve(words.size());
  for (const auto& w : words) out.emplace_back(w.begin(), w.end());
  return out;
}

}  // namespace graphcodes
