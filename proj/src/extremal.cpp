#include "graphcodes/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

namespace graphcodes {

namespace {

// ceil/floor with the shared threshold slack, so formula values that are
// integers up to binary rounding land on the integer.
std::int64_t ceil_tol(double x) { return static_cast<std::int64_t>(std::ceil(x - kThresholdTol)); }
std::int64_t floor_tol(double x) { return static_cast<std::int64_t>(std::floor(x + kThresholdTol)); }

void validate_spec(const BipartiteGraph& g, const DisperserSpec& spec) {
  if (spec.k == 0 || spec.k >= g.n_left()) throw Error("disperser spec: need 0 < k < n_left");
  if (!(spec.delta > 0.0) || !(spec.delta < 1.0))
    throw Error("disperser spec: need 0 < delta < 1");
  if (g.n_right() == 0) throw Error("disperser spec: graph has no right vertices");
}

void validate_plan_range(std::uint32_t n_left, std::uint32_t k, double delta) {
  if (k == 0 || k >= n_left) throw Error("planning: need 0 < k < n_left");
  if (!(delta > 0.0) || !(delta < 1.0)) throw Error("planning: need 0 < delta < 1");
}

using Mask = std::vector<std::uint64_t>;

Mask zero_mask(std::uint32_t bits) { return Mask((bits + 63) / 64, 0); }

void set_bit(Mask& m, std::uint32_t i) { m[i / 64] |= 1ULL << (i % 64); }

std::uint64_t mask_popcount(const Mask& m) {
  std::uint64_t c = 0;
  for (const auto w : m) c += std::popcount(w);
  return c;
}

std::vector<Mask> left_masks(const BipartiteGraph& g) {
  std::vector<Mask> out(g.n_left(), zero_mask(g.n_right()));
  for (std::uint32_t l = 0; l < g.n_left(); ++l)
    for (const auto w : g.neighbors(l)) set_bit(out[l], w);
  return out;
}

// Smallest integer count satisfying count >= (1 - delta) * n_right under the
// shared tolerance.
std::int64_t min_coverage(double delta, std::uint32_t n_right) {
  return std::max<std::int64_t>(0, ceil_tol((1.0 - delta) * n_right));
}

// Smallest integer satisfying count >= delta * n_right under the tolerance.
std::int64_t min_pair_difference(double delta, std::uint32_t n_right) {
  return std::max<std::int64_t>(0, ceil_tol(delta * n_right));
}

std::vector<std::uint32_t> mask_to_vertices(std::uint64_t mask, std::uint32_t bits) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < bits; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_exhaustive:
      return "certified-exhaustive";
    case Verdict::refuted:
      return "refuted";
    case Verdict::passed_randomized:
      return "passed-randomized";
  }
  throw Error("verdict_name: invalid verdict");
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "certified-exhaustive") return Verdict::certified_exhaustive;
  if (name == "refuted") return Verdict::refuted;
  if (name == "passed-randomized") return Verdict::passed_randomized;
  throw Error("unknown verdict: " + name);
}

PlannedParams plan_disperser_params(std::uint32_t n_left, std::uint32_t k, double delta) {
  validate_plan_range(n_left, k, delta);
  const double lg = std::log2(static_cast<double>(n_left) / k);
  PlannedParams p;
  p.degree = static_cast<std::uint32_t>(ceil_tol(4.0 * lg / delta));
  const double denom = std::max(1.0, std::log2(1.0 / delta));
  p.n_right = static_cast<std::uint32_t>(
      std::max<std::int64_t>(1, ceil_tol(static_cast<double>(k) * p.degree / denom)));
  return p;
}

PlannedParams plan_multiset_params(std::uint32_t n_left, std::uint32_t k, double delta) {
  validate_plan_range(n_left, k, delta);
  if (2ULL * k >= n_left) throw Error("planning: multiset requires k < n_left / 2");
  const double lg = std::log2(static_cast<double>(n_left) / k);
  PlannedParams p;
  p.degree = static_cast<std::uint32_t>(ceil_tol(4.0 * lg / delta));
  const auto m = floor_tol(static_cast<double>(k) * lg);
  if (m <= 0) throw Error("planning: multiset n_right computes to 0");
  p.n_right = static_cast<std::uint32_t>(m);
  return p;
}

double entropy_loss(const BipartiteGraph& g, std::uint32_t k) {
  if (k == 0) throw Error("entropy_loss: k must be >= 1");
  if (g.n_right() == 0) throw Error("entropy_loss: graph has no right vertices");
  return std::log2(static_cast<double>(k) * g.degree() / g.n_right());
}

std::uint64_t disperser_coverage(const BipartiteGraph& g,
                                 const std::vector<std::uint32_t>& subset) {
  Mask covered = zero_mask(g.n_right());
  for (const auto l : subset) {
    if (l >= g.n_left()) throw Error("disperser_coverage: left vertex out of range");
    for (const auto w : g.neighbors(l)) set_bit(covered, w);
  }
  return mask_popcount(covered);
}

bool check_disperser_violation(const BipartiteGraph& g, const DisperserSpec& spec,
                               const std::vector<std::uint32_t>& subset) {
  if (subset.size() < spec.k) return false;
  return static_cast<std::int64_t>(disperser_coverage(g, subset)) <
         min_coverage(spec.delta, g.n_right());
}

Certificate certify_disperser_exhaustive(const BipartiteGraph& g, const DisperserSpec& spec,
                                         std::uint64_t budget) {
  validate_spec(g, spec);
  if (choose(g.n_left(), spec.k) > budget)
    throw BudgetExceeded("certify_disperser_exhaustive: subset count exceeds budget");

  const auto masks = left_masks(g);
  const auto need = min_coverage(spec.delta, g.n_right());
  Certificate cert;
  cert.spec = spec;
  cert.verdict = Verdict::certified_exhaustive;
  for_each_combination(g.n_left(), spec.k, budget, [&](const std::vector<std::uint32_t>& s) {
    Mask covered = zero_mask(g.n_right());
    for (const auto l : s)
      for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= masks[l][w];
    if (static_cast<std::int64_t>(mask_popcount(covered)) < need) {
      cert.verdict = Verdict::refuted;
      cert.witness_subset = s;
      return false;
    }
    return true;
  });
  return cert;
}

namespace {

std::vector<std::uint32_t> greedy_low_coverage_subset(const BipartiteGraph& g,
                                                      const std::vector<Mask>& masks,
                                                      std::uint32_t k) {
  std::vector<std::uint32_t> subset;
  std::vector<bool> used(g.n_left(), false);
  Mask covered = zero_mask(g.n_right());
  for (std::uint32_t step = 0; step < k; ++step) {
    std::uint32_t best_l = 0;
    std::uint64_t best_new = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t l = 0; l < g.n_left(); ++l) {
      if (used[l]) continue;
      std::uint64_t fresh = 0;
      for (std::size_t w = 0; w < covered.size(); ++w)
        fresh += std::popcount(masks[l][w] & ~covered[w]);
      if (fresh < best_new) {
        best_new = fresh;
        best_l = l;
      }
    }
    used[best_l] = true;
    subset.push_back(best_l);
    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= masks[best_l][w];
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace

Certificate refute_disperser_randomized(const BipartiteGraph& g, const DisperserSpec& spec,
                                        std::uint64_t trials, std::uint64_t seed) {
  validate_spec(g, spec);
  if (trials < 1) throw Error("refute_disperser_randomized: trials must be >= 1");

  const auto masks = left_masks(g);
  const auto need = min_coverage(spec.delta, g.n_right());
  Certificate cert;
  cert.spec = spec;
  cert.trials = trials;
  cert.seed = seed;

  const auto probe = [&](std::vector<std::uint32_t> subset) {
    Mask covered = zero_mask(g.n_right());
    for (const auto l : subset)
      for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= masks[l][w];
    if (static_cast<std::int64_t>(mask_popcount(covered)) < need) {
      std::sort(subset.begin(), subset.end());
      cert.verdict = Verdict::refuted;
      cert.witness_subset = std::move(subset);
      return true;
    }
    return false;
  };

  if (probe(greedy_low_coverage_subset(g, masks, spec.k))) return cert;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t)
    if (probe(rng.sample_without_replacement(g.n_left(), spec.k))) return cert;
  cert.verdict = Verdict::passed_randomized;
  return cert;
}

namespace {

// Offending left vertices for a family of right-subset masks: vertices whose
// neighborhood misses some pairwise symmetric difference entirely.
template <class MaskT, class AndEmpty, class Xor>
std::vector<std::uint32_t> offenders_of(const std::vector<MaskT>& family,
                                        const std::vector<MaskT>& nbr, const Xor& mask_xor,
                                        const AndEmpty& and_empty) {
  std::vector<std::uint32_t> out;
  std::vector<MaskT> diffs;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      diffs.push_back(mask_xor(family[i], family[j]));
  for (std::uint32_t v = 0; v < nbr.size(); ++v)
    for (const auto& d : diffs)
      if (and_empty(nbr[v], d)) {
        out.push_back(v);
        break;
      }
  return out;
}

std::vector<std::uint32_t> offenders_small(const std::vector<std::uint32_t>& family,
                                           const std::vector<std::uint32_t>& nbr) {
  std::vector<std::uint32_t> fam(family);
  std::vector<std::uint32_t> n(nbr);
  return offenders_of<std::uint32_t>(
      fam, n, [](std::uint32_t a, std::uint32_t b) { return a ^ b; },
      [](std::uint32_t a, std::uint32_t b) { return (a & b) == 0; });
}

std::vector<std::uint32_t> small_left_masks(const BipartiteGraph& g) {
  std::vector<std::uint32_t> out(g.n_left(), 0);
  for (std::uint32_t l = 0; l < g.n_left(); ++l)
    for (const auto w : g.neighbors(l)) out[l] |= 1u << w;
  return out;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> check_multiset_violation(
    const BipartiteGraph& g, const DisperserSpec& spec,
    const std::vector<std::vector<std::uint32_t>>& family) {
  validate_spec(g, spec);
  if (family.size() < 2) return std::nullopt;
  const auto min_diff = min_pair_difference(spec.delta, g.n_right());

  std::vector<Mask> fmasks;
  for (const auto& s : family) {
    Mask m = zero_mask(g.n_right());
    for (const auto w : s) {
      if (w >= g.n_right()) throw Error("check_multiset_violation: right vertex out of range");
      set_bit(m, w);
    }
    fmasks.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < fmasks.size(); ++i)
    for (std::size_t j = i + 1; j < fmasks.size(); ++j) {
      std::uint64_t d = 0;
      for (std::size_t w = 0; w < fmasks[i].size(); ++w)
        d += std::popcount(fmasks[i][w] ^ fmasks[j][w]);
      if (static_cast<std::int64_t>(d) < min_diff) return std::nullopt;
    }

  const auto nbr = left_masks(g);
  const auto offenders = offenders_of<Mask>(
      fmasks, nbr,
      [](const Mask& a, const Mask& b) {
        Mask r(a.size());
        for (std::size_t w = 0; w < a.size(); ++w) r[w] = a[w] ^ b[w];
        return r;
      },
      [](const Mask& a, const Mask& b) {
        for (std::size_t w = 0; w < a.size(); ++w)
          if (a[w] & b[w]) return false;
        return true;
      });
  if (offenders.size() > static_cast<std::uint64_t>(family.size()) * spec.k) return offenders;
  return std::nullopt;
}

Certificate certify_multiset_exhaustive(const BipartiteGraph& g, const DisperserSpec& spec,
                                        std::uint32_t t_max, std::uint64_t budget) {
  validate_spec(g, spec);
  if (t_max < 2) throw Error("certify_multiset_exhaustive: t_max must be >= 2");
  const auto m = g.n_right();
  if (m >= 24 || (1ULL << m) > budget)
    throw BudgetExceeded("certify_multiset_exhaustive: right subset space exceeds budget");

  const auto nbr = small_left_masks(g);
  const auto min_diff = min_pair_difference(spec.delta, g.n_right());
  const std::uint32_t subset_count = 1u << m;

  Certificate cert;
  cert.spec = spec;
  cert.verdict = Verdict::certified_exhaustive;
  cert.t_max = t_max;

  std::uint64_t visited = 0;
  std::vector<std::uint32_t> family;
  std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t start) -> bool {
    for (std::uint32_t cand = start; cand < subset_count; ++cand) {
      bool far = true;
      for (const auto prev : family)
        if (std::popcount(prev ^ cand) < min_diff) {
          far = false;
          break;
        }
      if (!far) continue;
      family.push_back(cand);
      if (++visited > budget)
        throw BudgetExceeded("certify_multiset_exhaustive: family enumeration exceeds budget");
      if (family.size() >= 2) {
        const auto offenders = offenders_small(family, nbr);
        if (offenders.size() > family.size() * static_cast<std::uint64_t>(spec.k)) {
          MultisetViolation v;
          for (const auto fm : family) v.family.push_back(mask_to_vertices(fm, m));
          v.offenders = offenders;
          cert.verdict = Verdict::refuted;
          cert.witness_family = std::move(v);
          family.pop_back();
          return false;
        }
      }
      if (family.size() < t_max && !dfs(cand + 1)) {
        family.pop_back();
        return false;
      }
      family.pop_back();
    }
    return true;
  };
  dfs(0);
  return cert;
}

Certificate refute_multiset_randomized(const BipartiteGraph& g, const DisperserSpec& spec,
                                       std::uint32_t t, std::uint64_t trials,
                                       std::uint64_t seed) {
  validate_spec(g, spec);
  if (trials < 1) throw Error("refute_multiset_randomized: trials must be >= 1");
  if (t < 2) throw Error("refute_multiset_randomized: t must be >= 2");
  if (t > g.n_left() / spec.k)
    throw Error("refute_multiset_randomized: t exceeds n_left / k");

  const auto nbr = left_masks(g);
  const auto min_diff = min_pair_difference(spec.delta, g.n_right());
  const auto m = g.n_right();
  constexpr std::uint64_t kFamilyRetries = 1000;

  Certificate cert;
  cert.spec = spec;
  cert.trials = trials;
  cert.seed = seed;
  cert.t_max = t;

  Rng rng(seed);
  const auto random_subset = [&] {
    Mask s = zero_mask(m);
    for (std::size_t w = 0; w < s.size(); ++w) s[w] = rng.raw();
    const std::uint32_t tail = m % 64;
    if (tail != 0) s.back() &= (1ULL << tail) - 1;
    return s;
  };

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<Mask> family;
    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < kFamilyRetries && !ok; ++attempt) {
      family.clear();
      for (std::uint32_t i = 0; i < t; ++i) family.push_back(random_subset());
      ok = true;
      for (std::size_t i = 0; i < family.size() && ok; ++i)
        for (std::size_t j = i + 1; j < family.size() && ok; ++j) {
          std::uint64_t d = 0;
          for (std::size_t w = 0; w < family[i].size(); ++w)
            d += std::popcount(family[i][w] ^ family[j][w]);
          if (static_cast<std::int64_t>(d) < min_diff) ok = false;
        }
    }
    if (!ok)
      throw Error(
          "refute_multiset_randomized: could not sample a pairwise-far family at this delta");

    const auto offenders = offenders_of<Mask>(
        family, nbr,
        [](const Mask& a, const Mask& b) {
          Mask r(a.size());
          for (std::size_t w = 0; w < a.size(); ++w) r[w] = a[w] ^ b[w];
          return r;
        },
        [](const Mask& a, const Mask& b) {
          for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & b[w]) return false;
          return true;
        });
    if (offenders.size() > static_cast<std::uint64_t>(t) * spec.k) {
      MultisetViolation v;
      for (const auto& fm : family) {
        std::vector<std::uint32_t> verts;
        for (std::uint32_t i = 0; i < m; ++i)
          if (fm[i / 64] >> (i % 64) & 1) verts.push_back(i);
        v.family.push_back(std::move(verts));
      }
      v.offenders = offenders;
      cert.verdict = Verdict::refuted;
      cert.witness_family = std::move(v);
      return cert;
    }
  }
  cert.verdict = Verdict::passed_randomized;
  return cert;
}

SampledGraph sample_certified(std::uint32_t n_left, std::uint32_t n_right, std::uint32_t degree,
                              const DisperserSpec& spec, const SampleOptions& options) {
  if (options.attempt_budget < 1) throw Error("sample_certified: attempt budget must be >= 1");
  for (std::uint64_t attempt = 0; attempt < options.attempt_budget; ++attempt) {
    const auto graph_seed = derive_seed(options.seed, attempt);
    auto g = sample_left_regular(n_left, n_right, degree, graph_seed);

    Certificate cert;
    bool exhausted = options.force_randomized;
    if (!exhausted) {
      try {
        cert = spec.kind == DisperserKind::multiset
                   ? certify_multiset_exhaustive(g, spec, options.t_max, options.enum_budget)
                   : certify_disperser_exhaustive(g, spec, options.enum_budget);
      } catch (const BudgetExceeded&) {
        exhausted = true;
      }
    }
    if (exhausted) {
      const auto refute_seed = derive_seed(graph_seed, 1);
      if (spec.kind == DisperserKind::multiset) {
        const auto t_cap = spec.k == 0 ? 0 : g.n_left() / spec.k;
        const auto t = std::min<std::uint32_t>(options.t_max, t_cap);
        if (t < 2) throw Error("sample_certified: no feasible t for multiset refutation");
        cert = refute_multiset_randomized(g, spec, t, options.refute_trials, refute_seed);
      } else {
        cert = refute_disperser_randomized(g, spec, options.refute_trials, refute_seed);
      }
    }
    if (cert.verdict != Verdict::refuted) return {std::move(g), std::move(cert), attempt + 1};
  }
  throw Error("sample_certified: attempt budget exhausted without a non-refuted graph");
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["kind"] = cert.spec.kind == DisperserKind::multiset ? "multiset" : "disperser";
  j["k"] = cert.spec.k;
  j["delta"] = cert.spec.delta;
  j["verdict"] = verdict_name(cert.verdict);
  j["trials"] = cert.trials;
  j["seed"] = cert.seed;
  if (cert.spec.kind == DisperserKind::multiset) j["t"] = cert.t_max;
  if (cert.witness_subset) j["witness"] = {{"subset", *cert.witness_subset}};
  if (cert.witness_family)
    j["witness"] = {{"family", cert.witness_family->family},
                    {"offenders", cert.witness_family->offenders}};
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "disperser")
    cert.spec.kind = DisperserKind::plain;
  else if (kind == "multiset")
    cert.spec.kind = DisperserKind::multiset;
  else
    throw Error("certificate_from_json: unknown kind " + kind);
  cert.spec.k = j.at("k").get<std::uint32_t>();
  cert.spec.delta = j.at("delta").get<double>();
  cert.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  cert.trials = j.value("trials", std::uint64_t{0});
  cert.seed = j.value("seed", std::uint64_t{0});
  cert.t_max = j.value("t", std::uint32_t{0});
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    if (w.contains("subset"))
      cert.witness_subset = w.at("subset").get<std::vector<std::uint32_t>>();
    if (w.contains("family")) {
      MultisetViolation v;
      v.family = w.at("family").get<std::vector<std::vector<std::uint32_t>>>();
      v.offenders = w.value("offenders", std::vector<std::uint32_t>{});
      cert.witness_family = std::move(v);
    }
  }
  return cert;
}

}  // namespace graphcodes
