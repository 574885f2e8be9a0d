#include "graphcodes/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "graphcodes/json_io.hpp"
#include "graphcodes/plurality.hpp"

namespace graphcodes {

std::string strategy_name(CorruptStrategy s) {
  switch (s) {
    case CorruptStrategy::uniform_random:
      return "uniform-random";
    case CorruptStrategy::clustered:
      return "clustered";
    case CorruptStrategy::targeted:
      return "targeted";
  }
  throw Error("strategy_name: bad strategy");
}

CorruptStrategy strategy_from_name(const std::string& name) {
  if (name == "uniform-random") return CorruptStrategy::uniform_random;
  if (name == "clustered") return CorruptStrategy::clustered;
  if (name == "targeted") return CorruptStrategy::targeted;
  throw Error("unknown corruption strategy: " + name);
}

namespace {

// exactly `count` symbols, guaranteed to differ from orig somewhere
void random_different_block(Rng& rng, std::uint32_t q, const Symbol* orig, Symbol* out,
                            std::size_t count) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    bool differs = false;
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = static_cast<Symbol>(rng.below(q));
      if (out[i] != orig[i]) differs = true;
    }
    if (differs) return;
  }
  std::copy(orig, orig + count, out);
  out[0] = static_cast<Symbol>((orig[0] + 1) % q);
}

struct PositionPlan {
  std::vector<std::uint32_t> errors;
  std::vector<std::uint32_t> erasures;
  // for targeted errors: the codeword whose tuples get planted
  std::optional<std::uint64_t> target_index;
};

// positions of a contiguous wrap-around block, then split errors-first
PositionPlan clustered_plan(Rng& rng, std::uint32_t n, std::uint32_t e, std::uint32_t s) {
  PositionPlan plan;
  const std::uint32_t total = e + s;
  const std::uint32_t start = total == 0 ? 0 : static_cast<std::uint32_t>(rng.below(n));
  for (std::uint32_t i = 0; i < total; ++i) {
    const std::uint32_t pos = (start + i) % n;
    if (i < e)
      plan.errors.push_back(pos);
    else
      plan.erasures.push_back(pos);
  }
  return plan;
}

PositionPlan uniform_plan(Rng& rng, std::uint32_t n, std::uint32_t e, std::uint32_t s) {
  PositionPlan plan;
  auto picks = rng.sample_without_replacement(n, e + s);
  plan.errors.assign(picks.begin(), picks.begin() + e);
  plan.erasures.assign(picks.begin() + e, picks.end());
  return plan;
}

// Greedy adversary: find the nearest distinct codeword (position-level Hamming
// distance, ties to the lowest enumeration index) and plant its tuples on the
// first e differing positions. Erasures hit the remaining differing positions
// first, then agreeing positions, ascending.
template <typename DiffersAt>
PositionPlan targeted_plan(std::uint64_t code_size, std::uint32_t n, std::uint32_t e,
                           std::uint32_t s, const DiffersAt& differs_at) {
  PositionPlan plan;
  std::optional<std::uint64_t> best;
  std::uint32_t best_dist = std::numeric_limits<std::uint32_t>::max();
  for (std::uint64_t idx = 0; idx < code_size; ++idx) {
    std::uint32_t dist = 0;
    for (std::uint32_t l = 0; l < n; ++l)
      if (differs_at(idx, l)) ++dist;
    if (dist == 0) continue;  // the transmitted word itself
    if (dist < best_dist) {
      best_dist = dist;
      best = idx;
    }
  }
  if (!best) throw Error("targeted corruption needs a code with at least two words");
  plan.target_index = *best;
  std::vector<std::uint32_t> diff, same;
  for (std::uint32_t l = 0; l < n; ++l) (differs_at(*best, l) ? diff : same).push_back(l);
  std::size_t di = 0;
  while (plan.errors.size() < e && di < diff.size()) plan.errors.push_back(diff[di++]);
  while (di < diff.size() && plan.erasures.size() < s) plan.erasures.push_back(diff[di++]);
  std::size_t si = 0;
  while (plan.errors.size() < e && si < same.size()) plan.errors.push_back(same[si++]);
  while (plan.erasures.size() < s && si < same.size()) plan.erasures.push_back(same[si++]);
  return plan;
}

}  // namespace

ReceivedWord corrupt(const GraphCode& code, const LeftWord& word, const ChannelSpec& spec) {
  const std::uint32_t n = code.length();
  const std::uint32_t d = code.degree();
  if (word.n != n || word.degree != d) throw Error("corrupt: word shape mismatch");
  if (spec.errors + spec.erasures > n) throw Error("corrupt: more corruptions than positions");
  Rng rng(spec.seed);
  ReceivedWord y = to_received(word);

  PositionPlan plan;
  std::vector<LeftWord> image;  // targeted only
  switch (spec.strategy) {
    case CorruptStrategy::uniform_random:
      plan = uniform_plan(rng, n, spec.errors, spec.erasures);
      break;
    case CorruptStrategy::clustered:
      plan = clustered_plan(rng, n, spec.errors, spec.erasures);
      break;
    case CorruptStrategy::targeted: {
      const auto& words = code.mother().codewords();
      image.reserve(words.size());
      for (const auto& w : words) image.push_back(spread_unchecked(code, w));
      auto differs_at = [&](std::uint64_t idx, std::uint32_t l) {
        const auto a = image[idx].tuple(l);
        const auto b = word.tuple(l);
        return !std::equal(a.begin(), a.end(), b.begin());
      };
      plan = targeted_plan(words.size(), n, spec.errors, spec.erasures, differs_at);
      break;
    }
  }

  const std::uint32_t q = code.alphabet_q();
  for (const auto l : plan.errors) {
    Symbol* dst = y.flat.data() + static_cast<std::size_t>(l) * d;
    if (plan.target_index) {
      const auto src = image[*plan.target_index].tuple(l);
      if (!std::equal(src.begin(), src.end(), dst)) {
        std::copy(src.begin(), src.end(), dst);
        continue;
      }
      // targeted ran out of disagreeing positions; plant a random distinct tuple
    }
    std::vector<Symbol> orig(dst, dst + d);
    random_different_block(rng, q, orig.data(), dst, d);
  }
  for (const auto l : plan.erasures) {
    y.erased[l] = 1;
    std::fill_n(y.flat.begin() + static_cast<std::size_t>(l) * d, d, Symbol{0});
  }
  return y;
}

FoldedReceived corrupt_folded(const FoldedCode& code, const FoldedWord& word,
                              const ChannelSpec& spec) {
  const std::uint32_t n = code.length();
  if (word.n != n) throw Error("corrupt_folded: word shape mismatch");
  if (spec.errors + spec.erasures > n)
    throw Error("corrupt_folded: more corruptions than positions");
  Rng rng(spec.seed);
  FoldedReceived y = to_received(word);
  const std::uint32_t b1 = word.d1;
  const std::uint32_t b2 = word.t * word.d2;

  auto seg1 = [&](const FoldedWord& w, std::uint32_t l) {
    return w.g1_flat.data() + static_cast<std::size_t>(l) * b1;
  };
  auto seg2 = [&](const FoldedWord& w, std::uint32_t l) {
    return w.g2_flat.data() + static_cast<std::size_t>(l) * b2;
  };

  PositionPlan plan;
  std::vector<FoldedWord> image;
  switch (spec.strategy) {
    case CorruptStrategy::uniform_random:
      plan = uniform_plan(rng, n, spec.errors, spec.erasures);
      break;
    case CorruptStrategy::clustered:
      plan = clustered_plan(rng, n, spec.errors, spec.erasures);
      break;
    case CorruptStrategy::targeted: {
      const std::uint64_t sz = code.size();
      image.reserve(sz);
      for (std::uint64_t idx = 0; idx < sz; ++idx) image.push_back(code.encode_index(idx));
      auto differs_at = [&](std::uint64_t idx, std::uint32_t l) {
        return !std::equal(seg1(image[idx], l), seg1(image[idx], l) + b1, seg1(word, l)) ||
               !std::equal(seg2(image[idx], l), seg2(image[idx], l) + b2, seg2(word, l));
      };
      plan = targeted_plan(sz, n, spec.errors, spec.erasures, differs_at);
      break;
    }
  }

  const std::uint32_t q = code.branch1().alphabet_q();
  for (const auto l : plan.errors) {
    Symbol* d1 = y.g1_flat.data() + static_cast<std::size_t>(l) * b1;
    Symbol* d2 = y.g2_flat.data() + static_cast<std::size_t>(l) * b2;
    if (plan.target_index) {
      const FoldedWord& tgt = image[*plan.target_index];
      if (!std::equal(seg1(tgt, l), seg1(tgt, l) + b1, d1) ||
          !std::equal(seg2(tgt, l), seg2(tgt, l) + b2, d2)) {
        std::copy(seg1(tgt, l), seg1(tgt, l) + b1, d1);
        std::copy(seg2(tgt, l), seg2(tgt, l) + b2, d2);
        continue;
      }
    }
    // redraw the whole folded symbol until some coordinate moves
    bool differs = false;
    for (int attempt = 0; attempt < 100 && !differs; ++attempt) {
      std::vector<Symbol> n1(b1), n2(b2);
      for (auto& x : n1) x = static_cast<Symbol>(rng.below(q));
      for (auto& x : n2) x = static_cast<Symbol>(rng.below(2));
      differs = !std::equal(n1.begin(), n1.end(), d1) || !std::equal(n2.begin(), n2.end(), d2);
      if (differs) {
        std::copy(n1.begin(), n1.end(), d1);
        std::copy(n2.begin(), n2.end(), d2);
      }
    }
    if (!differs) d1[0] = static_cast<Symbol>((d1[0] + 1) % q);
  }
  for (const auto l : plan.erasures) {
    y.erased[l] = 1;
    std::fill_n(y.g1_flat.begin() + static_cast<std::size_t>(l) * b1, b1, Symbol{0});
    std::fill_n(y.g2_flat.begin() + static_cast<std::size_t>(l) * b2, b2, Symbol{0});
  }
  return y;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> full_unique_grid(std::uint32_t n,
                                                                      std::uint32_t k,
                                                                      bool include_boundary) {
  if (k >= n) throw Error("full_unique_grid: need k < n");
  const std::uint64_t bound = n - k;  // guarantee holds iff 2e + s < bound
  std::vector<std::pair<std::uint32_t, std::uint32_t>> grid;
  for (std::uint32_t e = 0; 2ull * e <= bound; ++e)
    for (std::uint32_t s = 0; 2ull * e + s <= bound && e + s <= n; ++s) {
      const std::uint64_t c = 2ull * e + s;
      if (c < bound || (include_boundary && c == bound)) grid.emplace_back(e, s);
    }
  return grid;
}

namespace {

Word random_codeword(const MotherCode& code, Rng& rng) {
  const LinearCode* lin = dynamic_cast<const LinearCode*>(&code);
  if (!lin)
    if (const auto* exp = dynamic_cast<const ExpanderCode*>(&code)) lin = &exp->base();
  if (lin) {
    Word msg(lin->dim());
    for (auto& s : msg) s = static_cast<Symbol>(rng.below(lin->alphabet_q()));
    return lin->encode(msg);
  }
  return code.encode_index(rng.below(code.size()));
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

}  // namespace

TrialReport trial_unique(const GraphCode& code, std::uint32_t k,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& grid,
                         std::uint64_t trials, std::uint64_t seed, CorruptStrategy strategy,
                         bool enforce) {
  if (trials == 0) throw Error("trial_unique: need at least one trial");
  const std::uint32_t n = code.length();
  if (k >= n) throw Error("trial_unique: need k < n");

  TrialReport rep;
  rep.kind = "unique";
  rep.seed = seed;
  rep.n = n;
  rep.m = code.graph().n_right();
  rep.degree = code.degree();
  rep.k = k;
  rep.strategy = strategy_name(strategy);
  rep.rate = code.rate().value_or(Fraction(0));

  UniqueDecodeOptions opts;
  opts.k = k;
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const auto [e, s] = grid[ci];
    CellReport cell;
    cell.errors = e;
    cell.erasures = s;
    cell.trials = trials;
    cell.in_budget = 2ull * e + s < static_cast<std::uint64_t>(n - k);
    const std::uint64_t cell_seed = derive_seed(seed, ci);
    double total_ms = 0.0;
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
      Rng wrng(derive_seed(cell_seed, 2 * tr));
      const Word truth = random_codeword(code.mother(), wrng);
      const LeftWord truth_left = spread_unchecked(code, truth);
      const ChannelSpec ch{e, s, strategy, derive_seed(cell_seed, 2 * tr + 1)};
      const ReceivedWord y = corrupt(code, truth_left, ch);
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = unique_decode(code, y, opts);
      total_ms += elapsed_ms(t0);
      if (res.codeword && *res.codeword == truth_left)
        ++cell.successes;
      else {
        ++cell.failures;
        if (res.codeword) ++cell.wrong_decodes;
      }
    }
    cell.mean_ms = total_ms / static_cast<double>(trials);
    if (enforce) {
      std::ostringstream where;
      where << "cell (e=" << e << ", s=" << s << ")";
      if (cell.wrong_decodes > 0) throw Error("trial_unique: wrong decode at " + where.str());
      if (cell.in_budget && cell.successes != trials)
        throw Error("trial_unique: in-budget failure at " + where.str());
    }
    rep.cells.push_back(cell);
  }
  return rep;
}

TrialReport trial_list(const GraphCode& code, const ListDecodeOptions& opts,
                       const std::vector<std::uint32_t>& error_counts, std::uint64_t trials,
                       std::uint64_t seed, CorruptStrategy strategy, bool enforce) {
  if (trials == 0) throw Error("trial_list: need at least one trial");
  const std::uint32_t n = code.length();
  if (opts.k >= n) throw Error("trial_list: need k < n");

  TrialReport rep;
  rep.kind = "list";
  rep.seed = seed;
  rep.n = n;
  rep.m = code.graph().n_right();
  rep.degree = code.degree();
  rep.k = opts.k;
  rep.ell = opts.ell;
  rep.rho = opts.rho;
  rep.strategy = strategy_name(strategy);
  rep.rate = code.rate().value_or(Fraction(0));

  // containment is guaranteed while e <= (1 - 1/ell - k/n) * n, exactly:
  const std::int64_t budget =
      static_cast<std::int64_t>(opts.ell) * n - n - static_cast<std::int64_t>(opts.ell) * opts.k;
  for (std::size_t ci = 0; ci < error_counts.size(); ++ci) {
    const std::uint32_t e = error_counts[ci];
    CellReport cell;
    cell.errors = e;
    cell.erasures = 0;
    cell.trials = trials;
    cell.in_budget = static_cast<std::int64_t>(opts.ell) * e <= budget;
    const std::uint64_t cell_seed = derive_seed(seed, ci);
    double total_ms = 0.0;
    std::uint64_t total_list = 0;
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
      Rng wrng(derive_seed(cell_seed, 2 * tr));
      const Word truth = random_codeword(code.mother(), wrng);
      const LeftWord truth_left = spread_unchecked(code, truth);
      const ChannelSpec ch{e, 0, strategy, derive_seed(cell_seed, 2 * tr + 1)};
      const ReceivedWord y = corrupt(code, truth_left, ch);
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = list_decode(code, y, opts);
      total_ms += elapsed_ms(t0);
      total_list += res.accepted.size();
      cell.max_list = std::max<std::uint64_t>(cell.max_list, res.accepted.size());
      bool contained = false;
      for (const auto& cand : res.accepted)
        if (cand.codeword == truth_left) {
          contained = true;
          break;
        }
      if (contained)
        ++cell.successes;
      else
        ++cell.failures;
    }
    cell.mean_ms = total_ms / static_cast<double>(trials);
    cell.mean_list = static_cast<double>(total_list) / static_cast<double>(trials);
    if (enforce && cell.in_budget && cell.successes != trials) {
      std::ostringstream where;
      where << "trial_list: in-budget containment failure at e=" << e;
      throw Error(where.str());
    }
    rep.cells.push_back(cell);
  }
  return rep;
}

ScalingReport runtime_scaling(const std::vector<ScalingInstance>& instances, std::uint64_t trials,
                              std::uint64_t seed) {
  if (trials == 0) throw Error("runtime_scaling: need at least one trial");
  {
    std::vector<std::uint32_t> sizes;
    for (const auto& inst : instances) sizes.push_back(inst.code.length());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (sizes.size() < 3) throw Error("runtime_scaling: need at least 3 distinct sizes");
  }

  ScalingReport rep;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const auto& inst = instances[idx];
    const std::uint64_t inst_seed = derive_seed(seed, idx);
    UniqueDecodeOptions opts;
    opts.k = inst.k;
    ScalingPoint point;
    point.n = inst.code.length();
    point.trials = trials;
    double total_ms = 0.0;
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
      Rng wrng(derive_seed(inst_seed, 2 * tr));
      const Word truth = random_codeword(inst.code.mother(), wrng);
      const LeftWord truth_left = spread_unchecked(inst.code, truth);
      const ChannelSpec ch{inst.errors, inst.erasures, CorruptStrategy::uniform_random,
                           derive_seed(inst_seed, 2 * tr + 1)};
      const ReceivedWord y = corrupt(inst.code, truth_left, ch);
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = unique_decode(inst.code, y, opts);
      total_ms += elapsed_ms(t0);
      if (res.codeword && *res.codeword == truth_left)
        ++point.successes;
      else if (res.codeword)
        ++point.wrong_decodes;
    }
    point.mean_ms = total_ms / static_cast<double>(trials);
    if (!(point.mean_ms > 0.0))
      throw Error("runtime_scaling: timer resolution too coarse at this size");
    rep.points.push_back(point);
  }

  // least-squares slope of ln(mean_ms) against ln(n)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(rep.points.size());
  for (const auto& p : rep.points) {
    const double x = std::log(static_cast<double>(p.n));
    const double y = std::log(p.mean_ms);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return rep;
}

namespace {

nlohmann::json cell_to_json(const CellReport& c) {
  return {{"e", c.errors},           {"s", c.erasures},
          {"trials", c.trials},      {"successes", c.successes},
          {"failures", c.failures},  {"wrong_decodes", c.wrong_decodes},
          {"in_budget", c.in_budget}, {"mean_list", c.mean_list},
          {"max_list", c.max_list},  {"mean_ms", c.mean_ms}};
}

std::string fraction_string(const Fraction& f) {
  std::ostringstream out;
  out << f;
  return out.str();
}

}  // namespace

nlohmann::json trial_report_to_json(const TrialReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) cells.push_back(cell_to_json(c));
  return {{"kind", report.kind},
          {"seed", report.seed},
          {"n", report.n},
          {"m", report.m},
          {"degree", report.degree},
          {"k", report.k},
          {"ell", report.ell},
          {"rho", report.rho},
          {"strategy", report.strategy},
          {"rate", fraction_string(report.rate)},
          {"cells", cells}};
}

std::string trial_report_csv(const TrialReport& report) {
  std::ostringstream out;
  out << "e,s,trials,successes,mean_list,max_list,mean_ms\n";
  for (const auto& c : report.cells)
    out << c.errors << ',' << c.erasures << ',' << c.trials << ',' << c.successes << ','
        << c.mean_list << ',' << c.max_list << ',' << c.mean_ms << '\n';
  return out.str();
}

nlohmann::json scaling_report_to_json(const ScalingReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.points)
    points.push_back({{"n", p.n},
                      {"trials", p.trials},
                      {"mean_ms", p.mean_ms},
                      {"successes", p.successes},
                      {"wrong_decodes", p.wrong_decodes}});
  return {{"exponent", report.exponent}, {"points", points}};
}

nlohmann::json strip_volatile(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("generated_at");
    j.erase("mean_ms");
    for (auto& [key, value] : j.items()) value = strip_volatile(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_volatile(value);
  }
  return j;
}

namespace {

template <typename Fn>
auto run_stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw Error(std::string("stage ") + name + ": " + e.what());
  }
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::uint32_t ceil_with_tol(double x) {
  return static_cast<std::uint32_t>(std::ceil(x - kThresholdTol));
}

struct BuiltGraph {
  BipartiteGraph graph;
  std::optional<Certificate> certificate;
};

DisperserSpec parse_spec(const nlohmann::json& p) {
  DisperserSpec spec;
  spec.k = p.at("k").get<std::uint32_t>();
  spec.delta = p.at("delta").get<double>();
  const auto kind_name = p.value("kind", std::string("disperser"));
  if (kind_name == "disperser")
    spec.kind = DisperserKind::plain;
  else if (kind_name == "multiset")
    spec.kind = DisperserKind::multiset;
  else
    throw Error("unknown disperser kind: " + kind_name);
  return spec;
}

SampleOptions parse_sample_options(const nlohmann::json& jg, std::uint64_t stream_seed) {
  SampleOptions so;
  so.seed = stream_seed;
  so.attempt_budget = jg.value("attempts", 50u);
  so.refute_trials = jg.value("trials", 500u);
  so.t_max = jg.value("t", 3u);
  const auto certify = jg.value("certify", std::string("auto"));
  if (certify == "randomized")
    so.force_randomized = true;
  else if (certify != "auto")
    throw Error("certify must be auto or randomized");
  return so;
}

BuiltGraph build_graph_section(const nlohmann::json& jg, std::uint64_t stream_seed) {
  if (jg.contains("file")) {
    return {graph_from_json(load_json_file(jg.at("file").get<std::string>())), std::nullopt};
  }
  if (jg.contains("sample")) {
    const auto& s = jg.at("sample");
    const auto n_left = s.at("n_left").get<std::uint32_t>();
    const auto n_right = s.at("n_right").get<std::uint32_t>();
    const auto degree = s.at("degree").get<std::uint32_t>();
    if (jg.contains("spec")) {
      auto sampled = sample_certified(n_left, n_right, degree, parse_spec(jg.at("spec")),
                                      parse_sample_options(jg, stream_seed));
      return {std::move(sampled.graph), std::move(sampled.certificate)};
    }
    return {sample_left_regular(n_left, n_right, degree, stream_seed), std::nullopt};
  }
  if (jg.contains("plan")) {
    const auto& p = jg.at("plan");
    const DisperserSpec spec = parse_spec(p);
    const auto n_left = p.at("n_left").get<std::uint32_t>();
    const PlannedParams pp = spec.kind == DisperserKind::plain
                                 ? plan_disperser_params(n_left, spec.k, spec.delta)
                                 : plan_multiset_params(n_left, spec.k, spec.delta);
    auto sampled =
        sample_certified(n_left, pp.n_right, pp.degree, spec, parse_sample_options(jg, stream_seed));
    return {std::move(sampled.graph), std::move(sampled.certificate)};
  }
  throw Error("graph section needs file, sample, or plan");
}

std::shared_ptr<const MotherCode> build_mother_section(const nlohmann::json& jm,
                                                       std::uint32_t n_right,
                                                       std::uint64_t stream_seed) {
  if (jm.contains("file")) return mother_from_json(load_json_file(jm.at("file").get<std::string>()));
  nlohmann::json j = jm;
  if (j.contains("length") && j.at("length").is_string()) {
    if (j.at("length").get<std::string>() != "auto")
      throw Error("mother length must be a number or \"auto\"");
    j["length"] = n_right;
  }
  const auto type = j.value("type", std::string("linear"));
  if (type == "expander") {
    const auto& jg = j.at("graph");
    if (jg.contains("sample")) {
      const auto& s = jg.at("sample");
      return std::make_shared<ExpanderCode>(sample_left_regular(
          s.at("n_left").get<std::uint32_t>(), s.at("n_right").get<std::uint32_t>(),
          s.at("degree").get<std::uint32_t>(), stream_seed));
    }
    if (jg.contains("file"))
      return std::make_shared<ExpanderCode>(
          graph_from_json(load_json_file(jg.at("file").get<std::string>())));
    return std::make_shared<ExpanderCode>(graph_from_json(jg));
  }
  if (type == "concat") {
    auto outer = build_mother_section(j.at("outer"), n_right, derive_seed(stream_seed, 0));
    InnerCode inner;
    const auto& ji = j.at("inner");
    if (ji.contains("find")) {
      const auto& f = ji.at("find");
      inner = find_inner_code(f.at("q").get<std::uint32_t>(), f.at("min_rel_distance").get<double>(),
                              f.at("max_len").get<std::uint32_t>(), derive_seed(stream_seed, 1));
    } else {
      inner = inner_code_from_json(ji);
    }
    return std::make_shared<ConcatenatedCode>(std::move(outer), std::move(inner));
  }
  return mother_from_json(j);
}

InnerCode build_inner_section(const nlohmann::json& ji, std::uint64_t stream_seed) {
  if (ji.contains("find")) {
    const auto& f = ji.at("find");
    return find_inner_code(f.at("q").get<std::uint32_t>(), f.at("min_rel_distance").get<double>(),
                           f.at("max_len").get<std::uint32_t>(), stream_seed);
  }
  if (ji.contains("file")) return inner_code_from_json(load_json_file(ji.at("file").get<std::string>()));
  return inner_code_from_json(ji);
}

}  // namespace

CodeBundle build_bundle(const nlohmann::json& config) {
  const std::uint64_t root = run_stage("parse", [&] {
    if (!config.contains("seed")) throw Error("config needs a root seed");
    return config.at("seed").get<std::uint64_t>();
  });

  const BuiltGraph bg = run_stage("graph", [&] {
    if (!config.contains("graph")) throw Error("config needs a graph section");
    return build_graph_section(config.at("graph"), derive_seed(root, 1));
  });

  const auto mother = run_stage("mother", [&] {
    if (!config.contains("mother")) throw Error("config needs a mother section");
    return build_mother_section(config.at("mother"), bg.graph.n_right(), derive_seed(root, 2));
  });

  return run_stage("code", [&] {
    CodeBundle bundle;
    const nlohmann::json jc =
        config.contains("code") ? config.at("code") : nlohmann::json::object();
    bundle.kind = jc.value("kind", std::string("graph"));
    bundle.k = jc.value("k", 1u);
    bundle.ell = jc.value("ell", 2u);
    bundle.rho = jc.value("rho", 0.5);
    bundle.gamma = jc.value("gamma", 0.5);
    bundle.certificate = bg.certificate;
    if (bundle.kind == "graph") {
      bundle.graph_code.emplace(bg.graph, mother);
    } else if (bundle.kind == "folded") {
      BuiltGraph bg2 = build_graph_section(jc.at("graph2"), derive_seed(root, 3));
      bundle.certificate2 = bg2.certificate;
      InnerCode inner = build_inner_section(jc.at("inner"), derive_seed(root, 4));
      bundle.folded_code.emplace(bg.graph, mother, std::move(bg2.graph), std::move(inner));
    } else {
      throw Error("code kind must be graph or folded");
    }
    return bundle;
  });
}

void run_experiment(const nlohmann::json& config, const std::string& out_dir) {
  const std::uint64_t root = run_stage("parse", [&] {
    if (!config.contains("seed")) throw Error("config needs a root seed");
    if (!config.contains("experiment")) throw Error("config needs an experiment section");
    return config.at("seed").get<std::uint64_t>();
  });
  const auto& ex = config.at("experiment");
  const auto kind = ex.value("kind", std::string("unique"));

  nlohmann::json report;
  report["config"] = config;
  report["kind"] = kind;
  std::optional<TrialReport> trial_rep;

  if (kind == "scaling") {
    const auto scaling = run_stage("experiment", [&] {
      std::vector<std::uint32_t> sizes = ex.at("sizes").get<std::vector<std::uint32_t>>();
      const auto alpha_inv = ex.value("alpha_inv", 8u);
      const auto delta = ex.value("delta", 0.75);
      const auto check_degree = ex.value("check_degree", 5u);
      const auto errors_divisor = ex.value("errors_divisor", 1024u);
      const auto trials = ex.value("trials", std::uint64_t{20});
      std::vector<ScalingInstance> instances;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::uint32_t n = sizes[i];
        const std::uint32_t k = n / alpha_inv;
        if (k == 0 || k >= n) throw Error("scaling: size too small for alpha_inv");
        const std::uint32_t degree =
            ceil_with_tol(4.0 * std::log2(static_cast<double>(n) / k) / delta);
        const std::uint32_t m = 2 * n;
        auto mother = std::make_shared<ExpanderCode>(
            sample_left_regular(m, m / 2, check_degree, derive_seed(root, 11 + 2 * i)));
        BipartiteGraph g = sample_left_regular(n, m, degree, derive_seed(root, 10 + 2 * i));
        instances.push_back(ScalingInstance{GraphCode(std::move(g), std::move(mother)), k,
                                            std::max(1u, n / errors_divisor), 0});
      }
      return runtime_scaling(instances, trials, derive_seed(root, 5));
    });
    report["results"] = scaling_report_to_json(scaling);
  } else {
    const CodeBundle bundle = build_bundle(config);
    if (bundle.certificate) report["certificate"] = certificate_to_json(*bundle.certificate);
    if (bundle.certificate2) report["certificate2"] = certificate_to_json(*bundle.certificate2);
    const auto& gc = bundle.graph_code;
    const auto& fc = bundle.folded_code;

    run_stage("experiment", [&] {
      if (kind == "unique") {
        if (!gc) throw Error("unique experiments need a graph code");
        const auto k = ex.value("k", bundle.k);
        const auto trials = ex.value("trials", std::uint64_t{200});
        const auto strategy = strategy_from_name(ex.value("strategy", std::string("uniform-random")));
        std::vector<std::pair<std::uint32_t, std::uint32_t>> grid;
        if (ex.contains("grid")) {
          for (const auto& cell : ex.at("grid"))
            grid.emplace_back(cell.at(0).get<std::uint32_t>(), cell.at(1).get<std::uint32_t>());
        } else {
          grid = full_unique_grid(gc->length(), k, ex.value("boundary", true));
        }
        trial_rep = trial_unique(*gc, k, grid, trials, derive_seed(root, 5), strategy,
                                 ex.value("enforce", false));
        report["results"] = trial_report_to_json(*trial_rep);
      } else if (kind == "list") {
        if (!gc) throw Error("list experiments need a graph code");
        ListDecodeOptions lo;
        lo.k = ex.value("k", bundle.k);
        lo.ell = ex.value("ell", bundle.ell);
        lo.rho = ex.value("rho", bundle.rho);
        const auto trials = ex.value("trials", std::uint64_t{200});
        const auto strategy = strategy_from_name(ex.value("strategy", std::string("uniform-random")));
        std::vector<std::uint32_t> errors;
        if (ex.contains("errors"))
          errors = ex.at("errors").get<std::vector<std::uint32_t>>();
        else if (ex.contains("max_errors"))
          for (std::uint32_t e = 0; e <= ex.at("max_errors").get<std::uint32_t>(); ++e)
            errors.push_back(e);
        else
          throw Error("list experiments need errors or max_errors");
        trial_rep = trial_list(*gc, lo, errors, trials, derive_seed(root, 5), strategy,
                               ex.value("enforce", false));
        report["results"] = trial_report_to_json(*trial_rep);
      } else if (kind == "plurality") {
        if (!gc) throw Error("plurality experiments need a graph code");
        const auto L = ex.at("L").get<std::uint32_t>();
        const auto k = ex.value("k", bundle.k);
        std::vector<LeftWord> words;
        for (const auto& w : gc->mother().codewords()) words.push_back(spread_unchecked(*gc, w));
        const auto packed = pack_tuple_words(words);
        ScanOptions so;
        so.mode = ex.value("mode", std::string("exhaustive")) == "sampled" ? ScanMode::sampled
                                                                           : ScanMode::exhaustive;
        so.trials = ex.value("trials", std::uint64_t{1000});
        so.seed = derive_seed(root, 5);
        const auto res = scan_plurality(packed, L, so);
        const std::uint64_t bound = gc->length() + choose(L, 2) * k;
        report["results"] = {{"L", L},
                             {"worst_sum", res.sum},
                             {"bound", bound},
                             {"holds", res.sum <= bound},
                             {"witness", res.witness}};
      } else if (kind == "fold") {
        if (!fc) throw Error("fold experiments need a folded code");
        ListDecodeOptions lo;
        lo.k = ex.value("k", bundle.k);
        lo.ell = ex.value("ell", bundle.ell);
        lo.rho = ex.value("rho", bundle.rho);
        const auto gamma = ex.value("gamma", bundle.gamma);
        const auto trials = ex.value("trials", std::uint64_t{200});
        const auto errors = ex.value("errors", 0u);
        const auto strategy = strategy_from_name(ex.value("strategy", std::string("uniform-random")));
        const std::uint64_t stream = derive_seed(root, 5);
        std::uint64_t successes = 0, total_list = 0, max_list = 0;
        for (std::uint64_t tr = 0; tr < trials; ++tr) {
          Rng wrng(derive_seed(stream, 2 * tr));
          const FoldedWord truth = fc->encode_index(wrng.below(fc->size()));
          const ChannelSpec ch{errors, 0, strategy, derive_seed(stream, 2 * tr + 1)};
          const FoldedReceived y = corrupt_folded(*fc, truth, ch);
          const auto res = fold_list_decode(*fc, y, gamma, lo);
          total_list += res.accepted.size();
          max_list = std::max<std::uint64_t>(max_list, res.accepted.size());
          for (const auto& cand : res.accepted)
            if (cand.codeword == truth) {
              ++successes;
              break;
            }
        }
        report["results"] = {{"trials", trials},
                             {"errors", errors},
                             {"successes", successes},
                             {"containment", successes == trials},
                             {"mean_list", static_cast<double>(total_list) / trials},
                             {"max_list", max_list},
                             {"t", fc->t()},
                             {"dropped_tail", fc->dropped_tail()}};
      } else {
        throw Error("unknown experiment kind: " + kind);
      }
      return 0;
    });
  }

  run_stage("report", [&] {
    std::filesystem::create_directories(out_dir);
    report["generated_at"] = iso_now();
    save_json_file(out_dir + "/report.json", report);
    if (trial_rep) {
      std::ofstream csv(out_dir + "/report.csv");
      if (!csv) throw Error("cannot write " + out_dir + "/report.csv");
      csv << trial_report_csv(*trial_rep);
    }
    return 0;
  });
}

}  // namespace graphcodes
