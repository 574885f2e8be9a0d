#include "doctest.h"

#include <filesystem>
#include <memory>
#include <set>

#include "graphcodes/harness.hpp"
#include "graphcodes/json_io.hpp"

using namespace graphcodes;

namespace {

std::shared_ptr<const MotherCode> rep(std::uint32_t q, std::uint32_t len) {
  return std::make_shared<LinearCode>(LinearCode::repetition(q, len));
}

GraphCode quad_code() {
  auto g = BipartiteGraph::from_neighbors(4, 2, 2, {0, 1, 0, 1, 0, 1, 0, 1});
  return GraphCode(std::move(g), rep(3, 2));
}

GraphCode octo_code() {
  std::vector<std::uint32_t> flat;
  for (int i = 0; i < 8; ++i) {
    flat.push_back(0);
    flat.push_back(1);
  }
  return GraphCode(BipartiteGraph::from_neighbors(8, 2, 2, flat), rep(3, 2));
}

struct Damage {
  std::set<std::uint32_t> errors;
  std::set<std::uint32_t> erasures;
};

Damage classify(const GraphCode& gc, const LeftWord& truth, const ReceivedWord& y) {
  Damage d;
  for (std::uint32_t l = 0; l < truth.n; ++l) {
    if (y.erased[l]) {
      d.erasures.insert(l);
      continue;
    }
    const auto a = y.tuple(l);
    const auto b = truth.tuple(l);
    if (!std::equal(a.begin(), a.end(), b.begin())) d.errors.insert(l);
  }
  return d;
}

FoldedCode small_folded() {
  auto g1 = BipartiteGraph::from_neighbors(2, 2, 1, {0, 1});
  auto g2 = BipartiteGraph::from_neighbors(5, 4, 1, {0, 1, 2, 3, 0});
  const InnerCode inner{3, 2, {{0, 0}, {0, 1}, {1, 0}}};
  return star_construct(std::move(g1), rep(3, 2), std::move(g2), inner);
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (const auto s :
       {CorruptStrategy::uniform_random, CorruptStrategy::clustered, CorruptStrategy::targeted})
    CHECK(strategy_from_name(strategy_name(s)) == s);
  CHECK(strategy_name(CorruptStrategy::uniform_random) == "uniform-random");
  CHECK_THROWS_AS(strategy_from_name("oops"), Error);
}

TEST_CASE("corruption hits exact counts under every strategy") {
  const auto gc = octo_code();
  const auto truth = gc.encode_index(1);
  for (const auto strategy :
       {CorruptStrategy::uniform_random, CorruptStrategy::clustered, CorruptStrategy::targeted}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto y = corrupt(gc, truth, ChannelSpec{2, 1, strategy, seed});
      const auto dmg = classify(gc, truth, y);
      CHECK(dmg.errors.size() == 2);
      CHECK(dmg.erasures.size() == 1);
      CHECK(half_distance(y, truth) == 5);
    }
  }
  CHECK_THROWS_AS(corrupt(gc, truth, ChannelSpec{5, 4, CorruptStrategy::uniform_random, 0}),
                  Error);
}

TEST_CASE("corruption is seed-deterministic") {
  const auto gc = octo_code();
  const auto truth = gc.encode_index(2);
  const ChannelSpec spec{3, 2, CorruptStrategy::uniform_random, 77};
  const auto a = corrupt(gc, truth, spec);
  const auto b = corrupt(gc, truth, spec);
  CHECK(a.flat == b.flat);
  CHECK(a.erased == b.erased);
  const auto c = corrupt(gc, truth, ChannelSpec{3, 2, CorruptStrategy::uniform_random, 78});
  CHECK((a.flat != c.flat || a.erased != c.erased));
}

TEST_CASE("clustered corruption touches one wrap-around block") {
  const auto gc = octo_code();
  const auto truth = gc.encode_index(0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto y = corrupt(gc, truth, ChannelSpec{2, 2, CorruptStrategy::clustered, seed});
    const auto dmg = classify(gc, truth, y);
    std::set<std::uint32_t> touched = dmg.errors;
    touched.insert(dmg.erasures.begin(), dmg.erasures.end());
    REQUIRE(touched.size() == 4);
    bool contiguous = false;
    for (std::uint32_t start = 0; start < 8 && !contiguous; ++start) {
      std::set<std::uint32_t> block;
      for (std::uint32_t i = 0; i < 4; ++i) block.insert((start + i) % 8);
      contiguous = block == touched;
    }
    CHECK(contiguous);
  }
}

TEST_CASE("targeted corruption plants the nearest codeword") {
  const auto gc = quad_code();
  const auto truth = gc.encode_index(0);
  const auto y = corrupt(gc, truth, ChannelSpec{1, 1, CorruptStrategy::targeted, 5});
  // both alternatives are distance 4; the tie goes to the lower index, word 1
  const auto t0 = y.tuple(0);
  CHECK(t0[0] == 1);
  CHECK(t0[1] == 1);
  CHECK(y.erased == std::vector<std::uint8_t>{0, 1, 0, 0});
}

TEST_CASE("folded corruption matches counts and zeroes erased segments") {
  const auto fc = small_folded();
  const auto truth = fc.encode_index(0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto y = corrupt_folded(fc, truth, ChannelSpec{1, 1, CorruptStrategy::uniform_random, seed});
    CHECK(folded_hamming_distance(y, truth) == 2);
    std::uint32_t erased = 0;
    for (std::uint32_t l = 0; l < y.n; ++l)
      if (y.erased[l]) {
        ++erased;
        CHECK(y.g1_flat[l] == 0);
        CHECK(y.g2_flat[2 * l] == 0);
        CHECK(y.g2_flat[2 * l + 1] == 0);
      }
    CHECK(erased == 1);
  }
  // the nearest-word tie at distance 2 goes to index 1
  const auto targeted = corrupt_folded(fc, truth, ChannelSpec{1, 0, CorruptStrategy::targeted, 3});
  const auto img1 = fc.encode_index(1);
  CHECK(targeted.g1_flat[0] == img1.g1_flat[0]);
  CHECK(targeted.g2_flat[0] == img1.g2_flat[0]);
  CHECK(targeted.g2_flat[1] == img1.g2_flat[1]);
}

TEST_CASE("the unique grid enumerates the guarantee region") {
  const auto inner = full_unique_grid(4, 1, false);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected_inner = {
      {0, 0}, {0, 1}, {0, 2}, {1, 0}};
  CHECK(inner == expected_inner);

  const auto with_boundary = full_unique_grid(4, 1, true);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected_boundary = {
      {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}};
  CHECK(with_boundary == expected_boundary);

  CHECK(full_unique_grid(12, 2, false).size() == 30);
  CHECK(full_unique_grid(12, 2, true).size() == 36);
  CHECK_THROWS_AS(full_unique_grid(4, 4, false), Error);
}

TEST_CASE("unique trials succeed across the whole in-budget grid") {
  const auto gc = quad_code();
  const auto grid = full_unique_grid(4, 1, false);
  const auto rep = trial_unique(gc, 1, grid, 25, 99, CorruptStrategy::uniform_random, true);
  CHECK(rep.kind == "unique");
  CHECK(rep.n == 4);
  CHECK(rep.m == 2);
  CHECK(rep.degree == 2);
  CHECK(rep.k == 1);
  CHECK(rep.strategy == "uniform-random");
  CHECK(rep.rate == Fraction(1, 8));
  REQUIRE(rep.cells.size() == grid.size());
  for (const auto& cell : rep.cells) {
    CHECK(cell.in_budget);
    CHECK(cell.trials == 25);
    CHECK(cell.successes == 25);
    CHECK(cell.failures == 0);
    CHECK(cell.wrong_decodes == 0);
  }
  CHECK_THROWS_AS(trial_unique(gc, 1, grid, 0, 99), Error);
  CHECK_THROWS_AS(trial_unique(gc, 4, grid, 5, 99), Error);
}

TEST_CASE("list trials contain the truth inside the budget and report sizes") {
  const auto gc = quad_code();
  ListDecodeOptions opts;
  opts.k = 1;
  opts.ell = 3;
  opts.rho = 0.5;
  const auto rep = trial_list(gc, opts, {0, 1, 2}, 25, 7, CorruptStrategy::uniform_random, true);
  CHECK(rep.kind == "list");
  CHECK(rep.ell == 3);
  REQUIRE(rep.cells.size() == 3);
  // budget: 3 e <= 3 n - n - 3 k = 5
  CHECK(rep.cells[0].in_budget);
  CHECK(rep.cells[1].in_budget);
  CHECK_FALSE(rep.cells[2].in_budget);
  CHECK(rep.cells[0].successes == 25);
  CHECK(rep.cells[0].max_list == 1);
  CHECK(rep.cells[0].mean_list == doctest::Approx(1.0));
  CHECK(rep.cells[1].successes == 25);
  // two errors put the truth at scaled distance 6 > 5, so the filter drops it
  CHECK(rep.cells[2].successes == 0);
}

TEST_CASE("runtime scaling validates its inputs") {
  const auto gc = quad_code();
  std::vector<ScalingInstance> two = {{gc, 1, 1, 0}, {octo_code(), 1, 1, 0}};
  CHECK_THROWS_AS(runtime_scaling(two, 5, 1), Error);
  CHECK_THROWS_AS(runtime_scaling(two, 0, 1), Error);
}

TEST_CASE("trial reports serialize with a fixed csv header") {
  const auto gc = quad_code();
  const auto rep = trial_unique(gc, 1, {{1, 0}}, 5, 3);
  const auto csv = trial_report_csv(rep);
  CHECK(csv.rfind("e,s,trials,successes,mean_list,max_list,mean_ms\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  const auto j = trial_report_to_json(rep);
  CHECK(j.at("kind") == "unique");
  CHECK(j.at("rate") == "1/8");
  CHECK(j.at("cells").size() == 1);
  CHECK(j.at("cells")[0].at("e") == 1);
  CHECK(j.at("cells")[0].at("in_budget") == true);
}

TEST_CASE("strip_volatile removes wall-clock fields recursively") {
  const nlohmann::json j = {{"generated_at", "now"},
                            {"a", {{"mean_ms", 1.5}, {"x", 2}}},
                            {"list", {{{"mean_ms", 3.0}, {"y", 4}}}}};
  const auto stripped = strip_volatile(j);
  CHECK_FALSE(stripped.contains("generated_at"));
  CHECK_FALSE(stripped.at("a").contains("mean_ms"));
  CHECK(stripped.at("a").at("x") == 2);
  CHECK_FALSE(stripped.at("list")[0].contains("mean_ms"));
  CHECK(stripped.at("list")[0].at("y") == 4);
}

TEST_CASE("bundle building reports the failing stage") {
  CHECK_THROWS_WITH_AS(build_bundle(nlohmann::json::object()),
                       "stage parse: config needs a root seed", Error);
  CHECK_THROWS_WITH_AS(build_bundle(nlohmann::json{{"seed", 1}}),
                       "stage graph: config needs a graph section", Error);
  const auto no_mother = nlohmann::json::parse(R"({
    "seed": 1,
    "graph": {"sample": {"n_left": 6, "n_right": 3, "degree": 2}}
  })");
  CHECK_THROWS_WITH_AS(build_bundle(no_mother), "stage mother: config needs a mother section",
                       Error);
}

TEST_CASE("bundle building wires graph, mother, and parameters together") {
  const auto config = nlohmann::json::parse(R"({
    "seed": 20260823,
    "graph": {
      "sample": {"n_left": 8, "n_right": 4, "degree": 3},
      "spec": {"kind": "disperser", "k": 1, "delta": 0.5},
      "attempts": 50
    },
    "mother": {"type": "repetition", "q": 3, "length": "auto"},
    "code": {"kind": "graph", "k": 2, "ell": 3, "rho": 0.25}
  })");
  const auto bundle = build_bundle(config);
  CHECK(bundle.kind == "graph");
  REQUIRE(bundle.graph_code.has_value());
  CHECK(bundle.graph_code->length() == 8);
  CHECK(bundle.graph_code->mother().length() == 4);
  CHECK(bundle.k == 2);
  CHECK(bundle.ell == 3);
  CHECK(bundle.rho == doctest::Approx(0.25));
  CHECK(bundle.gamma == doctest::Approx(0.5));
  REQUIRE(bundle.certificate.has_value());
  CHECK(bundle.certificate->verdict == Verdict::certified_exhaustive);

  // second build from the same config is identical
  const auto again = build_bundle(config);
  CHECK(graph_to_json(again.graph_code->graph()) == graph_to_json(bundle.graph_code->graph()));
}

TEST_CASE("folded bundles build both branches") {
  const auto config = nlohmann::json::parse(R"({
    "seed": 11,
    "graph": {"sample": {"n_left": 4, "n_right": 3, "degree": 2}},
    "mother": {"type": "repetition", "q": 4, "length": "auto"},
    "code": {
      "kind": "folded",
      "k": 1, "ell": 2, "rho": 0.5, "gamma": 0.4,
      "graph2": {"sample": {"n_left": 9, "n_right": 6, "degree": 2}},
      "inner": {"find": {"q": 4, "min_rel_distance": 0.5, "max_len": 8}}
    }
  })");
  const auto bundle = build_bundle(config);
  CHECK(bundle.kind == "folded");
  REQUIRE(bundle.folded_code.has_value());
  CHECK(bundle.folded_code->length() == 4);
  CHECK(bundle.folded_code->t() == 2);
  CHECK(bundle.folded_code->dropped_tail() == 1);
  CHECK(bundle.folded_code->inner().len == 2);
}

TEST_CASE("experiments write deterministic reports") {
  const auto config = nlohmann::json::parse(R"({
    "seed": 13,
    "graph": {"sample": {"n_left": 6, "n_right": 3, "degree": 2}},
    "mother": {"type": "repetition", "q": 3, "length": "auto"},
    "code": {"kind": "graph", "k": 1},
    "experiment": {"kind": "unique", "trials": 5, "grid": [[1, 0], [0, 1]]}
  })");
  const auto base = std::filesystem::temp_directory_path() / "graphcodes_harness_test";
  std::filesystem::remove_all(base);
  const auto dir_a = (base / "a").string();
  const auto dir_b = (base / "b").string();
  run_experiment(config, dir_a);
  run_experiment(config, dir_b);

  const auto report_a = load_json_file(dir_a + "/report.json");
  const auto report_b = load_json_file(dir_b + "/report.json");
  CHECK(report_a.contains("generated_at"));
  CHECK(strip_volatile(report_a) == strip_volatile(report_b));
  CHECK(report_a.at("kind") == "unique");
  CHECK(report_a.at("results").at("cells").size() == 2);
  CHECK(std::filesystem::exists(dir_a + "/report.csv"));
  std::filesystem::remove_all(base);
}

TEST_CASE("linear and inner codes round-trip through json") {
  const LinearCode code(Field(3), {{1, 0, 1, 1}, {0, 1, 1, 2}});
  const auto back = linear_code_from_json(linear_code_to_json(code));
  CHECK(back.alphabet_q() == 3);
  CHECK(back.length() == 4);
  CHECK(back.dim() == 2);
  CHECK(back.generator() == code.generator());

  const InnerCode inner{3, 2, {{0, 0}, {0, 1}, {1, 0}}};
  const auto inner_back = inner_code_from_json(inner_code_to_json(inner));
  CHECK(inner_back.q == 3);
  CHECK(inner_back.len == 2);
  CHECK(inner_back.words == inner.words);
}

TEST_CASE("mother descriptors round-trip for every type") {
  const auto check_roundtrip = [](const MotherCode& code) {
    const auto back = mother_from_json(mother_to_json(code));
    REQUIRE(back != nullptr);
    CHECK(back->alphabet_q() == code.alphabet_q());
    CHECK(back->length() == code.length());
    CHECK(back->size() == code.size());
    CHECK(back->codewords() == code.codewords());
  };
  check_roundtrip(LinearCode::repetition(5, 3));
  check_roundtrip(TableCode(2, {{0, 0, 0}, {1, 1, 0}}));
  check_roundtrip(ExpanderCode(BipartiteGraph::from_neighbors(3, 2, 2, {0, 1, 0, 1, 0, 1})));
  check_roundtrip(ConcatenatedCode(rep(3, 2), InnerCode{3, 2, {{0, 0}, {0, 1}, {1, 0}}}));

  const auto repetition =
      mother_from_json(nlohmann::json{{"type", "repetition"}, {"q", 5}, {"length", 4}});
  CHECK(repetition->size() == 5);
  CHECK(repetition->length() == 4);
  CHECK_THROWS_AS(mother_from_json(nlohmann::json{{"type", "mystery"}}), Error);
}

TEST_CASE("received words round-trip with erasures as nulls") {
  const auto gc = quad_code();
  const auto y = corrupt(gc, gc.encode_index(1), ChannelSpec{1, 1, CorruptStrategy::uniform_random, 2});
  const auto j = received_to_json(y, gc.alphabet_q());
  std::uint32_t nulls = 0;
  for (const auto& v : j.at("values"))
    if (v.is_null()) ++nulls;
  CHECK(nulls == 1);
  const auto back = received_from_json(j);
  CHECK(back.n == y.n);
  CHECK(back.degree == y.degree);
  CHECK(back.flat == y.flat);
  CHECK(back.erased == y.erased);
}

TEST_CASE("folded received words round-trip") {
  const auto fc = small_folded();
  const auto y =
      corrupt_folded(fc, fc.encode_index(2), ChannelSpec{1, 1, CorruptStrategy::uniform_random, 8});
  const auto back = folded_received_from_json(folded_word_to_json(fc.encode_index(2), 3));
  CHECK(back.n == 2);
  CHECK(back.t == 2);
  CHECK(back.g1_flat == fc.encode_index(2).g1_flat);
  const auto corrupted_back = folded_received_from_json(folded_received_to_json(y, 3));
  CHECK(corrupted_back.g1_flat == y.g1_flat);
  CHECK(corrupted_back.g2_flat == y.g2_flat);
  CHECK(corrupted_back.erased == y.erased);
}

TEST_CASE("code bundles round-trip through json") {
  const auto config = nlohmann::json::parse(R"({
    "seed": 20260823,
    "graph": {
      "sample": {"n_left": 8, "n_right": 4, "degree": 3},
      "spec": {"kind": "disperser", "k": 1, "delta": 0.5}
    },
    "mother": {"type": "repetition", "q": 3, "length": "auto"},
    "code": {"kind": "graph", "k": 2, "ell": 3, "rho": 0.25}
  })");
  const auto bundle = build_bundle(config);
  const auto back = bundle_from_json(bundle_to_json(bundle));
  CHECK(back.kind == "graph");
  CHECK(back.k == 2);
  CHECK(back.ell == 3);
  CHECK(back.rho == doctest::Approx(0.25));
  REQUIRE(back.graph_code.has_value());
  CHECK(graph_to_json(back.graph_code->graph()) == graph_to_json(bundle.graph_code->graph()));
  CHECK(back.graph_code->rate() == bundle.graph_code->rate());
  REQUIRE(back.certificate.has_value());
  CHECK(back.certificate->verdict == bundle.certificate->verdict);

  const auto dir = std::filesystem::temp_directory_path() / "graphcodes_bundle_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "bundle.json").string();
  save_json_file(path, bundle_to_json(bundle));
  const auto from_disk = bundle_from_json(load_json_file(path));
  CHECK(from_disk.kind == "graph");
  std::filesystem::remove_all(dir);
}
