#include "doctest.h"

#include <memory>

#include "graphcodes/mothercode.hpp"

using namespace graphcodes;

namespace {

LinearCode ternary_423() {
  // [4, 2] over GF(3) with minimum distance 3
  return LinearCode(Field(3), {{1, 0, 1, 1}, {0, 1, 1, 2}});
}

}  // namespace

TEST_CASE("half_distance counts errors twice and erasures once") {
  const RxWord y = {0, kErased, 2};
  const Word c = {0, 1, 1};
  CHECK(half_distance(y, c) == 3);
  CHECK(half_distance(to_received(c), c) == 0);
  CHECK_THROWS_AS(half_distance(RxWord{0}, c), Error);
}

TEST_CASE("repetition code basics") {
  const auto rep = LinearCode::repetition(5, 5);
  CHECK(rep.alphabet_q() == 5);
  CHECK(rep.length() == 5);
  CHECK(rep.dim() == 1);
  CHECK(rep.size() == 5);
  CHECK(rep.distance() == 5);
  CHECK(rep.dimension_log_q() == Fraction(1));
  CHECK(rep.encode_index(3) == Word{3, 3, 3, 3, 3});
  CHECK(rep.contains(Word{2, 2, 2, 2, 2}));
  CHECK_FALSE(rep.contains(Word{2, 2, 2, 2, 1}));
  CHECK_THROWS_AS(rep.encode_index(5), Error);
  CHECK_THROWS_AS(LinearCode::repetition(5, 0), Error);
}

TEST_CASE("ternary [4,2] code has distance 3 and exact membership") {
  const auto code = ternary_423();
  CHECK(code.size() == 9);
  CHECK(code.distance() == 3);
  CHECK(code.relative_distance() == doctest::Approx(0.75));
  for (std::uint64_t i = 0; i < code.size(); ++i) CHECK(code.contains(code.encode_index(i)));
  CHECK_FALSE(code.contains(Word{1, 1, 1, 1}));
  CHECK(code.encode(Word{1, 2}) == Word{1, 2, 0, 2});
}

TEST_CASE("linear code constructor validates input") {
  CHECK_THROWS_AS(LinearCode(Field(3), {}), Error);
  CHECK_THROWS_AS(LinearCode(Field(3), {{1, 0}, {0}}), Error);
  CHECK_THROWS_AS(LinearCode(Field(3), {{1, 3}}), Error);
  // dependent rows: the second is twice the first
  CHECK_THROWS_AS(LinearCode(Field(4), {{1, 0}, {2, 0}}), Error);
  CHECK_THROWS_AS(LinearCode(Field(3), {{1, 2}, {2, 1}}), Error);
}

TEST_CASE("parity rows must be orthogonal to the generator") {
  // q = 2 goes through the packed check
  CHECK_NOTHROW(LinearCode(Field(2), {{1, 1, 1}}, {{Word{1, 1, 0}, Word{0, 1, 1}}}));
  CHECK_THROWS_AS(LinearCode(Field(2), {{1, 1, 1}}, {{Word{1, 0, 0}}}), Error);
  CHECK_THROWS_AS(LinearCode(Field(2), {{1, 1, 1}}, {{Word{1, 1}}}), Error);
  CHECK_THROWS_AS(LinearCode(Field(2), {{1, 1, 1}}, {{Word{2, 0, 0}}}), Error);
  // odd characteristic goes through the generic check
  CHECK_NOTHROW(LinearCode(Field(3), {{1, 1, 1}}, {{Word{1, 2, 0}}}));
  CHECK_THROWS_AS(LinearCode(Field(3), {{1, 1, 1}}, {{Word{1, 1, 0}}}), Error);
}

TEST_CASE("codeword enumeration honors the cap") {
  auto rep = LinearCode::repetition(5, 5);
  rep.set_enum_cap(3);
  CHECK_THROWS_AS(rep.codewords(), BudgetExceeded);
  rep.set_enum_cap(5);
  CHECK(rep.codewords().size() == 5);
}

TEST_CASE("definitional unique decoding reports ties and radius honestly") {
  const auto rep2 = LinearCode::repetition(2, 2);
  const auto tie = bf_unique_decode_full(rep2, RxWord{0, 1});
  CHECK(tie.half_dist == 2);
  CHECK(tie.ambiguous);
  CHECK(tie.word == Word{0, 0});  // enumeration order breaks the tie
  CHECK_FALSE(tie.within_unique_radius);
  CHECK_FALSE(bf_unique_decode(rep2, RxWord{0, 1}).has_value());

  const auto rep3 = LinearCode::repetition(3, 3);
  const auto hit = bf_unique_decode(rep3, RxWord{1, 1, kErased});
  REQUIRE(hit.has_value());
  CHECK(*hit == Word{1, 1, 1});
  // an error plus an erasure reaches half distance 3 and is no longer unique
  CHECK_FALSE(bf_unique_decode(rep3, RxWord{1, 2, kErased}).has_value());
}

TEST_CASE("definitional list recovery; empty lists consume the allowance") {
  const auto rep = LinearCode::repetition(3, 2);
  const auto all = bf_list_recover(rep, {{0, 1}, {1, 2}}, 0.5);
  CHECK(all == std::vector<Word>{{0, 0}, {1, 1}, {2, 2}});
  const auto tight = bf_list_recover(rep, {{0, 1}, {1, 2}}, 0.0);
  CHECK(tight == std::vector<Word>{{1, 1}});
  const auto gap = bf_list_recover(rep, {{}, {1}}, 0.5);
  CHECK(gap == std::vector<Word>{{1, 1}});
  CHECK(bf_list_recover(rep, {{}, {1}}, 0.0).empty());
  CHECK_THROWS_AS(bf_list_recover(rep, {{0}}, 0.5), Error);
}

TEST_CASE("table codes keep explicit words and reject duplicates") {
  const TableCode tc(2, {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  CHECK(tc.size() == 3);
  CHECK(tc.length() == 3);
  CHECK(tc.encode_index(1) == Word{1, 1, 0});
  CHECK(tc.distance() == 2);
  CHECK_FALSE(tc.dimension_log_q().has_value());  // 3 is not a power of 2
  CHECK_THROWS_AS(tc.encode_index(3), Error);
  CHECK_THROWS_AS(TableCode(2, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(TableCode(2, {{0, 2}}), Error);
}

TEST_CASE("expander construction nulls out even edge multiplicities") {
  // both slots of each left vertex hit the same check, so H vanishes
  const auto g = BipartiteGraph::from_neighbors(2, 1, 2, {0, 0, 0, 0});
  const auto code = expander_code_build(g);
  CHECK(code.dim() == 2);
  CHECK(code.distance() == 1);
}

TEST_CASE("expander code over two full checks is the even-weight code") {
  const auto g = BipartiteGraph::from_neighbors(3, 2, 2, {0, 1, 0, 1, 0, 1});
  const ExpanderCode code(g);
  CHECK(code.alphabet_q() == 2);
  CHECK(code.length() == 3);
  CHECK(code.size() == 4);
  CHECK(code.distance() == 2);
  CHECK(code.dimension_log_q() == Fraction(2));
  for (const auto& w : code.codewords()) {
    std::uint32_t weight = 0;
    for (const auto s : w) weight += s;
    CHECK(weight % 2 == 0);
  }
  CHECK(code.contains(Word{1, 1, 0}));
  CHECK_FALSE(code.contains(Word{1, 0, 0}));

  // flip decoding accepts codewords and words within the unique radius
  const auto exact = code.unique_decode(to_received(Word{1, 1, 0}));
  REQUIRE(exact.has_value());
  CHECK(*exact == Word{1, 1, 0});
  const auto erased = code.unique_decode(RxWord{1, 1, kErased});
  REQUIRE(erased.has_value());
  CHECK(*erased == Word{1, 1, 0});
  // weight-3 input is equidistant from three codewords
  CHECK_FALSE(code.unique_decode(to_received(Word{1, 1, 1})).has_value());
}

TEST_CASE("flip decoding repairs single errors on the even-weight code") {
  const auto g = BipartiteGraph::from_neighbors(3, 2, 2, {0, 1, 0, 1, 0, 1});
  const auto base = expander_code_build(g);
  const auto fixed = flip_decode(base, g, Word{1, 0, 0});
  REQUIRE(fixed.has_value());
  CHECK(base.contains(*fixed));
  CHECK_THROWS_AS(flip_decode(base, g, Word{2, 0, 0}), Error);
}

TEST_CASE("concatenation spreads outer symbols through the inner table") {
  const auto outer = std::make_shared<LinearCode>(
      LinearCode(Field(4), {{1, 0, 1, 1}, {0, 1, 1, 2}}));
  CHECK(outer->distance() == 3);
  const InnerCode inner{4, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  CHECK(inner_min_distance(inner) == 1);
  const ConcatenatedCode cat(outer, inner);
  CHECK(cat.alphabet_q() == 2);
  CHECK(cat.length() == 8);
  CHECK(cat.size() == 16);
  CHECK(cat.dimension_log_q() == Fraction(4));
  // index 1 encodes outer (1, 0, 1, 1); blocks follow the inner table
  CHECK(outer->encode_index(1) == Word{1, 0, 1, 1});
  CHECK(cat.encode_index(1) == Word{1, 0, 0, 0, 1, 0, 1, 0});

  CHECK_THROWS_AS(ConcatenatedCode(nullptr, inner), Error);
  CHECK_THROWS_AS(ConcatenatedCode(outer, InnerCode{3, 2, {{0, 0}, {1, 0}, {0, 1}}}), Error);
  CHECK_THROWS_AS(ConcatenatedCode(outer, InnerCode{4, 1, {{0}, {1}, {2}, {3}}}), Error);
}

TEST_CASE("inner code search finds the smallest workable length") {
  const auto inner = find_inner_code(4, 0.5, 8, 11);
  CHECK(inner.q == 4);
  CHECK(inner.len == 2);  // four distinct 2-bit words already have distance 1
  CHECK(inner.words.size() == 4);
  CHECK(inner_min_distance(inner) >= 1);
  // deterministic per seed
  const auto again = find_inner_code(4, 0.5, 8, 11);
  CHECK(again.words == inner.words);
  CHECK_THROWS_AS(find_inner_code(4, 0.9, 2, 1, 5), Error);   // infeasible distance
  CHECK_THROWS_AS(find_inner_code(16, 0.5, 3, 1), Error);     // q exceeds 2^max_len
}

TEST_CASE("brute-force distance needs at least two codewords") {
  const TableCode single(2, {{0, 1}});
  CHECK_THROWS_AS(brute_force_min_distance(single), Error);
}
