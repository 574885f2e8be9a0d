#include "doctest.h"

#include "graphcodes/bigraph.hpp"

using namespace graphcodes;

TEST_CASE("from_neighbors builds slots and the right transpose") {
  const auto g = BipartiteGraph::from_neighbors(3, 2, 2, {0, 1, 0, 1, 0, 1});
  CHECK(g.n_left() == 3);
  CHECK(g.n_right() == 2);
  CHECK(g.degree() == 2);
  CHECK(g.neighbor(0, 0) == 0);
  CHECK(g.neighbor(0, 1) == 1);
  const auto nb = g.neighbors(2);
  CHECK(std::vector<std::uint32_t>(nb.begin(), nb.end()) == std::vector<std::uint32_t>{0, 1});

  // incidence ascending by (left, slot)
  const auto& inc0 = g.incident(0);
  REQUIRE(inc0.size() == 3);
  CHECK(inc0[0] == BipartiteGraph::Entry{0, 0});
  CHECK(inc0[1] == BipartiteGraph::Entry{1, 0});
  CHECK(inc0[2] == BipartiteGraph::Entry{2, 0});
  CHECK(g.check_incidence());
}

TEST_CASE("from_neighbors validates shape and range") {
  CHECK_THROWS_AS(BipartiteGraph::from_neighbors(2, 2, 2, {0, 1, 0}), Error);
  CHECK_THROWS_AS(BipartiteGraph::from_neighbors(2, 2, 1, {0, 2}), Error);
}

TEST_CASE("parallel edges are preserved as separate slots") {
  const auto g = BipartiteGraph::from_neighbors(1, 2, 3, {1, 1, 0});
  CHECK(g.neighbor(0, 0) == 1);
  CHECK(g.neighbor(0, 1) == 1);
  CHECK(g.neighbor(0, 2) == 0);
  const auto& inc1 = g.incident(1);
  REQUIRE(inc1.size() == 2);
  CHECK(inc1[0] == BipartiteGraph::Entry{0, 0});
  CHECK(inc1[1] == BipartiteGraph::Entry{0, 1});
}

TEST_CASE("sampling is seed-deterministic") {
  const auto a = sample_left_regular(12, 5, 4, 7);
  const auto b = sample_left_regular(12, 5, 4, 7);
  const auto c = sample_left_regular(12, 5, 4, 8);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.n_left() == 12);
  CHECK(a.n_right() == 5);
  CHECK(a.degree() == 4);
  for (std::uint32_t l = 0; l < a.n_left(); ++l)
    for (const auto w : a.neighbors(l)) CHECK(w < 5);
  CHECK(a.check_incidence());
}

TEST_CASE("right_neighborhood unions slots, sorted and deduplicated") {
  const auto g = BipartiteGraph::from_neighbors(4, 5, 2, {4, 0, 0, 1, 2, 2, 3, 1});
  const std::vector<std::uint32_t> subset01 = {0, 1};
  CHECK(right_neighborhood(g, subset01) == std::vector<std::uint32_t>{0, 1, 4});
  const std::vector<std::uint32_t> subset2 = {2};
  CHECK(right_neighborhood(g, subset2) == std::vector<std::uint32_t>{2});
  const std::vector<std::uint32_t> all = {0, 1, 2, 3};
  CHECK(right_neighborhood(g, all) == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("graph json round-trips") {
  const auto g = sample_left_regular(6, 4, 3, 99);
  const auto j = graph_to_json(g);
  const auto back = graph_from_json(j);
  CHECK(back == g);
}
