#include "graphcodes/bigraph.hpp"

#include <algorithm>

namespace graphcodes {

namespace {

std::vector<std::vector<BipartiteGraph::Entry>> build_incidence(
    std::uint32_t n_left, std::uint32_t n_right, std::uint32_t degree,
    const std::vector<std::uint32_t>& flat) {
  std::vector<std::vector<BipartiteGraph::Entry>> inc(n_right);
  for (std::uint32_t l = 0; l < n_left; ++l) {
    for (std::uint32_t i = 0; i < degree; ++i) {
      const auto w = flat[static_cast<std::size_t>(l) * degree + i];
      inc[w].push_back({l, i});
    }
  }
  // left-major fill keeps each list ascending by (left, slot) already
  return inc;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_neighbors(std::uint32_t n_left, std::uint32_t n_right,
                                              std::uint32_t degree,
                                              std::vector<std::uint32_t> flat) {
  if (n_left == 0) throw Error("BipartiteGraph: n_left must be positive");
  if (flat.size() != static_cast<std::size_t>(n_left) * degree)
    throw Error("BipartiteGraph: neighbor list size does not match n_left*degree");
  for (const auto w : flat) {
    if (w >= n_right) throw Error("BipartiteGraph: neighbor index out of range");
  }
  BipartiteGraph g;
  g.n_left_ = n_left;
  g.n_right_ = n_right;
  g.degree_ = degree;
  g.neighbors_ = std::move(flat);
  g.right_incidence_ = build_incidence(n_left, n_right, degree, g.neighbors_);
  return g;
}

bool BipartiteGraph::check_incidence() const {
  return right_incidence_ == build_incidence(n_left_, n_right_, degree_, neighbors_);
}

BipartiteGraph sample_left_regular(std::uint32_t n_left, std::uint32_t n_right,
                                   std::uint32_t degree, std::uint64_t seed) {
  if (n_left == 0 || n_right == 0 || degree == 0)
    throw Error("sample_left_regular: dimensions must be positive");
  Rng rng(seed);
  std::vector<std::uint32_t> flat(static_cast<std::size_t>(n_left) * degree);
  for (auto& w : flat) w = static_cast<std::uint32_t>(rng.below(n_right));
  return BipartiteGraph::from_neighbors(n_left, n_right, degree, std::move(flat));
}

std::vector<std::uint32_t> right_neighborhood(const BipartiteGraph& g,
                                              std::span<const std::uint32_t> left_subset) {
  std::vector<std::uint32_t> out;
  out.reserve(left_subset.size() * g.degree());
  for (const auto l : left_subset) {
    if (l >= g.n_left()) throw Error("right_neighborhood: left vertex out of range");
    const auto nb = g.neighbors(l);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

nlohmann::json graph_to_json(const BipartiteGraph& g) {
  nlohmann::json lists = nlohmann::json::array();
  for (std::uint32_t l = 0; l < g.n_left(); ++l) {
    const auto nb = g.neighbors(l);
    lists.push_back(std::vector<std::uint32_t>(nb.begin(), nb.end()));
  }
  return nlohmann::json{{"n_left", g.n_left()},
                        {"n_right", g.n_right()},
                        {"degree", g.degree()},
                        {"neighbors", std::move(lists)}};
}

BipartiteGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n_left") || !j.contains("n_right") ||
      !j.contains("degree") || !j.contains("neighbors"))
    throw Error("graph_from_json: malformed document");
  const auto n_left = j.at("n_left").get<std::uint32_t>();
  const auto n_right = j.at("n_right").get<std::uint32_t>();
  const auto degree = j.at("degree").get<std::uint32_t>();
  const auto& lists = j.at("neighbors");
  if (!lists.is_array() || lists.size() != n_left)
    throw Error("graph_from_json: neighbor list count does not match n_left");
  std::vector<std::uint32_t> flat;
  flat.reserve(static_cast<std::size_t>(n_left) * degree);
  for (const auto& row : lists) {
    if (!row.is_array() || row.size() != degree)
      throw Error("graph_from_json: neighbor list arity does not match degree");
    for (const auto& w : row) flat.push_back(w.get<std::uint32_t>());
  }
  return BipartiteGraph::from_neighbors(n_left, n_right, degree, std::move(flat));
}

}  // namespace graphcodes
