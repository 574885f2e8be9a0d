#ifndef GRAPHCODES_BIGRAPH_HPP
#define GRAPHCODES_BIGRAPH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "graphcodes/common.hpp"

namespace graphcodes {

/// Left-regular bipartite multigraph. Every left vertex has exactly `degree`
/// ordered neighbor slots in [0, n_right); parallel edges are permitted and
/// preserved, so slot index i makes neighbor(l, i) well defined.
class BipartiteGraph {
 public:
  struct Entry {
    std::uint32_t left;
    std::uint32_t slot;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  BipartiteGraph() = default;

  /// flat holds n_left * degree neighbor indices in slot order.
  /// Builds the right incidence transpose; validates dimensions and ranges.
  static BipartiteGraph from_neighbors(std::uint32_t n_left, std::uint32_t n_right,
                                       std::uint32_t degree, std::vector<std::uint32_t> flat);

  std::uint32_t n_left() const { return n_left_; }
  std::uint32_t n_right() const { return n_right_; }
  std::uint32_t degree() const { return degree_; }

  std::span<const std::uint32_t> neighbors(std::uint32_t left) const {
    return {neighbors_.data() + static_cast<std::size_t>(left) * degree_, degree_};
  }
  std::uint32_t neighbor(std::uint32_t left, std::uint32_t slot) const {
    return neighbors_[static_cast<std::size_t>(left) * degree_ + slot];
  }

  /// (left, slot) pairs incident to a right vertex, ascending by (left, slot).
  const std::vector<Entry>& incident(std::uint32_t right) const { return right_incidence_[right]; }

  /// Recomputes the transpose and compares; true iff incidence is consistent.
  bool check_incidence() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_left_ == b.n_left_ && a.n_right_ == b.n_right_ && a.degree_ == b.degree_ &&
           a.neighbors_ == b.neighbors_;
  }

 private:
  std::uint32_t n_left_ = 0;
  std::uint32_t n_right_ = 0;
  std::uint32_t degree_ = 0;
  std::vector<std::uint32_t> neighbors_;
  std::vector<std::vector<Entry>> right_incidence_;
};

/// Independent uniform slot sampling; deterministic for a fixed seed.
BipartiteGraph sample_left_regular(std::uint32_t n_left, std::uint32_t n_right,
                                   std::uint32_t degree, std::uint64_t seed);

/// Union of neighbor slots over the subset; sorted, duplicate-free.
std::vector<std::uint32_t> right_neighborhood(const BipartiteGraph& g,
                                              std::span<const std::uint32_t> left_subset);

nlohmann::json graph_to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const nlohmann::json& j);

}  // namespace graphcodes

#endif
