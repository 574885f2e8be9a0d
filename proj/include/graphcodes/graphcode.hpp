#ifndef GRAPHCODES_GRAPHCODE_HPP
#define GRAPHCODES_GRAPHCODE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "graphcodes/bigraph.hpp"
#include "graphcodes/common.hpp"
#include "graphcodes/mothercode.hpp"

namespace graphcodes {

/// Word over the tuple alphabet: position l carries the degree-sized tuple
/// (c(G_1(l)), ..., c(G_D(l))). flat holds n * degree symbols.
struct LeftWord {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  std::vector<Symbol> flat;

  std::span<const Symbol> tuple(std::uint32_t l) const {
    return {flat.data() + static_cast<std::size_t>(l) * degree, degree};
  }
  friend bool operator==(const LeftWord&, const LeftWord&) = default;
};

/// LeftWord with per-position erasure marks. Erased positions keep zeroed
/// symbols in flat; consumers must test erased[l] first.
struct ReceivedWord {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  std::vector<Symbol> flat;
  std::vector<std::uint8_t> erased;

  std::span<const Symbol> tuple(std::uint32_t l) const {
    return {flat.data() + static_cast<std::size_t>(l) * degree, degree};
  }
};

ReceivedWord to_received(const LeftWord& w);

/// 2 * errors + erasures at whole-tuple granularity.
std::uint64_t half_distance(const ReceivedWord& y, const LeftWord& c);

/// Positions where y disagrees with c; an erasure counts as a disagreement.
std::uint64_t hamming_distance(const ReceivedWord& y, const LeftWord& c);

class GraphCode;

/// encode() without the membership check. Caller guarantees the word is a
/// mother codeword (decoder outputs, enumeration, trusted trial plumbing).
LeftWord spread_unchecked(const GraphCode& gc, const Word& c);

/// The graph-concatenated code G(C): left-regular graph over a mother code of
/// length n_right. Alphabet is Sigma^degree, length is n_left.
class GraphCode {
 public:
  GraphCode(BipartiteGraph graph, std::shared_ptr<const MotherCode> mother);

  const BipartiteGraph& graph() const { return graph_; }
  const MotherCode& mother() const { return *mother_; }
  const std::shared_ptr<const MotherCode>& mother_ptr() const { return mother_; }

  std::uint32_t length() const { return graph_.n_left(); }
  std::uint32_t degree() const { return graph_.degree(); }
  std::uint32_t alphabet_q() const { return mother_->alphabet_q(); }
  std::uint64_t size() const { return mother_->size(); }

  /// Rejects words outside the mother code.
  LeftWord encode(const Word& mother_codeword) const;
  LeftWord encode_index(std::uint64_t index) const;

  /// dim_log_q / (n_left * degree), exact; nullopt when the mother dimension
  /// is not an exact rational.
  std::optional<Fraction> rate() const;

 private:
  friend LeftWord spread_unchecked(const GraphCode& gc, const Word& c);
  BipartiteGraph graph_;
  std::shared_ptr<const MotherCode> mother_;
};

struct EraseStep {
  std::uint32_t right = 0;
  std::vector<std::uint32_t> erased;  // left vertices, the order they were erased
};

struct UniqueDecodeOptions {
  std::uint32_t k = 1;
  std::optional<std::uint64_t> scan_seed;  // randomize the pair-scan order
  bool record_trace = false;
  Symbol filler = 0;  // value given to right vertices with no surviving neighbor
};

struct UniqueDecodeResult {
  std::optional<LeftWord> codeword;
  std::optional<Word> mother_codeword;  // set whenever the mother decode succeeded
  bool mother_decode_failed = false;
  std::uint64_t erasure_iterations = 0;
  std::uint64_t final_half_distance = 0;  // vs the candidate, post-erasure
  ReceivedWord final_received;
  std::vector<EraseStep> trace;  // populated when record_trace
};

/// Conflict-erasure unique decoder. Repeatedly finds two non-erased left
/// entries that disagree through a shared right vertex and erases both, then
/// reads off the unique surviving value per right vertex, mother-decodes, and
/// accepts iff the candidate is within half-distance n - k of the (post
/// erasure) received word, strictly.
UniqueDecodeResult unique_decode(const GraphCode& gc, const ReceivedWord& y,
                                 const UniqueDecodeOptions& opts);

struct ListDecodeOptions {
  std::uint32_t k = 1;
  std::uint32_t ell = 2;
  double rho = 0.5;
  bool record_trace = false;
};

struct ListCandidate {
  Word mother_codeword;
  LeftWord codeword;
};

struct ListDecodeResult {
  std::vector<ListCandidate> accepted;
  std::vector<Word> oracle_candidates;        // raw recovery output, pre-filter
  std::vector<std::vector<Symbol>> t_sets;    // surviving values per right vertex
  std::vector<std::uint32_t> phase1_erased;   // self-inconsistent left vertices
  std::vector<EraseStep> phase2_trace;        // populated when record_trace
  std::uint64_t phase2_iterations = 0;
  ReceivedWord final_received;
};

/// Two-phase list decoder. Phase 1 erases left vertices that contradict
/// themselves through parallel edges; phase 2 erases groups of ell left
/// vertices carrying ell pairwise-distinct values into one right vertex. The
/// surviving value sets feed the mother's list recovery, and candidates are
/// kept iff their Hamming distance to the input word is at most
/// (1 - 1/ell - k/n) * n (checked in exact integers).
ListDecodeResult list_decode(const GraphCode& gc, const ReceivedWord& y,
                             const ListDecodeOptions& opts);

/// Word of the two-branch folded code: position l carries the branch-1 tuple
/// plus branch-2 positions t*l .. t*l + t - 1.
struct FoldedWord {
  std::uint32_t n = 0;
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;
  std::uint32_t t = 0;
  std::vector<Symbol> g1_flat;  // n * d1
  std::vector<Symbol> g2_flat;  // n * t * d2
  friend bool operator==(const FoldedWord&, const FoldedWord&) = default;
};

struct FoldedReceived {
  std::uint32_t n = 0;
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;
  std::uint32_t t = 0;
  std::vector<Symbol> g1_flat;
  std::vector<Symbol> g2_flat;
  std::vector<std::uint8_t> erased;
};

FoldedReceived to_received(const FoldedWord& w);

/// The star construction: branch 1 spreads the outer code over g1, branch 2
/// spreads its binary concatenation with an inner code over g2. Both branches
/// share one message space. t = floor(n2 / n1); branch-2 positions past t * n1
/// are dropped and the count is reported.
class FoldedCode {
 public:
  FoldedCode(BipartiteGraph g1, std::shared_ptr<const MotherCode> outer, BipartiteGraph g2,
             InnerCode inner);

  const GraphCode& branch1() const { return branch1_; }
  const GraphCode& branch2() const { return branch2_; }
  const InnerCode& inner() const { return inner_; }
  std::uint32_t length() const { return branch1_.length(); }
  std::uint32_t t() const { return t_; }
  std::uint32_t dropped_tail() const { return dropped_tail_; }
  std::uint64_t size() const { return branch1_.size(); }

  FoldedWord encode_index(std::uint64_t index) const;
  /// Accepts outer-code codewords only.
  FoldedWord encode(const Word& outer_codeword) const;

 private:
  GraphCode branch1_;
  GraphCode branch2_;
  InnerCode inner_;
  std::uint32_t t_ = 0;
  std::uint32_t dropped_tail_ = 0;
  std::unordered_map<std::string, std::uint64_t> index_of_;
};

FoldedCode star_construct(BipartiteGraph g1, std::shared_ptr<const MotherCode> outer,
                          BipartiteGraph g2, InnerCode inner);

std::uint64_t folded_hamming_distance(const FoldedReceived& y, const FoldedWord& w);

/// Branch-1 component of a folded received word, erasures preserved.
ReceivedWord fold_project(const FoldedReceived& y);

struct FoldedCandidate {
  Word mother_codeword;
  FoldedWord codeword;
};

struct FoldedListResult {
  std::vector<FoldedCandidate> accepted;
  ListDecodeResult branch1;
};

/// List decoder for the star construction: list-decode the branch-1
/// projection, re-encode each candidate through both branches, and keep those
/// within Hamming distance (1 - gamma) * n of the full received word.
FoldedListResult fold_list_decode(const FoldedCode& fc, const FoldedReceived& y, double gamma,
                                  const ListDecodeOptions& branch1_opts);

/// Dictionary-packs tuple words into plain symbol sequences: equal tuples map
/// to equal ids, position by position comparable. For plurality analysis.
std::vector<std::vector<std::uint32_t>> pack_tuple_words(const std::vector<LeftWord>& words);

}  // namespace graphcodes

#endif
