#ifndef GRAPHCODES_MOTHERCODE_HPP
#define GRAPHCODES_MOTHERCODE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "graphcodes/bigraph.hpp"
#include "graphcodes/common.hpp"
#include "graphcodes/field.hpp"

namespace graphcodes {

using Word = std::vector<Symbol>;

/// Received symbol: a value in [0, q) or kErased.
inline constexpr std::int32_t kErased = -1;
using RxSymbol = std::int32_t;
using RxWord = std::vector<RxSymbol>;

RxWord to_received(const Word& w);

/// 2*(symbol errors) + (erasures) between a received word and a codeword.
std::uint64_t half_distance(const RxWord& y, const Word& c);

inline constexpr std::uint64_t kDefaultCodewordCap = 1u << 20;

/// Code placed on the right vertices before graph concatenation. Implementations
/// are immutable after construction; decode operations are pure.
class MotherCode {
 public:
  virtual ~MotherCode() = default;

  virtual std::uint32_t alphabet_q() const = 0;
  virtual std::size_t length() const = 0;
  virtual std::uint64_t size() const = 0;

  /// Codeword for message index in [0, size()); fixes the enumeration order.
  virtual Word encode_index(std::uint64_t index) const = 0;

  /// All codewords in enumeration order. Cached; throws BudgetExceeded when
  /// size() > enum_cap().
  const std::vector<Word>& codewords() const;

  /// Decodes to the codeword within unique half-distance radius, or failure.
  /// Default: brute force over the enumerated code.
  virtual std::optional<Word> unique_decode(const RxWord& y) const;

  /// All codewords agreeing with lists[w] on >= (1-rho)*length positions.
  /// Default: brute force over the enumerated code.
  virtual std::vector<Word> list_recover(const std::vector<std::vector<Symbol>>& lists,
                                         double rho) const;

  /// Exact minimum distance; computed lazily by brute force unless overridden.
  std::uint64_t distance() const;
  double relative_distance() const;
  bool distance_computable() const;

  /// log_q(size) as an exact fraction when size is a perfect power of q.
  virtual std::optional<Fraction> dimension_log_q() const;

  virtual bool contains(const Word& w) const;

  std::uint64_t enum_cap() const { return enum_cap_; }
  void set_enum_cap(std::uint64_t cap) { enum_cap_ = cap; }

 protected:
  virtual std::uint64_t compute_distance() const;

 private:
  mutable std::optional<std::vector<Word>> codeword_cache_;
  mutable std::optional<std::uint64_t> distance_cache_;
  std::uint64_t enum_cap_ = kDefaultCodewordCap;
};

struct BfUniqueResult {
  Word word;  // global half-distance minimizer in enumeration order
  std::uint64_t half_dist = 0;
  bool ambiguous = false;             // minimum attained by more than one codeword
  bool within_unique_radius = false;  // half_dist < code distance
};

/// Definitional decoder: scans every codeword. Deterministic tie-break by
/// enumeration order.
BfUniqueResult bf_unique_decode_full(const MotherCode& code, const RxWord& y);
/// Success iff the minimum half distance is below the code distance.
std::optional<Word> bf_unique_decode(const MotherCode& code, const RxWord& y);

/// Definitional list recovery; empty lists never match and so consume the rho
/// allowance.
std::vector<Word> bf_list_recover(const MotherCode& code,
                                  const std::vector<std::vector<Symbol>>& lists, double rho);

/// Exact minimum distance by enumeration (minimum nonzero weight for linear codes).
std::uint64_t brute_force_min_distance(const MotherCode& code);

/// Linear [length, dim] code over GF(q) given by a full-rank generator.
class LinearCode : public MotherCode {
 public:
  LinearCode(Field field, std::vector<Word> generator_rows,
             std::optional<std::vector<Word>> parity = std::nullopt);

  static LinearCode repetition(std::uint32_t q, std::uint32_t length);

  const Field& field() const { return field_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(generator_.size()); }
  const std::vector<Word>& generator() const { return generator_; }
  const std::optional<std::vector<Word>>& parity() const { return parity_; }

  Word encode(const Word& message) const;

  std::uint32_t alphabet_q() const override { return field_.q(); }
  std::size_t length() const override { return length_; }
  std::uint64_t size() const override;
  Word encode_index(std::uint64_t index) const override;
  std::optional<Fraction> dimension_log_q() const override { return Fraction(dim()); }
  bool contains(const Word& w) const override;

 protected:
  std::uint64_t compute_distance() const override;  // min nonzero weight

 private:
  Field field_;
  std::size_t length_;
  std::vector<Word> generator_;
  std::optional<std::vector<Word>> parity_;
  // row-reduced copy of the generator for exact membership tests
  std::vector<Word> rref_;
  std::vector<std::uint32_t> pivots_;
};

/// Explicit codeword table (used for inner codes and small nonlinear examples).
class TableCode : public MotherCode {
 public:
  TableCode(std::uint32_t q, std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }

  std::uint32_t alphabet_q() const override { return q_; }
  std::size_t length() const override { return length_; }
  std::uint64_t size() const override { return words_.size(); }
  Word encode_index(std::uint64_t index) const override;

 private:
  std::uint32_t q_;
  std::size_t length_;
  std::vector<Word> words_;
};

/// Binary code {x : xH = 0} where H has one parity row per right vertex of g and
/// H[w][v] = parity of the edge multiplicity between left v and right w.
LinearCode expander_code_build(const BipartiteGraph& g);

/// Classical bit-flip decoding on the expander parity structure. Never returns
/// a non-codeword; flips are capped at n_left*degree.
std::optional<Word> flip_decode(const LinearCode& code, const BipartiteGraph& g, const Word& y);

/// Expander-code mother: flip decoding accelerates unique_decode, with the
/// brute-force oracle as fallback while the code stays enumerable.
class ExpanderCode : public MotherCode {
 public:
  explicit ExpanderCode(BipartiteGraph g);

  const BipartiteGraph& graph() const { return graph_; }
  const LinearCode& base() const { return base_; }

  std::uint32_t alphabet_q() const override { return 2; }
  std::size_t length() const override { return base_.length(); }
  std::uint64_t size() const override { return base_.size(); }
  Word encode_index(std::uint64_t index) const override { return base_.encode_index(index); }
  std::optional<Word> unique_decode(const RxWord& y) const override;
  std::optional<Fraction> dimension_log_q() const override { return base_.dimension_log_q(); }
  bool contains(const Word& w) const override { return base_.contains(w); }

 protected:
  std::uint64_t compute_distance() const override;

 private:
  BipartiteGraph graph_;
  LinearCode base_;
};

/// q binary words indexed by outer symbol.
struct InnerCode {
  std::uint32_t q = 0;
  std::uint32_t len = 0;
  std::vector<Word> words;
};

std::uint64_t inner_min_distance(const InnerCode& inner);

/// Binary concatenation: encode through the outer code, then map each outer
/// symbol through the inner table.
class ConcatenatedCode : public MotherCode {
 public:
  ConcatenatedCode(std::shared_ptr<const MotherCode> outer, InnerCode inner);

  const MotherCode& outer() const { return *outer_; }
  const std::shared_ptr<const MotherCode>& outer_ptr() const { return outer_; }
  const InnerCode& inner() const { return inner_; }

  std::uint32_t alphabet_q() const override { return 2; }
  std::size_t length() const override { return outer_->length() * inner_.len; }
  std::uint64_t size() const override { return outer_->size(); }
  Word encode_index(std::uint64_t index) const override;
  std::optional<Fraction> dimension_log_q() const override;

 private:
  std::shared_ptr<const MotherCode> outer_;
  InnerCode inner_;
};

ConcatenatedCode concatenate(std::shared_ptr<const MotherCode> outer, InnerCode inner);

/// Random search for q distinct binary words with pairwise relative distance
/// >= min_rel_distance, at the smallest length the search finds (Gilbert
/// Varshamov regime). Errors when q > 2^max_len or the budget runs out.
InnerCode find_inner_code(std::uint32_t q, double min_rel_distance, std::uint32_t max_len,
                          std::uint64_t seed, std::uint64_t attempts_per_len = 200);

}  // namespace graphcodes

#endif
