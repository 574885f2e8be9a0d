#ifndef GRAPHCODES_JSON_IO_HPP
#define GRAPHCODES_JSON_IO_HPP

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "graphcodes/extremal.hpp"
#include "graphcodes/graphcode.hpp"
#include "graphcodes/mothercode.hpp"

namespace graphcodes {

/// Linear code file: {"q", "length", "dim", "generator": [[int, ...], ...]}.
nlohmann::json linear_code_to_json(const LinearCode& code);
LinearCode linear_code_from_json(const nlohmann::json& j);

/// Inner code file: {"q", "len", "words": ["0101", ...]}.
nlohmann::json inner_code_to_json(const InnerCode& inner);
InnerCode inner_code_from_json(const nlohmann::json& j);

/// Typed mother descriptor: {"type": "linear" | "repetition" | "table" |
/// "expander" | "concat", ...}. A descriptor without "type" is read as a bare
/// linear code file.
nlohmann::json mother_to_json(const MotherCode& code);
std::shared_ptr<const MotherCode> mother_from_json(const nlohmann::json& j);

/// Encoded/received word file: {"alphabet_q", "degree", "values": [[int x D]
/// | null, ...]} with null marking an erased position.
nlohmann::json left_word_to_json(const LeftWord& w, std::uint32_t alphabet_q);
nlohmann::json received_to_json(const ReceivedWord& y, std::uint32_t alphabet_q);
ReceivedWord received_from_json(const nlohmann::json& j);

/// Folded word file adds {"t", "g2_degree", "g2_values"}; a position is erased
/// iff both its entries are null.
nlohmann::json folded_word_to_json(const FoldedWord& w, std::uint32_t alphabet_q);
nlohmann::json folded_received_to_json(const FoldedReceived& y, std::uint32_t alphabet_q);
FoldedReceived folded_received_from_json(const nlohmann::json& j);

/// A fully built code plus its decode parameters, as written by build-code and
/// consumed by encode/decode/trial.
struct CodeBundle {
  std::string kind;  // "graph" | "folded"
  std::optional<GraphCode> graph_code;
  std::optional<FoldedCode> folded_code;
  std::uint32_t k = 1;
  std::uint32_t ell = 2;
  double rho = 0.5;
  double gamma = 0.5;
  std::optional<Certificate> certificate;    // branch-1 / only graph
  std::optional<Certificate> certificate2;   // folded branch-2
};

nlohmann::json bundle_to_json(const CodeBundle& bundle);
CodeBundle bundle_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace graphcodes

#endif
