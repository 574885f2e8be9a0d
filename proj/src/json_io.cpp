#include "graphcodes/json_io.hpp"

#include <fstream>

namespace graphcodes {

namespace {

std::vector<std::vector<int>> rows_to_ints(const std::vector<Word>& rows) {
  std::vector<std::vector<int>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

std::vector<Word> rows_from_ints(const nlohmann::json& j, std::uint32_t q,
                                 const char* what) {
  std::vector<Word> rows;
  for (const auto& jr : j) {
    Word r;
    for (const auto& v : jr) {
      const auto x = v.get<long long>();
      if (x < 0 || x >= static_cast<long long>(q))
        throw Error(std::string(what) + ": symbol out of range");
      r.push_back(static_cast<Symbol>(x));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

nlohmann::json linear_code_to_json(const LinearCode& code) {
  return {{"q", code.alphabet_q()},
          {"length", code.length()},
          {"dim", code.dim()},
          {"generator", rows_to_ints(code.generator())}};
}

LinearCode linear_code_from_json(const nlohmann::json& j) {
  const auto q = j.at("q").get<std::uint32_t>();
  auto rows = rows_from_ints(j.at("generator"), q, "linear code");
  LinearCode code(Field(q), std::move(rows));
  if (j.contains("length") && j.at("length").get<std::size_t>() != code.length())
    throw Error("linear code: length field disagrees with generator");
  if (j.contains("dim") && j.at("dim").get<std::uint32_t>() != code.dim())
    throw Error("linear code: dim field disagrees with generator");
  return code;
}

nlohmann::json inner_code_to_json(const InnerCode& inner) {
  std::vector<std::string> words;
  for (const auto& w : inner.words) {
    std::string s;
    for (const auto b : w) s.push_back(b ? '1' : '0');
    words.push_back(std::move(s));
  }
  return {{"q", inner.q}, {"len", inner.len}, {"words", words}};
}

InnerCode inner_code_from_json(const nlohmann::json& j) {
  InnerCode inner;
  inner.q = j.at("q").get<std::uint32_t>();
  inner.len = j.at("len").get<std::uint32_t>();
  for (const auto& js : j.at("words")) {
    const auto s = js.get<std::string>();
    if (s.size() != inner.len) throw Error("inner code: word length disagrees with len");
    Word w;
    for (const auto ch : s) {
      if (ch != '0' && ch != '1') throw Error("inner code: words must be bitstrings");
      w.push_back(ch == '1' ? 1 : 0);
    }
    inner.words.push_back(std::move(w));
  }
  if (inner.words.size() != inner.q) throw Error("inner code: need exactly q words");
  return inner;
}

nlohmann::json mother_to_json(const MotherCode& code) {
  if (const auto* lin = dynamic_cast<const LinearCode*>(&code)) {
    auto j = linear_code_to_json(*lin);
    j["type"] = "linear";
    return j;
  }
  if (const auto* tab = dynamic_cast<const TableCode*>(&code)) {
    return {{"type", "table"}, {"q", tab->alphabet_q()}, {"words", rows_to_ints(tab->words())}};
  }
  if (const auto* exp = dynamic_cast<const ExpanderCode*>(&code)) {
    return {{"type", "expander"}, {"graph", graph_to_json(exp->graph())}};
  }
  if (const auto* cat = dynamic_cast<const ConcatenatedCode*>(&code)) {
    return {{"type", "concat"},
            {"outer", mother_to_json(cat->outer())},
            {"inner", inner_code_to_json(cat->inner())}};
  }
  throw Error("mother_to_json: unsupported code type");
}

std::shared_ptr<const MotherCode> mother_from_json(const nlohmann::json& j) {
  const auto type = j.value("type", std::string("linear"));
  if (type == "linear") return std::make_shared<LinearCode>(linear_code_from_json(j));
  if (type == "repetition")
    return std::make_shared<LinearCode>(
        LinearCode::repetition(j.at("q").get<std::uint32_t>(), j.at("length").get<std::uint32_t>()));
  if (type == "table") {
    const auto q = j.at("q").get<std::uint32_t>();
    return std::make_shared<TableCode>(q, rows_from_ints(j.at("words"), q, "table code"));
  }
  if (type == "expander") return std::make_shared<ExpanderCode>(graph_from_json(j.at("graph")));
  if (type == "concat")
    return std::make_shared<ConcatenatedCode>(mother_from_json(j.at("outer")),
                                              inner_code_from_json(j.at("inner")));
  throw Error("mother_from_json: unknown type " + type);
}

namespace {

nlohmann::json tuples_to_json(const std::vector<Symbol>& flat, std::uint32_t n,
                              std::uint32_t degree, const std::vector<std::uint8_t>* erased) {
  nlohmann::json values = nlohmann::json::array();
  for (std::uint32_t l = 0; l < n; ++l) {
    if (erased && (*erased)[l]) {
      values.push_back(nullptr);
      continue;
    }
    nlohmann::json t = nlohmann::json::array();
    for (std::uint32_t i = 0; i < degree; ++i)
      t.push_back(flat[static_cast<std::size_t>(l) * degree + i]);
    values.push_back(std::move(t));
  }
  return values;
}

void tuples_from_json(const nlohmann::json& values, std::uint32_t degree, std::uint32_t q,
                      std::vector<Symbol>& flat, std::vector<std::uint8_t>& erased,
                      const char* what) {
  for (const auto& v : values) {
    if (v.is_null()) {
      erased.push_back(1);
      flat.insert(flat.end(), degree, Symbol{0});
      continue;
    }
    if (v.size() != degree) throw Error(std::string(what) + ": tuple arity mismatch");
    erased.push_back(0);
    for (const auto& x : v) {
      const auto s = x.get<long long>();
      if (s < 0 || s >= static_cast<long long>(q))
        throw Error(std::string(what) + ": symbol out of range");
      flat.push_back(static_cast<Symbol>(s));
    }
  }
}

}  // namespace

nlohmann::json left_word_to_json(const LeftWord& w, std::uint32_t alphabet_q) {
  return {{"alphabet_q", alphabet_q},
          {"degree", w.degree},
          {"values", tuples_to_json(w.flat, w.n, w.degree, nullptr)}};
}

nlohmann::json received_to_json(const ReceivedWord& y, std::uint32_t alphabet_q) {
  return {{"alphabet_q", alphabet_q},
          {"degree", y.degree},
          {"values", tuples_to_json(y.flat, y.n, y.degree, &y.erased)}};
}

ReceivedWord received_from_json(const nlohmann::json& j) {
  ReceivedWord y;
  y.degree = j.at("degree").get<std::uint32_t>();
  const auto q = j.at("alphabet_q").get<std::uint32_t>();
  const auto& values = j.at("values");
  y.n = static_cast<std::uint32_t>(values.size());
  tuples_from_json(values, y.degree, q, y.flat, y.erased, "word file");
  return y;
}

nlohmann::json folded_word_to_json(const FoldedWord& w, std::uint32_t alphabet_q) {
  return {{"alphabet_q", alphabet_q},
          {"degree", w.d1},
          {"t", w.t},
          {"g2_degree", w.d2},
          {"values", tuples_to_json(w.g1_flat, w.n, w.d1, nullptr)},
          {"g2_values",
           tuples_to_json(w.g2_flat, w.n, w.t * w.d2, nullptr)}};
}

nlohmann::json folded_received_to_json(const FoldedReceived& y, std::uint32_t alphabet_q) {
  return {{"alphabet_q", alphabet_q},
          {"degree", y.d1},
          {"t", y.t},
          {"g2_degree", y.d2},
          {"values", tuples_to_json(y.g1_flat, y.n, y.d1, &y.erased)},
          {"g2_values", tuples_to_json(y.g2_flat, y.n, y.t * y.d2, &y.erased)}};
}

FoldedReceived folded_received_from_json(const nlohmann::json& j) {
  FoldedReceived y;
  y.d1 = j.at("degree").get<std::uint32_t>();
  y.t = j.at("t").get<std::uint32_t>();
  y.d2 = j.at("g2_degree").get<std::uint32_t>();
  const auto q = j.at("alphabet_q").get<std::uint32_t>();
  const auto& v1 = j.at("values");
  y.n = static_cast<std::uint32_t>(v1.size());
  tuples_from_json(v1, y.d1, q, y.g1_flat, y.erased, "folded word file");
  std::vector<std::uint8_t> erased2;
  tuples_from_json(j.at("g2_values"), y.t * y.d2, 2, y.g2_flat, erased2, "folded word file");
  if (erased2 != y.erased)
    throw Error("folded word file: branch erasure marks disagree");
  return y;
}

nlohmann::json bundle_to_json(const CodeBundle& bundle) {
  nlohmann::json j;
  j["kind"] = bundle.kind;
  j["k"] = bundle.k;
  j["ell"] = bundle.ell;
  j["rho"] = bundle.rho;
  j["gamma"] = bundle.gamma;
  if (bundle.kind == "graph") {
    if (!bundle.graph_code) throw Error("bundle_to_json: missing graph code");
    j["graph"] = graph_to_json(bundle.graph_code->graph());
    j["mother"] = mother_to_json(bundle.graph_code->mother());
  } else if (bundle.kind == "folded") {
    if (!bundle.folded_code) throw Error("bundle_to_json: missing folded code");
    j["graph"] = graph_to_json(bundle.folded_code->branch1().graph());
    j["mother"] = mother_to_json(bundle.folded_code->branch1().mother());
    j["graph2"] = graph_to_json(bundle.folded_code->branch2().graph());
    j["inner"] = inner_code_to_json(bundle.folded_code->inner());
  } else {
    throw Error("bundle_to_json: unknown kind " + bundle.kind);
  }
  if (bundle.certificate) j["certificate"] = certificate_to_json(*bundle.certificate);
  if (bundle.certificate2) j["certificate2"] = certificate_to_json(*bundle.certificate2);
  return j;
}

CodeBundle bundle_from_json(const nlohmann::json& j) {
  CodeBundle bundle;
  bundle.kind = j.at("kind").get<std::string>();
  bundle.k = j.value("k", 1u);
  bundle.ell = j.value("ell", 2u);
  bundle.rho = j.value("rho", 0.5);
  bundle.gamma = j.value("gamma", 0.5);
  auto mother = mother_from_json(j.at("mother"));
  auto graph = graph_from_json(j.at("graph"));
  if (bundle.kind == "graph") {
    bundle.graph_code.emplace(std::move(graph), std::move(mother));
  } else if (bundle.kind == "folded") {
    bundle.folded_code.emplace(std::move(graph), std::move(mother),
                               graph_from_json(j.at("graph2")),
                               inner_code_from_json(j.at("inner")));
  } else {
    throw Error("bundle_from_json: unknown kind " + bundle.kind);
  }
  if (j.contains("certificate")) bundle.certificate = certificate_from_json(j.at("certificate"));
  if (j.contains("certificate2"))
    bundle.certificate2 = certificate_from_json(j.at("certificate2"));
  return bundle;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace graphcodes
