#include "graphcodes/graphcode.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace graphcodes {

ReceivedWord to_received(const LeftWord& w) {
  ReceivedWord y;
  y.n = w.n;
  y.degree = w.degree;
  y.flat = w.flat;
  y.erased.assign(w.n, 0);
  return y;
}

namespace {

void check_shapes(const ReceivedWord& y, const LeftWord& c) {
  if (y.n != c.n || y.degree != c.degree) throw Error("received/left word shape mismatch");
  if (y.flat.size() != static_cast<std::size_t>(y.n) * y.degree ||
      c.flat.size() != static_cast<std::size_t>(c.n) * c.degree)
    throw Error("word flat size mismatch");
  if (y.erased.size() != y.n) throw Error("received word erasure flags mismatch");
}

bool tuple_equal(const ReceivedWord& y, const LeftWord& c, std::uint32_t l) {
  const auto a = y.tuple(l);
  const auto b = c.tuple(l);
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::uint64_t half_distance(const ReceivedWord& y, const LeftWord& c) {
  check_shapes(y, c);
  std::uint64_t errors = 0, erasures = 0;
  for (std::uint32_t l = 0; l < y.n; ++l) {
    if (y.erased[l])
      ++erasures;
    else if (!tuple_equal(y, c, l))
      ++errors;
  }
  return 2 * errors + erasures;
}

std::uint64_t hamming_distance(const ReceivedWord& y, const LeftWord& c) {
  check_shapes(y, c);
  std::uint64_t d = 0;
  for (std::uint32_t l = 0; l < y.n; ++l)
    if (y.erased[l] || !tuple_equal(y, c, l)) ++d;
  return d;
}

GraphCode::GraphCode(BipartiteGraph graph, std::shared_ptr<const MotherCode> mother)
    : graph_(std::move(graph)), mother_(std::move(mother)) {
  if (!mother_) throw Error("GraphCode: null mother code");
  if (graph_.n_left() == 0 || graph_.degree() == 0)
    throw Error("GraphCode: graph must have left vertices and positive degree");
  if (mother_->length() != graph_.n_right())
    throw Error("GraphCode: mother length must equal graph n_right");
}

LeftWord spread_unchecked(const GraphCode& gc, const Word& c) {
  const auto& g = gc.graph_;
  LeftWord out;
  out.n = g.n_left();
  out.degree = g.degree();
  out.flat.resize(static_cast<std::size_t>(out.n) * out.degree);
  for (std::uint32_t l = 0; l < out.n; ++l) {
    const auto nb = g.neighbors(l);
    for (std::uint32_t i = 0; i < out.degree; ++i)
      out.flat[static_cast<std::size_t>(l) * out.degree + i] = c[nb[i]];
  }
  return out;
}

LeftWord GraphCode::encode(const Word& mother_codeword) const {
  if (mother_codeword.size() != mother_->length())
    throw Error("GraphCode::encode: word length must equal mother length");
  if (!mother_->contains(mother_codeword))
    throw Error("GraphCode::encode: word is not a mother codeword");
  return spread_unchecked(*this, mother_codeword);
}

LeftWord GraphCode::encode_index(std::uint64_t index) const {
  return spread_unchecked(*this, mother_->encode_index(index));
}

std::optional<Fraction> GraphCode::rate() const {
  const auto dlq = mother_->dimension_log_q();
  if (!dlq) return std::nullopt;
  return *dlq / Fraction(static_cast<long long>(length()) * degree());
}

namespace {

// Per-right-vertex multiset of values carried by live left entries. A right
// vertex is in conflict iff it sees >= 2 distinct values.
struct RightCounts {
  std::vector<std::map<Symbol, std::uint32_t>> counts;

  void add(std::uint32_t w, Symbol v) { ++counts[w][v]; }
  void remove(std::uint32_t w, Symbol v) {
    auto& m = counts[w];
    auto it = m.find(v);
    if (--it->second == 0) m.erase(it);
  }
  std::size_t distinct(std::uint32_t w) const { return counts[w].size(); }
};

Symbol value_at(const ReceivedWord& y, std::uint32_t l, std::uint32_t slot) {
  return y.flat[static_cast<std::size_t>(l) * y.degree + slot];
}

}  // namespace

UniqueDecodeResult unique_decode(const GraphCode& gc, const ReceivedWord& y_in,
                                 const UniqueDecodeOptions& opts) {
  const auto& g = gc.graph();
  const auto n = g.n_left();
  const auto m = g.n_right();
  if (y_in.n != n || y_in.degree != g.degree())
    throw Error("unique_decode: received word shape mismatch");
  if (opts.k == 0 || opts.k >= n) throw Error("unique_decode: need 0 < k < n");
  if (opts.filler >= gc.alphabet_q()) throw Error("unique_decode: filler outside alphabet");

  ReceivedWord y = y_in;
  std::vector<std::uint8_t> alive(n);
  for (std::uint32_t l = 0; l < n; ++l) alive[l] = !y.erased[l];

  RightCounts rc;
  rc.counts.resize(m);
  for (std::uint32_t l = 0; l < n; ++l)
    if (alive[l]) {
      const auto nb = g.neighbors(l);
      for (std::uint32_t i = 0; i < g.degree(); ++i) rc.add(nb[i], value_at(y, l, i));
    }

  std::set<std::uint32_t> pending;
  for (std::uint32_t w = 0; w < m; ++w)
    if (rc.distinct(w) >= 2) pending.insert(w);

  std::optional<Rng> rng;
  if (opts.scan_seed) rng.emplace(*opts.scan_seed);

  UniqueDecodeResult result;

  const auto erase_left = [&](std::uint32_t l) {
    alive[l] = 0;
    const auto nb = g.neighbors(l);
    for (std::uint32_t i = 0; i < g.degree(); ++i) {
      const auto w = nb[i];
      rc.remove(w, value_at(y, l, i));
      if (rc.distinct(w) < 2) pending.erase(w);
    }
    y.erased[l] = 1;
    std::fill_n(y.flat.begin() + static_cast<std::size_t>(l) * y.degree, y.degree, Symbol{0});
  };

  while (!pending.empty()) {
    ++result.erasure_iterations;
    std::uint32_t w;
    if (rng) {
      auto it = pending.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(rng->below(pending.size())));
      w = *it;
    } else {
      w = *pending.begin();
    }

    // live entries into w, ascending (left, slot)
    std::vector<BipartiteGraph::Entry> live;
    for (const auto& e : g.incident(w))
      if (alive[e.left]) live.push_back(e);

    // conflicting ordered pairs keyed (u, v, i, j); the scan order is the
    // lexicographic order of that tuple, which nested iteration over entries
    // sorted by (left, slot) does not produce, so collect then select
    using PairKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>;
    std::vector<PairKey> conflicts;
    for (const auto& a : live)
      for (const auto& b : live) {
        if (a.left == b.left && a.slot == b.slot) continue;
        if (value_at(y, a.left, a.slot) != value_at(y, b.left, b.slot))
          conflicts.emplace_back(a.left, b.left, a.slot, b.slot);
      }
    // pending guarantees >= 2 distinct values, so conflicts is non-empty
    PairKey chosen;
    if (rng)
      chosen = conflicts[rng->below(conflicts.size())];
    else
      chosen = *std::min_element(conflicts.begin(), conflicts.end());

    const auto u = std::get<0>(chosen);
    const auto v = std::get<1>(chosen);
    erase_left(u);
    if (v != u) erase_left(v);
    if (opts.record_trace) {
      EraseStep step;
      step.right = w;
      step.erased.push_back(u);
      if (v != u) step.erased.push_back(v);
      result.trace.push_back(std::move(step));
    }
  }

  Word z(m, opts.filler);
  for (std::uint32_t w = 0; w < m; ++w)
    if (rc.distinct(w) == 1) z[w] = rc.counts[w].begin()->first;

  const auto decoded = gc.mother().unique_decode(to_received(z));
  result.final_received = std::move(y);
  if (!decoded) {
    result.mother_decode_failed = true;
    return result;
  }
  result.mother_codeword = *decoded;
  auto candidate = spread_unchecked(gc, *decoded);
  result.final_half_distance = half_distance(result.final_received, candidate);
  if (result.final_half_distance < static_cast<std::uint64_t>(n) - opts.k)
    result.codeword = std::move(candidate);
  return result;
}

ListDecodeResult list_decode(const GraphCode& gc, const ReceivedWord& y_in,
                             const ListDecodeOptions& opts) {
  const auto& g = gc.graph();
  const auto n = g.n_left();
  const auto m = g.n_right();
  if (y_in.n != n || y_in.degree != g.degree())
    throw Error("list_decode: received word shape mismatch");
  if (opts.ell < 2) throw Error("list_decode: need ell >= 2");
  if (opts.k == 0 || opts.k >= n) throw Error("list_decode: need 0 < k < n");
  if (!(opts.rho >= 0.0) || !(opts.rho <= 1.0)) throw Error("list_decode: need rho in [0, 1]");

  ReceivedWord y = y_in;
  std::vector<std::uint8_t> alive(n);
  for (std::uint32_t l = 0; l < n; ++l) alive[l] = !y.erased[l];

  ListDecodeResult result;

  const auto erase_left = [&](std::uint32_t l) {
    alive[l] = 0;
    y.erased[l] = 1;
    std::fill_n(y.flat.begin() + static_cast<std::size_t>(l) * y.degree, y.degree, Symbol{0});
  };

  // phase 1: left vertices contradicting themselves through parallel edges
  for (std::uint32_t l = 0; l < n; ++l) {
    if (!alive[l]) continue;
    const auto nb = g.neighbors(l);
    bool bad = false;
    for (std::uint32_t i = 0; i < g.degree() && !bad; ++i)
      for (std::uint32_t j = i + 1; j < g.degree() && !bad; ++j)
        if (nb[i] == nb[j] && value_at(y, l, i) != value_at(y, l, j)) bad = true;
    if (bad) {
      erase_left(l);
      result.phase1_erased.push_back(l);
    }
  }

  // phase 2: per right vertex, erase groups of ell distinct-value carriers.
  // One ascending pass suffices: erasures only shrink value sets elsewhere.
  for (std::uint32_t w = 0; w < m; ++w) {
    while (true) {
      // first occurrence of each distinct live value, in (left, slot) order;
      // after phase 1 the carriers of distinct values are distinct vertices
      std::vector<std::uint32_t> carriers;
      std::set<Symbol> seen;
      for (const auto& e : g.incident(w)) {
        if (!alive[e.left]) continue;
        if (seen.insert(value_at(y, e.left, e.slot)).second) carriers.push_back(e.left);
        if (carriers.size() == opts.ell) break;
      }
      if (carriers.size() < opts.ell) break;
      ++result.phase2_iterations;
      for (const auto l : carriers) erase_left(l);
      if (opts.record_trace) result.phase2_trace.push_back({w, carriers});
    }
  }

  // surviving value sets
  result.t_sets.assign(m, {});
  for (std::uint32_t w = 0; w < m; ++w) {
    std::set<Symbol> vals;
    for (const auto& e : g.incident(w))
      if (alive[e.left]) vals.insert(value_at(y, e.left, e.slot));
    result.t_sets[w].assign(vals.begin(), vals.end());
  }

  result.oracle_candidates = gc.mother().list_recover(result.t_sets, opts.rho);

  // keep candidates within distance (1 - 1/ell - k/n) * n of the input word;
  // scaled by ell this is an exact integer comparison
  const std::int64_t threshold = static_cast<std::int64_t>(opts.ell) * n -
                                 static_cast<std::int64_t>(n) -
                                 static_cast<std::int64_t>(opts.ell) * opts.k;
  for (const auto& z : result.oracle_candidates) {
    auto cw = spread_unchecked(gc, z);
    const auto dist = hamming_distance(y_in, cw);
    if (static_cast<std::int64_t>(opts.ell) * static_cast<std::int64_t>(dist) <= threshold)
      result.accepted.push_back({z, std::move(cw)});
  }
  result.final_received = std::move(y);
  return result;
}

namespace {

std::string word_key(const Word& w) {
  return {reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Symbol)};
}

}  // namespace

FoldedCode::FoldedCode(BipartiteGraph g1, std::shared_ptr<const MotherCode> outer,
                       BipartiteGraph g2, InnerCode inner)
    : branch1_(std::move(g1), outer),
      branch2_(std::move(g2),
               std::make_shared<ConcatenatedCode>(outer, inner)),
      inner_(std::move(inner)) {
  const auto n1 = branch1_.length();
  const auto n2 = branch2_.length();
  if (n2 < n1) throw Error("FoldedCode: branch 2 must be at least as long as branch 1");
  t_ = n2 / n1;
  dropped_tail_ = n2 - t_ * n1;
  const auto& words = outer->codewords();
  for (std::uint64_t i = 0; i < words.size(); ++i) index_of_[word_key(words[i])] = i;
}

FoldedWord FoldedCode::encode_index(std::uint64_t index) const {
  const auto b1 = branch1_.encode_index(index);
  const auto b2 = branch2_.encode_index(index);
  FoldedWord out;
  out.n = branch1_.length();
  out.d1 = branch1_.degree();
  out.d2 = branch2_.degree();
  out.t = t_;
  out.g1_flat = b1.flat;
  out.g2_flat.assign(b2.flat.begin(),
                     b2.flat.begin() + static_cast<std::size_t>(out.n) * t_ * out.d2);
  return out;
}

FoldedWord FoldedCode::encode(const Word& outer_codeword) const {
  const auto it = index_of_.find(word_key(outer_codeword));
  if (it == index_of_.end()) throw Error("FoldedCode::encode: not an outer codeword");
  return encode_index(it->second);
}

FoldedCode star_construct(BipartiteGraph g1, std::shared_ptr<const MotherCode> outer,
                          BipartiteGraph g2, InnerCode inner) {
  return FoldedCode(std::move(g1), std::move(outer), std::move(g2), std::move(inner));
}

FoldedReceived to_received(const FoldedWord& w) {
  FoldedReceived y;
  y.n = w.n;
  y.d1 = w.d1;
  y.d2 = w.d2;
  y.t = w.t;
  y.g1_flat = w.g1_flat;
  y.g2_flat = w.g2_flat;
  y.erased.assign(w.n, 0);
  return y;
}

std::uint64_t folded_hamming_distance(const FoldedReceived& y, const FoldedWord& w) {
  if (y.n != w.n || y.d1 != w.d1 || y.d2 != w.d2 || y.t != w.t)
    throw Error("folded_hamming_distance: shape mismatch");
  std::uint64_t d = 0;
  const std::size_t s1 = y.d1;
  const std::size_t s2 = static_cast<std::size_t>(y.t) * y.d2;
  for (std::uint32_t l = 0; l < y.n; ++l) {
    if (y.erased[l]) {
      ++d;
      continue;
    }
    const bool eq1 = std::equal(y.g1_flat.begin() + l * s1, y.g1_flat.begin() + (l + 1) * s1,
                                w.g1_flat.begin() + l * s1);
    const bool eq2 = std::equal(y.g2_flat.begin() + l * s2, y.g2_flat.begin() + (l + 1) * s2,
                                w.g2_flat.begin() + l * s2);
    if (!eq1 || !eq2) ++d;
  }
  return d;
}

ReceivedWord fold_project(const FoldedReceived& y) {
  ReceivedWord out;
  out.n = y.n;
  out.degree = y.d1;
  out.flat = y.g1_flat;
  out.erased = y.erased;
  for (std::uint32_t l = 0; l < y.n; ++l)
    if (y.erased[l])
      std::fill_n(out.flat.begin() + static_cast<std::size_t>(l) * y.d1, y.d1, Symbol{0});
  return out;
}

FoldedListResult fold_list_decode(const FoldedCode& fc, const FoldedReceived& y, double gamma,
                                  const ListDecodeOptions& branch1_opts) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw Error("fold_list_decode: need gamma in (0, 1)");
  FoldedListResult result;
  result.branch1 = list_decode(fc.branch1(), fold_project(y), branch1_opts);
  const double threshold = (1.0 - gamma) * fc.length();
  for (const auto& cand : result.branch1.accepted) {
    auto fw = fc.encode(cand.mother_codeword);
    if (le_tol(static_cast<double>(folded_hamming_distance(y, fw)), threshold))
      result.accepted.push_back({cand.mother_codeword, std::move(fw)});
  }
  return result;
}

std::vector<std::vector<std::uint32_t>> pack_tuple_words(const std::vector<LeftWord>& words) {
  std::vector<std::vector<std::uint32_t>> out;
  if (words.empty()) return out;
  const auto n = words[0].n;
  const auto d = words[0].degree;
  std::map<std::vector<Symbol>, std::uint32_t> dict;
  for (const auto& w : words) {
    if (w.n != n || w.degree != d) throw Error("pack_tuple_words: mixed shapes");
    std::vector<std::uint32_t> packed(n);
    for (std::uint32_t l = 0; l < n; ++l) {
      const auto t = w.tuple(l);
      std::vector<Symbol> key(t.begin(), t.end());
      const auto [it, inserted] = dict.emplace(std::move(key), static_cast<std::uint32_t>(dict.size()));
      packed[l] = it->second;
    }
    out.push_back(std::move(packed));
  }
  return out;
}

}  // namespace graphcodes
