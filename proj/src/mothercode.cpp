#include "graphcodes/mothercode.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_set>

namespace graphcodes {

RxWord to_received(const Word& w) {
  RxWord y(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) y[i] = w[i];
  return y;
}

std::uint64_t half_distance(const RxWord& y, const Word& c) {
  if (y.size() != c.size()) throw Error("half_distance: length mismatch");
  std::uint64_t errors = 0, erasures = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == kErased)
      ++erasures;
    else if (y[i] != c[i])
      ++errors;
  }
  return 2 * errors + erasures;
}

const std::vector<Word>& MotherCode::codewords() const {
  if (!codeword_cache_) {
    const auto count = size();
    if (count > enum_cap_)
      throw BudgetExceeded("codeword enumeration exceeds cap of " + std::to_string(enum_cap_));
    std::vector<Word> words;
    words.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) words.push_back(encode_index(i));
    codeword_cache_ = std::move(words);
  }
  return *codeword_cache_;
}

std::optional<Word> MotherCode::unique_decode(const RxWord& y) const {
  return bf_unique_decode(*this, y);
}

std::vector<Word> MotherCode::list_recover(const std::vector<std::vector<Symbol>>& lists,
                                           double rho) const {
  return bf_list_recover(*this, lists, rho);
}

std::uint64_t MotherCode::distance() const {
  if (!distance_cache_) distance_cache_ = compute_distance();
  return *distance_cache_;
}

double MotherCode::relative_distance() const {
  return static_cast<double>(distance()) / static_cast<double>(length());
}

bool MotherCode::distance_computable() const { return size() <= enum_cap_; }

std::optional<Fraction> MotherCode::dimension_log_q() const {
  // generic: exact only when size is a perfect power of q
  const auto q = alphabet_q();
  std::uint64_t v = 1;
  for (std::uint64_t e = 0; e <= 64; ++e) {
    if (v == size()) return Fraction(static_cast<long long>(e));
    if (v > size() / q) break;
    v *= q;
  }
  return std::nullopt;
}

bool MotherCode::contains(const Word& w) const {
  const auto& all = codewords();
  return std::find(all.begin(), all.end(), w) != all.end();
}

std::uint64_t MotherCode::compute_distance() const { return brute_force_min_distance(*this); }

BfUniqueResult bf_unique_decode_full(const MotherCode& code, const RxWord& y) {
  if (y.size() != code.length()) throw Error("bf_unique_decode: length mismatch");
  const auto& words = code.codewords();
  if (words.empty()) throw Error("bf_unique_decode: empty code");
  BfUniqueResult best;
  best.half_dist = std::numeric_limits<std::uint64_t>::max();
  for (const auto& c : words) {
    const auto hd = half_distance(y, c);
    if (hd < best.half_dist) {
      best.word = c;
      best.half_dist = hd;
      best.ambiguous = false;
    } else if (hd == best.half_dist) {
      best.ambiguous = true;
    }
  }
  best.within_unique_radius = best.half_dist < code.distance();
  return best;
}

std::optional<Word> bf_unique_decode(const MotherCode& code, const RxWord& y) {
  auto result = bf_unique_decode_full(code, y);
  if (!result.within_unique_radius) return std::nullopt;
  return std::move(result.word);
}

std::vector<Word> bf_list_recover(const MotherCode& code,
                                  const std::vector<std::vector<Symbol>>& lists, double rho) {
  if (lists.size() != code.length()) throw Error("bf_list_recover: list count mismatch");
  const auto n = static_cast<double>(code.length());
  std::vector<Word> out;
  for (const auto& c : code.codewords()) {
    std::uint64_t matches = 0;
    for (std::size_t w = 0; w < c.size(); ++w) {
      const auto& lw = lists[w];
      if (std::find(lw.begin(), lw.end(), c[w]) != lw.end()) ++matches;
    }
    if (ge_tol(static_cast<double>(matches), (1.0 - rho) * n)) out.push_back(c);
  }
  return out;
}

std::uint64_t brute_force_min_distance(const MotherCode& code) {
  if (code.size() < 2) throw Error("brute_force_min_distance: need at least 2 codewords");
  const auto& words = code.codewords();
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  if (dynamic_cast<const LinearCode*>(&code) != nullptr) {
    // linear: distance = minimum nonzero weight; index 0 is the zero word
    for (std::size_t i = 1; i < words.size(); ++i) {
      std::uint64_t weight = 0;
      for (const auto s : words[i])
        if (s != 0) ++weight;
      best = std::min(best, weight);
    }
    return best;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      std::uint64_t d = 0;
      for (std::size_t p = 0; p < words[i].size(); ++p)
        if (words[i][p] != words[j][p]) ++d;
      best = std::min(best, d);
    }
  }
  return best;
}

namespace {

// Row-reduce over GF(q); returns (rref rows, pivot columns). Rows that reduce
// to zero are dropped.
std::pair<std::vector<Word>, std::vector<std::uint32_t>> row_reduce(const Field& f,
                                                                    std::vector<Word> rows) {
  std::vector<std::uint32_t> pivots;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < rows.size() && rows[pivot_row][col] == 0) ++pivot_row;
    if (pivot_row == rows.size()) continue;
    std::swap(rows[rank], rows[pivot_row]);
    const auto inv = f.inv(rows[rank][col]);
    for (auto& s : rows[rank]) s = f.mul(s, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const auto factor = rows[r][col];
      for (std::size_t cc = 0; cc < cols; ++cc)
        rows[r][cc] = f.sub(rows[r][cc], f.mul(factor, rows[rank][cc]));
    }
    pivots.push_back(static_cast<std::uint32_t>(col));
    ++rank;
  }
  rows.resize(rank);
  return {std::move(rows), std::move(pivots)};
}

// Packed GF(2) row reduction for large binary codes.
std::pair<std::vector<Word>, std::vector<std::uint32_t>> row_reduce_gf2(std::vector<Word> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  const std::size_t words_per_row = (cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> packed(rows.size(),
                                                 std::vector<std::uint64_t>(words_per_row, 0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c]) packed[r][c / 64] |= 1ULL << (c % 64);

  std::vector<std::uint32_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < packed.size(); ++col) {
    const std::size_t wi = col / 64;
    const std::uint64_t bit = 1ULL << (col % 64);
    std::size_t pivot_row = rank;
    while (pivot_row < packed.size() && !(packed[pivot_row][wi] & bit)) ++pivot_row;
    if (pivot_row == packed.size()) continue;
    std::swap(packed[rank], packed[pivot_row]);
    for (std::size_t r = 0; r < packed.size(); ++r) {
      if (r == rank || !(packed[r][wi] & bit)) continue;
      for (std::size_t w = 0; w < words_per_row; ++w) packed[r][w] ^= packed[rank][w];
    }
    pivots.push_back(static_cast<std::uint32_t>(col));
    ++rank;
  }
  std::vector<Word> out(rank, Word(cols, 0));
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out[r][c] = (packed[r][c / 64] >> (c % 64)) & 1 ? 1 : 0;
  return {std::move(out), std::move(pivots)};
}

}  // namespace

LinearCode::LinearCode(Field field, std::vector<Word> generator_rows,
                       std::optional<std::vector<Word>> parity)
    : field_(std::move(field)), generator_(std::move(generator_rows)), parity_(std::move(parity)) {
  if (generator_.empty()) throw Error("LinearCode: empty generator");
  length_ = generator_[0].size();
  if (length_ == 0) throw Error("LinearCode: zero length");
  for (const auto& row : generator_) {
    if (row.size() != length_) throw Error("LinearCode: ragged generator");
    for (const auto s : row)
      if (s >= field_.q()) throw Error("LinearCode: generator symbol out of range");
  }
  auto reduced = field_.q() == 2 ? row_reduce_gf2(generator_) : row_reduce(field_, generator_);
  rref_ = std::move(reduced.first);
  pivots_ = std::move(reduced.second);
  if (rref_.size() != generator_.size()) throw Error("LinearCode: generator rows are dependent");
  if (parity_) {
    for (const auto& h : *parity_) {
      if (h.size() != length_) throw Error("LinearCode: ragged parity");
      for (const auto s : h)
        if (s >= field_.q()) throw Error("LinearCode: parity symbol out of range");
    }
    if (field_.q() == 2) {
      // packed orthogonality: <h, g> over GF(2) is the parity of popcount(h & g)
      const std::size_t words_per_row = (length_ + 63) / 64;
      const auto pack = [&](const std::vector<Word>& rows) {
        std::vector<std::vector<std::uint64_t>> out(rows.size(),
                                                    std::vector<std::uint64_t>(words_per_row, 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < length_; ++c)
            if (rows[r][c]) out[r][c / 64] |= 1ULL << (c % 64);
        return out;
      };
      const auto hp = pack(*parity_);
      const auto gp = pack(generator_);
      for (const auto& hrow : hp) {
        for (const auto& grow : gp) {
          std::uint64_t acc = 0;
          for (std::size_t w = 0; w < words_per_row; ++w) acc ^= hrow[w] & grow[w];
          if (std::popcount(acc) & 1)
            throw Error("LinearCode: parity not orthogonal to generator");
        }
      }
    } else {
      for (const auto& h : *parity_) {
        for (const auto& grow : generator_) {
          Symbol acc = 0;
          for (std::size_t i = 0; i < length_; ++i)
            acc = field_.add(acc, field_.mul(h[i], grow[i]));
          if (acc != 0) throw Error("LinearCode: parity not orthogonal to generator");
        }
      }
    }
  }
}

LinearCode LinearCode::repetition(std::uint32_t q, std::uint32_t length) {
  if (length == 0) throw Error("repetition: zero length");
  return LinearCode(Field(q), {Word(length, 1)});
}

Word LinearCode::encode(const Word& message) const {
  if (message.size() != dim()) throw Error("LinearCode::encode: message length mismatch");
  Word out(length_, 0);
  for (std::size_t i = 0; i < message.size(); ++i) {
    const auto m = message[i];
    if (m >= field_.q()) throw Error("LinearCode::encode: symbol out of range");
    if (m == 0) continue;
    for (std::size_t j = 0; j < length_; ++j)
      out[j] = field_.add(out[j], field_.mul(m, generator_[i][j]));
  }
  return out;
}

std::uint64_t LinearCode::size() const {
  std::uint64_t result = 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t i = 0; i < dim(); ++i) {
    if (result > kMax / field_.q()) return kMax;  // saturate
    result *= field_.q();
  }
  return result;
}

Word LinearCode::encode_index(std::uint64_t index) const {
  Word message(dim(), 0);
  for (std::uint32_t i = 0; i < dim(); ++i) {
    message[i] = static_cast<Symbol>(index % field_.q());
    index /= field_.q();
  }
  if (index != 0) throw Error("LinearCode::encode_index: index out of range");
  return encode(message);
}

bool LinearCode::contains(const Word& w) const {
  if (w.size() != length_) return false;
  for (const auto s : w)
    if (s >= field_.q()) return false;
  Word residual = w;
  for (std::size_t r = 0; r < rref_.size(); ++r) {
    const auto factor = residual[pivots_[r]];
    if (factor == 0) continue;
    for (std::size_t j = 0; j < length_; ++j)
      residual[j] = field_.sub(residual[j], field_.mul(factor, rref_[r][j]));
  }
  return std::all_of(residual.begin(), residual.end(), [](Symbol s) { return s == 0; });
}

std::uint64_t LinearCode::compute_distance() const { return brute_force_min_distance(*this); }

TableCode::TableCode(std::uint32_t q, std::vector<Word> words) : q_(q), words_(std::move(words)) {
  if (words_.empty()) throw Error("TableCode: empty code");
  length_ = words_[0].size();
  std::unordered_set<std::string> seen;
  for (const auto& w : words_) {
    if (w.size() != length_) throw Error("TableCode: ragged words");
    for (const auto s : w)
      if (s >= q_) throw Error("TableCode: symbol out of range");
    std::string key(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Symbol));
    if (!seen.insert(std::move(key)).second) throw Error("TableCode: duplicate word");
  }
}

Word TableCode::encode_index(std::uint64_t index) const {
  if (index >= words_.size()) throw Error("TableCode::encode_index: index out of range");
  return words_[index];
}

LinearCode expander_code_build(const BipartiteGraph& g) {
  const auto n = g.n_left();
  const auto m = g.n_right();
  // H[w][v] = parity of edge multiplicity between left v and right w
  const std::size_t words_per_row = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> h(m, std::vector<std::uint64_t>(words_per_row, 0));
  for (std::uint32_t w = 0; w < m; ++w)
    for (const auto& e : g.incident(w)) h[w][e.left / 64] ^= 1ULL << (e.left % 64);

  // null space of H by packed elimination
  std::vector<std::uint32_t> pivot_of_row;
  std::size_t rank = 0;
  std::vector<bool> is_pivot(n, false);
  for (std::uint32_t col = 0; col < n && rank < m; ++col) {
    const std::size_t wi = col / 64;
    const std::uint64_t bit = 1ULL << (col % 64);
    std::size_t pr = rank;
    while (pr < m && !(h[pr][wi] & bit)) ++pr;
    if (pr == m) continue;
    std::swap(h[rank], h[pr]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || !(h[r][wi] & bit)) continue;
      for (std::size_t w = 0; w < words_per_row; ++w) h[r][w] ^= h[rank][w];
    }
    pivot_of_row.push_back(col);
    is_pivot[col] = true;
    ++rank;
  }

  std::vector<Word> basis;
  for (std::uint32_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Word x(n, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < rank; ++r)
      if (h[r][f / 64] >> (f % 64) & 1) x[pivot_of_row[r]] = 1;
    basis.push_back(std::move(x));
  }
  if (basis.empty()) throw Error("expander_code_build: trivial code (rank = n_left)");

  std::vector<Word> parity;
  parity.reserve(m);
  for (std::uint32_t w = 0; w < m; ++w) {
    Word row(n, 0);
    for (const auto& e : g.incident(w)) row[e.left] ^= 1;
    parity.push_back(std::move(row));
  }
  return LinearCode(Field(2), std::move(basis), std::move(parity));
}

std::optional<Word> flip_decode(const LinearCode& code, const BipartiteGraph& g, const Word& y) {
  const auto n = g.n_left();
  if (y.size() != n || code.length() != n) throw Error("flip_decode: length mismatch");
  for (const auto s : y)
    if (s > 1) throw Error("flip_decode: non-binary symbol");

  // adjacency restricted to odd edge multiplicities (even ones cancel in H)
  std::vector<std::vector<std::uint32_t>> var_checks(n);
  {
    std::vector<std::uint32_t> mult(g.n_right(), 0);
    for (std::uint32_t l = 0; l < n; ++l) {
      for (const auto w : g.neighbors(l)) ++mult[w];
      for (const auto w : g.neighbors(l)) {
        if (mult[w] % 2 == 1) var_checks[l].push_back(w);
        mult[w] = 0;  // visit each distinct w once: reset after reading
      }
    }
  }
  Word x = y;
  std::vector<std::uint8_t> unsat(g.n_right(), 0);
  for (std::uint32_t l = 0; l < n; ++l)
    if (x[l])
      for (const auto w : var_checks[l]) unsat[w] ^= 1;

  const std::uint64_t cap = static_cast<std::uint64_t>(n) * std::max<std::uint32_t>(1, g.degree());
  std::uint64_t flips = 0;
  while (true) {
    bool flipped = false;
    for (std::uint32_t l = 0; l < n; ++l) {
      std::size_t bad = 0;
      for (const auto w : var_checks[l]) bad += unsat[w];
      if (2 * bad > var_checks[l].size()) {  // unsatisfied strictly outnumber satisfied
        x[l] ^= 1;
        for (const auto w : var_checks[l]) unsat[w] ^= 1;
        flipped = true;
        if (++flips >= cap) {
          flipped = false;  // cap reached: fall through to the final syndrome check
        }
        break;
      }
    }
    if (!flipped) break;
  }
  for (const auto u : unsat)
    if (u) return std::nullopt;
  return x;
}

ExpanderCode::ExpanderCode(BipartiteGraph g) : graph_(std::move(g)), base_(expander_code_build(graph_)) {}

std::optional<Word> ExpanderCode::unique_decode(const RxWord& y) const {
  if (y.size() != length()) throw Error("ExpanderCode::unique_decode: length mismatch");
  Word filled(length(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) filled[i] = y[i] == kErased ? 0 : static_cast<Symbol>(y[i]);
  const auto flipped = flip_decode(base_, graph_, filled);
  if (flipped) {
    if (!distance_computable()) return flipped;  // too large to verify; accept the fixed point
    if (half_distance(y, *flipped) < distance()) return flipped;
  }
  if (size() <= enum_cap()) return bf_unique_decode(*this, y);
  return std::nullopt;
}

std::uint64_t ExpanderCode::compute_distance() const { return brute_force_min_distance(base_); }

std::uint64_t inner_min_distance(const InnerCode& inner) {
  if (inner.words.size() < 2) throw Error("inner_min_distance: need at least 2 words");
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < inner.words.size(); ++i)
    for (std::size_t j = i + 1; j < inner.words.size(); ++j) {
      std::uint64_t d = 0;
      for (std::size_t p = 0; p < inner.len; ++p)
        if (inner.words[i][p] != inner.words[j][p]) ++d;
      best = std::min(best, d);
    }
  return best;
}

ConcatenatedCode::ConcatenatedCode(std::shared_ptr<const MotherCode> outer, InnerCode inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (!outer_) throw Error("ConcatenatedCode: null outer");
  if (inner_.q != outer_->alphabet_q())
    throw Error("ConcatenatedCode: inner size must match outer alphabet");
  if (inner_.words.size() != inner_.q) throw Error("ConcatenatedCode: need one word per symbol");
  for (const auto& w : inner_.words) {
    if (w.size() != inner_.len) throw Error("ConcatenatedCode: ragged inner words");
    for (const auto s : w)
      if (s > 1) throw Error("ConcatenatedCode: inner words must be binary");
  }
}

Word ConcatenatedCode::encode_index(std::uint64_t index) const {
  const auto outer_word = outer_->encode_index(index);
  Word out;
  out.reserve(length());
  for (const auto s : outer_word) {
    const auto& block = inner_.words[s];
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::optional<Fraction> ConcatenatedCode::dimension_log_q() const {
  const auto count = size();
  if (count != 0 && (count & (count - 1)) == 0) {
    long long e = 0;
    for (auto v = count; v > 1; v >>= 1) ++e;
    return Fraction(e);
  }
  return std::nullopt;
}

ConcatenatedCode concatenate(std::shared_ptr<const MotherCode> outer, InnerCode inner) {
  return ConcatenatedCode(std::move(outer), std::move(inner));
}

InnerCode find_inner_code(std::uint32_t q, double min_rel_distance, std::uint32_t max_len,
                          std::uint64_t seed, std::uint64_t attempts_per_len) {
  if (q < 2) throw Error("find_inner_code: q must be >= 2");
  if (max_len == 0 || max_len > 32) throw Error("find_inner_code: max_len must be in [1, 32]");
  std::uint32_t start_len = 1;
  while (start_len < 32 && (1ULL << start_len) < q) ++start_len;
  if ((1ULL << max_len) < q) throw Error("find_inner_code: q exceeds 2^max_len");

  Rng rng(seed);
  for (std::uint32_t len = std::max(1u, start_len); len <= max_len; ++len) {
    for (std::uint64_t attempt = 0; attempt < attempts_per_len; ++attempt) {
      std::unordered_set<std::uint64_t> picked;
      std::uint64_t draws = 0;
      while (picked.size() < q && draws < 64ULL * q) {
        ++draws;
        picked.insert(rng.below(1ULL << len));
      }
      if (picked.size() < q) continue;
      std::vector<std::uint64_t> values(picked.begin(), picked.end());
      std::sort(values.begin(), values.end());
      InnerCode candidate;
      candidate.q = q;
      candidate.len = len;
      for (const auto v : values) {
        Word w(len, 0);
        for (std::uint32_t b = 0; b < len; ++b) w[b] = (v >> b) & 1;
        candidate.words.push_back(std::move(w));
      }
      const auto d = inner_min_distance(candidate);
      if (ge_tol(static_cast<double>(d) / len, min_rel_distance)) return candidate;
    }
  }
  throw Error("find_inner_code: search budget exhausted");
}

}  // namespace graphcodes
