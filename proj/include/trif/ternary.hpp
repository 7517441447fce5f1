#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trif {

// All user-facing failures (bad input, violated preconditions) throw this;
// domain results that can legitimately be "false" are returned as values.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Words over {0,1,2} are packed two bits per symbol, 32 symbols per 64-bit
// block. Within a block the FIRST symbol sits in the topmost bit pair, so
// comparing (block[0], block[1]) as unsigned integers is exactly the
// lexicographic order on symbol strings. Two blocks cap the length at 64.
inline constexpr int kMaxWordLen = 64;

class TernaryWord {
 public:
  TernaryWord() = default;
  explicit TernaryWord(int n) : n_(check_len(n)) {}

  static TernaryWord from_string(std::string_view s);
  std::string to_string() const;

  int size() const { return n_; }

  int get(int i) const {
    return int((blocks_[i >> 5] >> shift(i)) & 3u);
  }
  void set(int i, int sym) {
    std::uint64_t b = blocks_[i >> 5] & ~(std::uint64_t(3) << shift(i));
    blocks_[i >> 5] = b | (std::uint64_t(sym) << shift(i));
  }

  std::uint64_t block(int b) const { return blocks_[b]; }
  int block_count() const { return (n_ + 31) / 32; }

  friend auto operator<=>(const TernaryWord& a, const TernaryWord& b) {
    if (auto c = a.blocks_[0] <=> b.blocks_[0]; c != 0) return c;
    if (auto c = a.blocks_[1] <=> b.blocks_[1]; c != 0) return c;
    return a.n_ <=> b.n_;
  }
  friend bool operator==(const TernaryWord&, const TernaryWord&) = default;

 private:
  static int check_len(int n) {
    if (n < 0 || n > kMaxWordLen) throw Error("word length out of range [0,64]: " + std::to_string(n));
    return n;
  }
  static int shift(int i) { return 2 * (31 - (i & 31)); }

  std::array<std::uint64_t, 2> blocks_{};
  int n_ = 0;
};

// Bitmask of coordinate positions, bit i = coordinate i (0-based).
using SupportMask = std::uint64_t;

// A set of distinct equal-length words, kept sorted lexicographically.
// Iteration order, witness order and file output order all follow this.
class TernaryCode {
 public:
  TernaryCode() = default;
  explicit TernaryCode(std::vector<TernaryWord> words);

  int word_length() const { return words_.empty() ? 0 : words_[0].size(); }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const TernaryWord& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<TernaryWord>& words() const { return words_; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

 private:
  std::vector<TernaryWord> words_;
};

struct TripleWitness {
  std::array<std::size_t, 3> index;  // positions within the code's sorted order
  std::array<TernaryWord, 3> word;
};

// min over all unordered triples of the number of positions where the three
// symbols are exactly {0,1,2}; no value when there is no triple (|C| < 3).
struct TrifferenceReport {
  std::optional<int> min_count;            // empty = infinity sentinel
  std::optional<TripleWitness> witness;    // first triple attaining the min
};

// Positions where {x_i, y_i, z_i} = {0,1,2}, i.e. all three pairwise differ.
SupportMask triffer_positions(const TernaryWord& x, const TernaryWord& y, const TernaryWord& z);
int triffer_count(const TernaryWord& x, const TernaryWord& y, const TernaryWord& z);

TrifferenceReport min_triple_trifference(const TernaryCode& code);

// True iff every triple of distinct words triffers in at least m positions
// (vacuously true for |C| < 3). On failure the witness is the first violating
// triple in lexicographic index order.
struct VerifyResult {
  bool ok;
  std::optional<TripleWitness> violation;
};
VerifyResult is_m_trifferent(const TernaryCode& code, int m);

// A trifference-preserving map: coordinate i of the input becomes coordinate
// perm_to[i] of the output, then symbol_perm[j] relabels symbols at output
// coordinate j. symbol_perm[j] must be a permutation of {0,1,2}.
struct CodeSymmetry {
  std::vector<int> perm_to;
  std::vector<std::array<std::uint8_t, 3>> symbol_perm;
};
TernaryCode apply_symmetry(const TernaryCode& code, const CodeSymmetry& g);

// Each word repeated m times coordinate-wise; multiplies every triple's
// trifference count by exactly m. Rejects n*m > 64.
TernaryCode repetition_lift(const TernaryCode& code, int m);

// Removes the given coordinates from every word. Throws if two words collide.
TernaryCode delete_coordinates(const TernaryCode& code, const std::vector<int>& coords);

// Drops all words whose i-th symbol is the least frequent symbol at i (ties
// broken toward the larger symbol value), then deletes coordinate i. For an
// m-trifferent input the result is m-trifferent; for |C| >= 4 it keeps at
// least ceil(2|C|/3) words (tiny codes can collide down to fewer, the result
// is deduplicated set-style either way).
TernaryCode puncture_majority(const TernaryCode& code, int coord);

}  // namespace trif
