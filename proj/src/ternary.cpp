#include "trif/ternary.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "trif/kernels.hpp"

namespace trif {

namespace {

// Convert a per-block lane mask (bit 2*(31-i) flags block-local coordinate i)
// into a coordinate mask (bit i flags coordinate i).
SupportMask lanes_to_coords(std::uint64_t lanes, int block) {
  SupportMask out = 0;
  while (lanes) {
    int j = std::countr_zero(lanes);
    out |= SupportMask(1) << (32 * block + 31 - j / 2);
    lanes &= lanes - 1;
  }
  return out;
}

std::uint64_t triple_lanes(const TernaryWord& x, const TernaryWord& y,
                           const TernaryWord& z, int block) {
  std::uint64_t a = x.block(block), b = y.block(block), c = z.block(block);
  return kern::diff_mask(a, b) & kern::diff_mask(a, c) & kern::diff_mask(b, c);
}

void check_same_length(const TernaryWord& w, int n) {
  if (w.size() != n)
    throw Error("words in a code must share one length; found " + std::to_string(w.size()) +
                " after " + std::to_string(n));
}

}  // namespace

TernaryWord TernaryWord::from_string(std::string_view s) {
  if (s.size() > std::size_t(kMaxWordLen))
    throw Error("word longer than 64 symbols: \"" + std::string(s) + "\"");
  TernaryWord w(int(s.size()));
  for (int i = 0; i < int(s.size()); ++i) {
    char c = s[std::size_t(i)];
    if (c < '0' || c > '2')
      throw Error("invalid symbol '" + std::string(1, c) + "' in word \"" + std::string(s) +
                  "\" (alphabet is {0,1,2})");
    w.set(i, c - '0');
  }
  return w;
}

std::string TernaryWord::to_string() const {
  std::string s(std::size_t(n_), '0');
  for (int i = 0; i < n_; ++i) s[std::size_t(i)] = char('0' + get(i));
  return s;
}

TernaryCode::TernaryCode(std::vector<TernaryWord> words) : words_(std::move(words)) {
  if (words_.empty()) return;
  int n = words_[0].size();
  for (const TernaryWord& w : words_) check_same_length(w, n);
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

SupportMask triffer_positions(const TernaryWord& x, const TernaryWord& y, const TernaryWord& z) {
  if (x.size() != y.size() || x.size() != z.size())
    throw Error("trifference is only defined for equal-length words");
  SupportMask out = 0;
  for (int b = 0; b < x.block_count(); ++b) out |= lanes_to_coords(triple_lanes(x, y, z, b), b);
  return out;
}

int triffer_count(const TernaryWord& x, const TernaryWord& y, const TernaryWord& z) {
  if (x.size() != y.size() || x.size() != z.size())
    throw Error("trifference is only defined for equal-length words");
  int t = 0;
  for (int b = 0; b < x.block_count(); ++b) t += std::popcount(triple_lanes(x, y, z, b));
  return t;
}

TrifferenceReport min_triple_trifference(const TernaryCode& code) {
  TrifferenceReport rep;
  const std::size_t T = code.size();
  if (T < 3) return rep;
  const auto& w = code.words();
  const bool one_block = code[0].block_count() <= 1;
  int best = kMaxWordLen + 1;
  std::array<std::size_t, 3> arg{};
  if (one_block) {
    std::vector<std::uint64_t> packed(T);
    for (std::size_t i = 0; i < T; ++i) packed[i] = w[i].block(0);
    for (std::size_t i = 0; i + 2 < T && best > 0; ++i) {
      for (std::size_t j = i + 1; j + 1 < T && best > 0; ++j) {
        std::uint64_t t_uw = kern::diff_mask(packed[i], packed[j]);
        auto r = kern::min_scan()(packed[i], packed[j], t_uw, packed.data() + j + 1, T - j - 1);
        if (r.min_count < best) {
          best = r.min_count;
          arg = {i, j, j + 1 + r.argmin};
        }
      }
    }
  } else {
    for (std::size_t i = 0; i + 2 < T && best > 0; ++i) {
      for (std::size_t j = i + 1; j + 1 < T && best > 0; ++j) {
        for (std::size_t k = j + 1; k < T; ++k) {
          int t = triffer_count(w[i], w[j], w[k]);
          if (t < best) {
            best = t;
            arg = {i, j, k};
            if (best == 0) break;
          }
        }
      }
    }
  }
  rep.min_count = best;
  rep.witness = TripleWitness{arg, {w[arg[0]], w[arg[1]], w[arg[2]]}};
  return rep;
}

VerifyResult is_m_trifferent(const TernaryCode& code, int m) {
  if (m < 0) throw Error("trifference strength must be nonnegative");
  const std::size_t T = code.size();
  if (T < 3 || m == 0) return {true, std::nullopt};
  const auto& w = code.words();
  if (code[0].block_count() <= 1) {
    std::vector<std::uint64_t> packed(T);
    for (std::size_t i = 0; i < T; ++i) packed[i] = w[i].block(0);
    for (std::size_t i = 0; i + 2 < T; ++i) {
      for (std::size_t j = i + 1; j + 1 < T; ++j) {
        std::uint64_t t_uw = kern::diff_mask(packed[i], packed[j]);
        std::size_t bad =
            kern::first_bad()(packed[i], packed[j], t_uw, packed.data() + j + 1, T - j - 1, m);
        if (bad < T - j - 1) {
          std::size_t k = j + 1 + bad;
          return {false, TripleWitness{{i, j, k}, {w[i], w[j], w[k]}}};
        }
      }
    }
  } else {
    for (std::size_t i = 0; i + 2 < T; ++i)
      for (std::size_t j = i + 1; j + 1 < T; ++j)
        for (std::size_t k = j + 1; k < T; ++k)
          if (triffer_count(w[i], w[j], w[k]) < m)
            return {false, TripleWitness{{i, j, k}, {w[i], w[j], w[k]}}};
  }
  return {true, std::nullopt};
}

TernaryCode apply_symmetry(const TernaryCode& code, const CodeSymmetry& g) {
  const int n = code.word_length();
  if (int(g.perm_to.size()) != n || int(g.symbol_perm.size()) != n)
    throw Error("symmetry must describe exactly the code's " + std::to_string(n) +
                " coordinates");
  std::vector<bool> hit(std::size_t(n), false);
  for (int i = 0; i < n; ++i) {
    int p = g.perm_to[std::size_t(i)];
    if (p < 0 || p >= n || hit[std::size_t(p)])
      throw Error("coordinate map is not a permutation");
    hit[std::size_t(p)] = true;
  }
  for (const auto& sp : g.symbol_perm) {
    bool seen[3] = {false, false, false};
    for (int s = 0; s < 3; ++s) {
      if (sp[std::size_t(s)] > 2 || seen[sp[std::size_t(s)]])
        throw Error("symbol map is not a permutation of {0,1,2}");
      seen[sp[std::size_t(s)]] = true;
    }
  }
  std::vector<TernaryWord> out;
  out.reserve(code.size());
  for (const TernaryWord& w : code) {
    TernaryWord v(n);
    for (int i = 0; i < n; ++i) {
      int p = g.perm_to[std::size_t(i)];
      v.set(p, g.symbol_perm[std::size_t(p)][std::size_t(w.get(i))]);
    }
    out.push_back(v);
  }
  TernaryCode result(std::move(out));
  if (result.size() != code.size()) throw Error("symmetry collapsed distinct words");
  return result;
}

TernaryCode repetition_lift(const TernaryCode& code, int m) {
  if (m < 1) throw Error("repetition factor must be at least 1");
  const int n = code.word_length();
  if (n * m > kMaxWordLen)
    throw Error("repetition lift would exceed 64 symbols: " + std::to_string(n) + "*" +
                std::to_string(m));
  std::vector<TernaryWord> out;
  out.reserve(code.size());
  for (const TernaryWord& w : code) {
    TernaryWord v(n * m);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < m; ++r) v.set(i * m + r, w.get(i));
    out.push_back(v);
  }
  return TernaryCode(std::move(out));
}

TernaryCode delete_coordinates(const TernaryCode& code, const std::vector<int>& coords) {
  const int n = code.word_length();
  std::vector<bool> drop(std::size_t(n), false);
  for (int c : coords) {
    if (c < 0 || c >= n) throw Error("coordinate " + std::to_string(c) + " out of range");
    drop[std::size_t(c)] = true;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!drop[std::size_t(i)]) keep.push_back(i);
  std::vector<TernaryWord> out;
  out.reserve(code.size());
  for (const TernaryWord& w : code) {
    TernaryWord v(int(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) v.set(int(j), w.get(keep[j]));
    out.push_back(v);
  }
  // Detect any two source words collapsing onto one image.
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out[a] != out[b]) return out[a] < out[b];
    return a < b;
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (out[order[i]] == out[order[i + 1]]) {
      std::size_t a = std::min(order[i], order[i + 1]);
      std::size_t b = std::max(order[i], order[i + 1]);
      throw Error("deleting those coordinates merges \"" + code[a].to_string() + "\" and \"" +
                  code[b].to_string() + "\"");
    }
  }
  return TernaryCode(std::move(out));
}

TernaryCode puncture_majority(const TernaryCode& code, int coord) {
  const int n = code.word_length();
  if (coord < 0 || coord >= n)
    throw Error("coordinate " + std::to_string(coord) + " out of range");
  std::size_t freq[3] = {0, 0, 0};
  for (const TernaryWord& w : code) ++freq[std::size_t(w.get(coord))];
  int least = 2;
  if (freq[1] < freq[std::size_t(least)]) least = 1;  // ties keep the larger symbol
  if (freq[0] < freq[std::size_t(least)]) least = 0;
  std::vector<TernaryWord> out;
  out.reserve(code.size() - freq[std::size_t(least)]);
  for (const TernaryWord& w : code) {
    if (w.get(coord) == least) continue;
    TernaryWord v(n - 1);
    for (int i = 0, j = 0; i < n; ++i)
      if (i != coord) v.set(j++, w.get(i));
    out.push_back(v);
  }
  return TernaryCode(std::move(out));
}

}  // namespace trif
