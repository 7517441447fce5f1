#include "trif/linear.hpp"

#include <algorithm>

#include "trif/bounds.hpp"

namespace trif {

namespace {

// Apply a coordinate-deletion mask (keep bits) and return the shortened word.
TernaryWord puncture_word(const TernaryWord& w, const std::vector<int>& keep) {
  TernaryWord v(int(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) v.set(int(j), w.get(keep[j]));
  return v;
}

bool subset_of(SupportMask a, SupportMask b) { return (a & ~b) == 0; }

}  // namespace

TernaryWord word_add(const TernaryWord& a, const TernaryWord& b) {
  if (a.size() != b.size()) throw Error("length mismatch");
  TernaryWord r(a.size());
  for (int i = 0; i < a.size(); ++i) r.set(i, (a.get(i) + b.get(i)) % 3);
  return r;
}

TernaryWord word_scale(int s, const TernaryWord& a) {
  TernaryWord r(a.size());
  for (int i = 0; i < a.size(); ++i) r.set(i, (a.get(i) * s) % 3);
  return r;
}

SupportMask support_mask(const TernaryWord& w) {
  SupportMask m = 0;
  for (int i = 0; i < w.size(); ++i)
    if (w.get(i) != 0) m |= SupportMask(1) << i;
  return m;
}

int word_rank(std::vector<TernaryWord> rows) {
  if (rows.empty()) return 0;
  int n = rows[0].size();
  int rank = 0;
  for (int col = 0; col < n && rank < int(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[std::size_t(r)].get(col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[std::size_t(rank)], rows[std::size_t(pivot)]);
    if (rows[std::size_t(rank)].get(col) == 2)
      rows[std::size_t(rank)] = word_scale(2, rows[std::size_t(rank)]);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank) continue;
      int f = rows[std::size_t(r)].get(col);
      if (f)
        rows[std::size_t(r)] =
            word_add(rows[std::size_t(r)], word_scale(3 - f, rows[std::size_t(rank)]));
    }
    ++rank;
  }
  return rank;
}

LinearCode make_linear_code(std::vector<TernaryWord> rows) {
  if (rows.empty()) throw Error("generator needs at least one row");
  int n = rows[0].size();
  for (const TernaryWord& r : rows)
    if (r.size() != n) throw Error("generator rows must share one length");
  if (n < 1) throw Error("generator needs at least one column");
  int k = int(rows.size());
  if (word_rank(rows) != k) throw Error("generator must have full row rank");
  return {k, n, std::move(rows)};
}

TernaryCode enumerate_codewords(const LinearCode& G) {
  if (G.k > 12) throw Error("codeword enumeration supported for k <= 12");
  long long total = 1;
  for (int i = 0; i < G.k; ++i) total *= 3;
  std::vector<TernaryWord> words;
  words.reserve(std::size_t(total));
  for (long long msg = 0; msg < total; ++msg) {
    TernaryWord w(G.n);
    long long rest = msg;
    for (int i = G.k - 1; i >= 0; --i) {
      int coef = int(rest % 3);
      rest /= 3;
      if (coef) w = word_add(w, word_scale(coef, G.rows[std::size_t(i)]));
    }
    words.push_back(w);
  }
  TernaryCode code(std::move(words));
  if (static_cast<long long>(code.size()) != total)
    throw Error("internal: codeword collision in a full-rank code");
  return code;
}

namespace {

// Core minimality scan over a set of (already punctured) codewords, sorted
// lexicographically; returns the first violating pair in that order.
std::optional<std::pair<TernaryWord, TernaryWord>> first_nested_pair(
    const std::vector<TernaryWord>& words, const std::vector<SupportMask>& supports) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (supports[i] == 0) continue;  // zero word
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j || supports[j] == 0) continue;
      if (words[j] == word_scale(2, words[i])) continue;  // dependent pair
      if (subset_of(supports[i], supports[j])) return std::make_pair(words[i], words[j]);
    }
  }
  return std::nullopt;
}

}  // namespace

MinimalityResult is_minimal(const LinearCode& G) { return is_m_minimal(G, 1); }

MinimalityResult is_m_minimal(const LinearCode& G, int m, long long budget) {
  if (m < 1) throw Error("minimality strength must be at least 1");
  if (m - 1 > G.n) throw Error("cannot delete more coordinates than the length");
  BigInt work = binomial(G.n, m - 1) * power(3, 2 * G.k);
  if (work > budget)
    throw Error("m-minimality check would need " + work.str() +
                " elementary steps, above the budget of " + std::to_string(budget));

  TernaryCode code = enumerate_codewords(G);

  // Iterate all (m-1)-subsets of coordinates in lexicographic order.
  std::vector<int> del(std::size_t(m - 1));
  for (int i = 0; i < m - 1; ++i) del[std::size_t(i)] = i;
  for (;;) {
    std::vector<int> keep;
    keep.reserve(std::size_t(G.n - (m - 1)));
    {
      std::size_t d = 0;
      for (int i = 0; i < G.n; ++i) {
        if (d < del.size() && del[d] == i) {
          ++d;
          continue;
        }
        keep.push_back(i);
      }
    }
    std::vector<TernaryWord> punct;
    punct.reserve(code.size());
    for (const TernaryWord& w : code) punct.push_back(puncture_word(w, keep));
    std::sort(punct.begin(), punct.end());
    for (std::size_t i = 0; i + 1 < punct.size(); ++i) {
      if (punct[i] == punct[i + 1])
        return {false, MinimalityWitness{del, punct[i], punct[i + 1], "collision"}};
    }
    std::vector<SupportMask> supports;
    supports.reserve(punct.size());
    for (const TernaryWord& w : punct) supports.push_back(support_mask(w));
    if (auto bad = first_nested_pair(punct, supports))
      return {false, MinimalityWitness{del, bad->first, bad->second, "nested-support"}};

    // next (m-1)-subset
    int pos = m - 2;
    while (pos >= 0 && del[std::size_t(pos)] == G.n - (m - 1) + pos) --pos;
    if (pos < 0) break;
    ++del[std::size_t(pos)];
    for (int i = pos + 1; i < m - 1; ++i) del[std::size_t(i)] = del[std::size_t(i - 1)] + 1;
  }
  return {true, std::nullopt};
}

LinearCode generator_from_points(const PointMultiset& B,
                                 const std::vector<int>& column_order) {
  std::vector<GF3Vector> cols;
  for (const auto& [p, mult] : B.entries)
    for (int i = 0; i < mult; ++i) cols.push_back(p.rep);
  if (cols.empty()) throw Error("empty point set has no generator");
  {
    std::vector<GF3Vector> span = cols;
    if (gf3_rank(span) != B.k) throw Error("point set does not span the ambient space");
  }
  if (!column_order.empty()) {
    if (column_order.size() != cols.size())
      throw Error("column order must be a permutation of the column indices");
    std::vector<bool> seen(cols.size(), false);
    std::vector<GF3Vector> permuted(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int c = column_order[j];
      if (c < 0 || c >= int(cols.size()) || seen[std::size_t(c)])
        throw Error("column order must be a permutation of the column indices");
      seen[std::size_t(c)] = true;
      permuted[j] = cols[std::size_t(c)];
    }
    cols = std::move(permuted);
  }
  std::vector<TernaryWord> rows;
  rows.reserve(std::size_t(B.k));
  for (int i = 0; i < B.k; ++i) {
    TernaryWord r(int(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) r.set(int(j), cols[j].get(i));
    rows.push_back(r);
  }
  return make_linear_code(std::move(rows));
}

PointsFromGenerator points_from_generator(const LinearCode& G) {
  std::vector<ProjectivePoint> pts;
  for (int j = 0; j < G.n; ++j) {
    GF3Vector col(G.k);
    for (int i = 0; i < G.k; ++i) col.set(i, G.rows[std::size_t(i)].get(j));
    if (col.is_zero()) throw Error("column " + std::to_string(j) + " is zero");
    pts.push_back(canonical_point(col));
  }
  PointMultiset B = make_multiset(G.k, pts);
  bool repeated = false;
  for (const auto& [p, mult] : B.entries)
    if (mult > 1) repeated = true;
  return {std::move(B), repeated};
}

}  // namespace trif
