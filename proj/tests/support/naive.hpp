#pragma once

// Deliberately naive reference implementations used as independent oracles.
// Everything works on plain strings / small vectors and avoids the packed
// kernels, the symmetry reductions and the pruning bounds of the library.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace naive {

// Number of positions where the three symbols are exactly {0,1,2}.
inline int triple_count(const std::string& a, const std::string& b,
                        const std::string& c) {
  int out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool seen[3] = {false, false, false};
    seen[a[i] - '0'] = true;
    seen[b[i] - '0'] = true;
    seen[c[i] - '0'] = true;
    out += seen[0] && seen[1] && seen[2];
  }
  return out;
}

inline bool is_m_trifferent(const std::vector<std::string>& code, int m) {
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      for (std::size_t k = j + 1; k < code.size(); ++k)
        if (triple_count(code[i], code[j], code[k]) < m) return false;
  return true;
}

// All 3^n ternary strings of length n in lexicographic order.
inline std::vector<std::string> all_words(int n) {
  std::vector<std::string> out{std::string(std::size_t(n), '0')};
  out.reserve(std::size_t(1) << (std::size_t(n) + std::size_t(n) / 2));
  std::string w(std::size_t(n), '0');
  while (true) {
    int i = n - 1;
    while (i >= 0 && w[std::size_t(i)] == '2') w[std::size_t(i--)] = '0';
    if (i < 0) break;
    ++w[std::size_t(i)];
    out.push_back(w);
  }
  return out;
}

namespace detail {

inline void dfs(const std::vector<std::string>& words, std::size_t idx,
                std::vector<std::string>& chosen, int m, int& best) {
  best = std::max(best, int(chosen.size()));
  for (std::size_t c = idx; c < words.size(); ++c) {
    if (int(chosen.size()) + int(words.size() - c) <= best) return;
    bool ok = true;
    for (std::size_t i = 0; i < chosen.size() && ok; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && ok; ++j)
        ok = triple_count(chosen[i], chosen[j], words[c]) >= m;
    if (!ok) continue;
    chosen.push_back(words[c]);
    dfs(words, c + 1, chosen, m, best);
    chosen.pop_back();
  }
}

}  // namespace detail

// Exhaustive maximum m-trifferent code size over every subset of {0,1,2}^n,
// with only the trivial cardinality cut. Feasible for n <= 3.
inline int max_trifferent(int n, int m) {
  std::vector<std::string> words = all_words(n);
  std::vector<std::string> chosen;
  int best = 0;
  detail::dfs(words, 0, chosen, m, best);
  return best;
}

}  // namespace naive
