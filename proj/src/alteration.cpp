#include "trif/alteration.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trif/kernels.hpp"
#include "trif/rng.hpp"

namespace trif {

namespace {

struct Packed2 {
  std::uint64_t b0, b1;
};

inline int count3(const Packed2& x, const Packed2& y, const Packed2& z) {
  using kern::diff_mask;
  int c = std::popcount(diff_mask(x.b0, y.b0) & diff_mask(x.b0, z.b0) & diff_mask(y.b0, z.b0));
  c += std::popcount(diff_mask(x.b1, y.b1) & diff_mask(x.b1, z.b1) & diff_mask(y.b1, z.b1));
  return c;
}

// One sample-and-delete attempt; returns the surviving words, sorted.
std::vector<TernaryWord> run_attempt(int n, int m, long long t, Rng rng) {
  std::vector<TernaryWord> words;
  words.reserve(static_cast<std::size_t>(t));
  for (long long s = 0; s < t; ++s) {
    TernaryWord w(n);
    for (int i = 0; i < n; ++i) w.set(i, int(rng.below(3)));
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());

  const std::size_t tt = words.size();
  std::vector<Packed2> packed(tt);
  for (std::size_t i = 0; i < tt; ++i) packed[i] = {words[i].block(0), words[i].block(1)};

  // All triples triffering in fewer than m positions.
  std::vector<std::array<std::uint32_t, 3>> bad;
  for (std::size_t i = 0; i + 2 < tt; ++i) {
    for (std::size_t j = i + 1; j + 1 < tt; ++j) {
      const std::uint64_t tij0 = kern::diff_mask(packed[i].b0, packed[j].b0);
      const std::uint64_t tij1 = kern::diff_mask(packed[i].b1, packed[j].b1);
      for (std::size_t k = j + 1; k < tt; ++k) {
        int c = std::popcount(tij0 & kern::diff_mask(packed[i].b0, packed[k].b0) &
                              kern::diff_mask(packed[j].b0, packed[k].b0));
        if (c < m) {
          c += std::popcount(tij1 & kern::diff_mask(packed[i].b1, packed[k].b1) &
                             kern::diff_mask(packed[j].b1, packed[k].b1));
          if (c < m)
            bad.push_back({std::uint32_t(i), std::uint32_t(j), std::uint32_t(k)});
        }
      }
    }
  }

  std::vector<int> degree(tt, 0);
  std::vector<std::vector<std::uint32_t>> triples_of(tt);
  for (std::uint32_t b = 0; b < bad.size(); ++b)
    for (std::uint32_t w : bad[b]) {
      ++degree[w];
      triples_of[w].push_back(b);
    }

  std::vector<char> word_alive(tt, 1);
  std::vector<char> triple_alive(bad.size(), 1);
  std::size_t triples_left = bad.size();
  while (triples_left > 0) {
    // Highest degree; ties go to the lexicographically smallest word, which
    // is the smallest index since `words` is sorted.
    std::size_t victim = tt;
    for (std::size_t i = 0; i < tt; ++i)
      if (word_alive[i] && degree[i] > 0 && (victim == tt || degree[i] > degree[victim]))
        victim = i;
    word_alive[victim] = 0;
    for (std::uint32_t b : triples_of[victim]) {
      if (!triple_alive[b]) continue;
      triple_alive[b] = 0;
      --triples_left;
      for (std::uint32_t w : bad[b]) --degree[w];
    }
  }

  std::vector<TernaryWord> kept;
  kept.reserve(tt);
  for (std::size_t i = 0; i < tt; ++i)
    if (word_alive[i]) kept.push_back(words[i]);
  return kept;
}

}  // namespace

AlterationResult alteration_construct(int n, int m, std::uint64_t seed, int retries) {
  if (m < 1) throw Error("alteration requires m >= 1");
  if (9 * m >= 2 * n) throw Error("alteration requires 9m < 2n, got m=" + std::to_string(m) +
                                  ", n=" + std::to_string(n));
  if (retries < 0) throw Error("retries must be nonnegative");

  AlterationResult result;
  result.plan = alteration_plan(n, m);

  std::vector<TernaryWord> best;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    std::vector<TernaryWord> kept = run_attempt(n, m, result.plan.t, Rng::stream(seed, std::uint64_t(attempt)));
    result.attempts_used = attempt + 1;
    if (kept.size() > best.size() || (kept.size() == best.size() && kept < best)) best = std::move(kept);
    if (static_cast<long long>(best.size()) >= result.plan.size_target) break;
  }

  result.code = TernaryCode(std::move(best));
  result.target_met = static_cast<long long>(result.code.size()) >= result.plan.size_target;
  auto check = is_m_trifferent(result.code, m);
  if (!check.ok) throw Error("internal: alteration produced a non-trifferent code");
  return result;
}

}  // namespace trif
