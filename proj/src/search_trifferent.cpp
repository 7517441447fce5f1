#include "trif/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "trif/kernels.hpp"

namespace trif {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kSearchLenCap = 12;  // the universe of 3^n words is materialized

std::uint64_t pack_word(const TernaryWord& w) { return w.block(0); }

TernaryWord unpack_word(std::uint64_t b, int n) {
  TernaryWord w(n);
  for (int i = 0; i < n; ++i) w.set(i, int((b >> (2 * (31 - i))) & 3u));
  return w;
}

// All 3^n words in lexicographic (= packed-value) order.
std::vector<std::uint64_t> all_words(int n) {
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t(std::pow(3.0, n) + 0.5));
  TernaryWord w(n);
  std::vector<int> sym(std::size_t(n), 0);
  for (;;) {
    out.push_back(pack_word(w));
    int i = n - 1;
    while (i >= 0 && sym[std::size_t(i)] == 2) {
      sym[std::size_t(i)] = 0;
      w.set(i, 0);
      --i;
    }
    if (i < 0) break;
    ++sym[std::size_t(i)];
    w.set(i, sym[std::size_t(i)]);
  }
  return out;
}

void atomic_max(std::atomic<long long>& a, long long v) {
  long long cur = a.load(std::memory_order_relaxed);
  while (cur < v && !a.compare_exchange_weak(cur, v)) {
  }
}

// A root subtree: a fixed chosen prefix plus its candidate pool. Generic
// tasks branch on the pool directly; canonical-pair tasks hold {0, w1} with
// the canonicalized third-word candidates, deeper levels drawing from the
// full universe.
struct Task {
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint64_t> pool;
  bool canonical_pair = false;
  long long root_bound = 0;  // coarse size bound on every code in the subtree
};

struct Shared {
  int n = 0;
  int m = 0;
  long long hard_ub = 0;  // proven closed-form upper bound (stop when reached)
  bool has_budget = false;
  Clock::time_point deadline{};
  const std::vector<std::uint64_t>* universe = nullptr;  // canonical-pair tasks only
  std::size_t ids_cap = 1;  // scratch size every worker needs

  std::atomic<long long> best{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<long long> frontier{0};

  std::mutex mu;
  std::vector<std::uint64_t> best_words;  // guarded by mu
};

// Worker-local state: per-level filter buffers plus the id scratch the
// kernel signature requires (ids carry no meaning for this search).
struct Local {
  std::vector<std::vector<std::uint64_t>> buf;
  std::vector<std::uint32_t> ids;
  std::vector<std::uint64_t> chosen;
  std::uint64_t nodes = 0;

  std::uint64_t* level_buf(std::size_t level, std::size_t cap) {
    if (buf.size() <= level) buf.resize(level + 1);
    if (buf[level].size() < cap) buf[level].resize(cap);
    return buf[level].data();
  }
};

bool out_of_time(const Shared& sh) {
  return sh.has_budget && Clock::now() >= sh.deadline;
}

void note_stop(Shared& sh, long long bound) {
  if (sh.budget_hit.load(std::memory_order_relaxed)) atomic_max(sh.frontier, bound);
}

void record_if_better(Shared& sh, const std::vector<std::uint64_t>& chosen) {
  long long sz = static_cast<long long>(chosen.size());
  atomic_max(sh.best, sz);
  std::lock_guard<std::mutex> lk(sh.mu);
  if (sz > static_cast<long long>(sh.best_words.size())) {
    sh.best_words = chosen;
    if (sz >= sh.hard_ub) sh.stop.store(true, std::memory_order_relaxed);
  }
}

// Applies the new pairs (u, c) for every already-chosen u to the candidate
// tail. Returns a pointer to the surviving candidates (the level buffer, or
// `src` itself when no pair applied) and their count via out_count.
const std::uint64_t* filter_tail(Shared& sh, Local& lo, std::uint64_t c,
                                 const std::uint64_t* src, std::size_t count,
                                 std::size_t level, std::size_t* out_count) {
  auto filter = kern::filter();
  const std::uint64_t* cur = src;
  std::size_t cnt = count;
  std::uint64_t* dst = nullptr;
  for (std::uint64_t u : lo.chosen) {
    if (cnt == 0) break;
    if (dst == nullptr) dst = lo.level_buf(level, count);
    cnt = filter(u, c, kern::diff_mask(u, c), cur, lo.ids.data(), cnt, sh.m, dst, lo.ids.data());
    cur = dst;
  }
  *out_count = cnt;
  return cur;
}

// Phase-1 DFS with shared-incumbent pruning. Precondition: `cand` holds
// exactly the words greater than the last chosen word that are compatible
// with every chosen pair, so any extension of the current code lives in it.
void dfs(Shared& sh, Local& lo, const std::uint64_t* cand, std::size_t count) {
  const std::size_t d = lo.chosen.size();
  if (sh.stop.load(std::memory_order_relaxed)) {
    note_stop(sh, static_cast<long long>(d + count));
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    long long best = sh.best.load(std::memory_order_relaxed);
    if (static_cast<long long>(d + (count - i)) <= best) return;  // cannot beat it
    if ((++lo.nodes & 63u) == 0 && out_of_time(sh)) {
      sh.budget_hit.store(true, std::memory_order_relaxed);
      sh.stop.store(true, std::memory_order_relaxed);
    }
    if (sh.stop.load(std::memory_order_relaxed)) {
      note_stop(sh, static_cast<long long>(d + (count - i)));
      return;
    }
    std::uint64_t c = cand[i];
    std::size_t child_count = 0;
    const std::uint64_t* child =
        filter_tail(sh, lo, c, cand + i + 1, count - i - 1, d + 1, &child_count);
    lo.chosen.push_back(c);
    if (static_cast<long long>(lo.chosen.size()) > sh.best.load(std::memory_order_relaxed))
      record_if_better(sh, lo.chosen);
    if (child_count > 0) dfs(sh, lo, child, child_count);
    lo.chosen.pop_back();
  }
}

// Canonical second words 0^{n-j} 1^j for j = 1..n (index j-1).
std::vector<std::uint64_t> canonical_second_words(int n) {
  std::vector<std::uint64_t> out;
  TernaryWord w(n);
  for (int j = 1; j <= n; ++j) {
    w.set(n - j, 1);
    out.push_back(pack_word(w));
  }
  return out;
}

// Canonical third words for the prefix {0^n, 0^{n-j} 1^j}: no symbol 2 on
// the first n-j coordinates and both coordinate blocks sorted ascending.
// The group fixing the prefix pointwise (coordinate permutations within the
// two blocks, symbol swaps 1<->2 where the second word is 0) maps any third
// word onto exactly one of these, so restricting to them loses no code up to
// symmetry.
std::vector<std::uint64_t> canonical_third_words(int n, int j, std::uint64_t w1, int m) {
  std::vector<std::uint64_t> out;
  const int zlen = n - j;
  for (int a = 0; a <= zlen; ++a) {
    for (int z = 0; z <= j; ++z) {
      for (int o = 0; o + z <= j; ++o) {
        TernaryWord w(n);
        for (int i = 0; i < a; ++i) w.set(zlen - 1 - i, 1);
        for (int i = 0; i < j; ++i) w.set(zlen + i, i < z ? 0 : (i < z + o ? 1 : 2));
        std::uint64_t p = pack_word(w);
        if (p > w1 && kern::triple_count(0, w1, p) >= m) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Words above w1 compatible with the pair (0, w1); the base pool every
// canonical-pair subtree draws from.
std::vector<std::uint64_t> pair_base_pool(Shared& sh, Local& lo, std::uint64_t w1) {
  const std::vector<std::uint64_t>& uni = *sh.universe;
  auto it = std::upper_bound(uni.begin(), uni.end(), w1);
  std::vector<std::uint64_t> base(it, uni.end());
  if (!base.empty()) {
    std::size_t kept = kern::filter()(0, w1, kern::diff_mask(0, w1), base.data(), lo.ids.data(),
                                      base.size(), sh.m, base.data(), lo.ids.data());
    base.resize(kept);
  }
  return base;
}

// Phase-1 body of one task.
void run_task(Shared& sh, Local& lo, const Task& task) {
  lo.chosen = task.prefix;
  if (!task.canonical_pair) {
    dfs(sh, lo, task.pool.data(), task.pool.size());
    return;
  }
  std::vector<std::uint64_t> base = pair_base_pool(sh, lo, task.prefix[1]);
  for (std::uint64_t w2 : task.pool) {
    if (sh.stop.load(std::memory_order_relaxed)) {
      note_stop(sh, task.root_bound);
      return;
    }
    auto it = std::upper_bound(base.begin(), base.end(), w2);
    std::size_t tail = std::size_t(base.end() - it);
    if (static_cast<long long>(3 + tail) <= sh.best.load(std::memory_order_relaxed)) break;
    ++lo.nodes;
    std::size_t child_count = 0;
    const std::uint64_t* child =
        tail ? filter_tail(sh, lo, w2, &*it, tail, 3, &child_count) : nullptr;
    lo.chosen.push_back(w2);
    if (static_cast<long long>(lo.chosen.size()) > sh.best.load(std::memory_order_relaxed))
      record_if_better(sh, lo.chosen);
    if (child_count > 0) dfs(sh, lo, child, child_count);
    lo.chosen.pop_back();
  }
}

// Phase-2 DFS: finds the first (DFS order = lexicographic order) code of
// size exactly `target` within the task, independent of any shared state.
bool dfs_witness(Shared& sh, Local& lo, const std::uint64_t* cand, std::size_t count,
                 long long target, std::vector<std::uint64_t>* out) {
  const std::size_t d = lo.chosen.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (static_cast<long long>(d + (count - i)) < target) return false;
    if ((++lo.nodes & 63u) == 0 && out_of_time(sh)) sh.stop.store(true, std::memory_order_relaxed);
    if (sh.stop.load(std::memory_order_relaxed)) return false;
    std::uint64_t c = cand[i];
    std::size_t child_count = 0;
    const std::uint64_t* child =
        filter_tail(sh, lo, c, cand + i + 1, count - i - 1, d + 1, &child_count);
    lo.chosen.push_back(c);
    if (static_cast<long long>(lo.chosen.size()) == target) {
      *out = lo.chosen;
      lo.chosen.pop_back();
      return true;
    }
    if (child_count > 0 && dfs_witness(sh, lo, child, child_count, target, out)) {
      lo.chosen.pop_back();
      return true;
    }
    lo.chosen.pop_back();
  }
  return false;
}

bool run_task_witness(Shared& sh, Local& lo, const Task& task, long long target,
                      std::vector<std::uint64_t>* out) {
  lo.chosen = task.prefix;
  if (static_cast<long long>(task.prefix.size()) >= target) {
    out->assign(task.prefix.begin(), task.prefix.begin() + std::ptrdiff_t(target));
    return true;
  }
  if (!task.canonical_pair)
    return dfs_witness(sh, lo, task.pool.data(), task.pool.size(), target, out);
  std::vector<std::uint64_t> base = pair_base_pool(sh, lo, task.prefix[1]);
  for (std::uint64_t w2 : task.pool) {
    if (sh.stop.load(std::memory_order_relaxed)) return false;
    auto it = std::upper_bound(base.begin(), base.end(), w2);
    std::size_t tail = std::size_t(base.end() - it);
    if (static_cast<long long>(3 + tail) < target) break;
    ++lo.nodes;
    std::size_t child_count = 0;
    const std::uint64_t* child =
        tail ? filter_tail(sh, lo, w2, &*it, tail, 3, &child_count) : nullptr;
    lo.chosen.push_back(w2);
    if (static_cast<long long>(lo.chosen.size()) == target) {
      *out = lo.chosen;
      lo.chosen.pop_back();
      return true;
    }
    if (child_count > 0 && dfs_witness(sh, lo, child, child_count, target, out)) {
      lo.chosen.pop_back();
      return true;
    }
    lo.chosen.pop_back();
  }
  return false;
}

// First-fit greedy over a pool extending a fixed prefix; seeds the search.
// Precondition as for dfs: the pool is compatible with every prefix pair.
std::vector<std::uint64_t> greedy_seed(Shared& sh, Local& lo,
                                       const std::vector<std::uint64_t>& prefix,
                                       const std::uint64_t* cand, std::size_t count) {
  lo.chosen = prefix;
  const std::uint64_t* cur = cand;
  std::size_t cnt = count;
  std::size_t level = prefix.size() + 1;
  while (cnt > 0) {
    std::uint64_t c = cur[0];
    std::size_t child_count = 0;
    const std::uint64_t* child = filter_tail(sh, lo, c, cur + 1, cnt - 1, level++, &child_count);
    lo.chosen.push_back(c);
    cur = child;
    cnt = child_count;
  }
  return lo.chosen;
}

long long closed_form_cutoff(int n, int m, long long space_cap) {
  auto bounds = best_bounds(n, m);
  long long cutoff = space_cap;
  const auto& up = bounds.second;
  if (up.integer_value && *up.integer_value <= BigInt(space_cap))
    cutoff = std::min(cutoff, up.integer_value->convert_to<long long>());
  return cutoff;
}

TrifferentOutcome run_search(int n, int m, const std::vector<Task>& tasks, Shared& sh,
                             const std::vector<std::uint64_t>& greedy_chosen, int threads) {
  auto t0 = Clock::now();
  sh.best.store(static_cast<long long>(greedy_chosen.size()));
  sh.best_words = greedy_chosen;
  if (static_cast<long long>(greedy_chosen.size()) >= sh.hard_ub) sh.stop.store(true);

  std::atomic<std::size_t> next{0};
  auto phase1_worker = [&]() {
    Local lo;
    lo.ids.resize(sh.ids_cap);
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      if (sh.stop.load(std::memory_order_relaxed)) {
        note_stop(sh, tasks[i].root_bound);
        continue;
      }
      run_task(sh, lo, tasks[i]);
    }
    sh.nodes.fetch_add(lo.nodes);
  };
  if (threads <= 1) {
    phase1_worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(phase1_worker);
    for (auto& th : pool) th.join();
  }

  TrifferentOutcome out;
  out.value = int(sh.best.load());
  out.budget_hit = sh.budget_hit.load();
  long long search_ub =
      out.budget_hit ? std::max<long long>(sh.frontier.load(), out.value) : out.value;
  out.upper_bound = std::min(sh.hard_ub, search_ub);
  out.optimal = (out.value == out.upper_bound);

  // Witness canonicalization: the lexicographically first code of the final
  // size, found by re-scanning tasks in order with the value as a hard floor.
  // Independent of thread count: the first succeeding task index wins, and
  // each task's answer is computed in isolation.
  std::vector<std::uint64_t> witness = sh.best_words;
  if (!out.budget_hit) {
    sh.stop.store(false);  // phase 2 reuses the flag for its own budget abort
    std::atomic<std::size_t> next2{0};
    std::atomic<std::size_t> found_task{SIZE_MAX};
    std::vector<std::vector<std::uint64_t>> results(tasks.size());
    auto phase2_worker = [&]() {
      Local lo;
      lo.ids.resize(sh.ids_cap);
      for (;;) {
        std::size_t i = next2.fetch_add(1);
        if (i >= tasks.size()) break;
        if (found_task.load() < i) break;  // an earlier task already succeeded
        std::vector<std::uint64_t> w;
        if (run_task_witness(sh, lo, tasks[i], out.value, &w)) {
          results[i] = std::move(w);
          std::size_t cur = found_task.load();
          while (i < cur && !found_task.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
      sh.nodes.fetch_add(lo.nodes);
    };
    if (threads <= 1) {
      phase2_worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(phase2_worker);
      for (auto& th : pool) th.join();
    }
    if (found_task.load() != SIZE_MAX) witness = results[found_task.load()];
  }

  std::vector<TernaryWord> words;
  words.reserve(witness.size());
  for (std::uint64_t b : witness) words.push_back(unpack_word(b, n));
  out.witness = TernaryCode(std::move(words));
  if (!is_m_trifferent(out.witness, m).ok)
    throw Error("internal: search produced an invalid witness");
  out.nodes = sh.nodes.load();
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

void set_deadline(Shared& sh, double budget_seconds) {
  if (budget_seconds > 0) {
    sh.has_budget = true;
    sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(budget_seconds));
  }
}

}  // namespace

TrifferentOutcome max_trifferent_exact(int n, int m, const TrifferentOptions& opt) {
  if (n < 1 || n > kSearchLenCap)
    throw Error("exact search supports 1 <= n <= " + std::to_string(kSearchLenCap));
  if (m < 1 || m > n) throw Error("exact search requires 1 <= m <= n");

  std::vector<std::uint64_t> universe = all_words(n);
  Shared sh;
  sh.n = n;
  sh.m = m;
  sh.universe = &universe;
  sh.ids_cap = universe.size() + 1;
  long long space_cap = static_cast<long long>(universe.size());
  sh.hard_ub = opt.cutoff > 0 ? std::min(opt.cutoff, space_cap)
                              : closed_form_cutoff(n, m, space_cap);
  set_deadline(sh, opt.budget_seconds);

  std::vector<Task> tasks;
  std::vector<std::uint64_t> seed;
  Local lo;
  lo.ids.resize(sh.ids_cap);

  if (opt.symmetry) {
    std::vector<std::uint64_t> seconds = canonical_second_words(n);
    for (int j = 1; j <= n; ++j) {
      Task t;
      std::uint64_t w1 = seconds[std::size_t(j - 1)];
      t.prefix = {0, w1};
      t.pool = canonical_third_words(n, j, w1, m);
      t.canonical_pair = true;
      auto it = std::upper_bound(universe.begin(), universe.end(), w1);
      t.root_bound = 2 + static_cast<long long>(universe.end() - it);
      tasks.push_back(std::move(t));
    }
    // Greedy incumbent: best first-fit over every canonical second word.
    for (int j = 1; j <= n; ++j) {
      std::uint64_t w1 = seconds[std::size_t(j - 1)];
      std::vector<std::uint64_t> base = pair_base_pool(sh, lo, w1);
      std::vector<std::uint64_t> s = greedy_seed(sh, lo, {0, w1}, base.data(), base.size());
      if (s.size() > seed.size() || (s.size() == seed.size() && s < seed)) seed = std::move(s);
    }
  } else {
    for (std::size_t i = 0; i < universe.size(); ++i) {
      Task t;
      t.prefix = {universe[i]};
      t.pool.assign(universe.begin() + std::ptrdiff_t(i) + 1, universe.end());
      t.root_bound = 1 + static_cast<long long>(t.pool.size());
      tasks.push_back(std::move(t));
    }
    seed = greedy_seed(sh, lo, {universe[0]}, universe.data() + 1, universe.size() - 1);
  }

  return run_search(n, m, tasks, sh, seed, std::max(1, opt.threads));
}

TrifferentOutcome max_trifferent_slice(int n, int m, int k_twos, double budget_seconds) {
  if (n < 1 || n > kSearchLenCap)
    throw Error("slice search supports 1 <= n <= " + std::to_string(kSearchLenCap));
  if (m < 1 || m > n) throw Error("slice search requires 1 <= m <= n");
  if (k_twos < 0 || k_twos > n) throw Error("slice weight must lie in [0, n]");

  std::vector<std::uint64_t> universe = all_words(n);
  std::vector<std::uint64_t> slice;
  const std::uint64_t high = kern::kLaneLsb << 1;
  for (std::uint64_t w : universe)
    if (std::popcount(w & high) == k_twos) slice.push_back(w);

  Shared sh;
  sh.n = n;
  sh.m = m;
  sh.ids_cap = slice.size() + 1;
  long long space_cap = static_cast<long long>(slice.size());
  sh.hard_ub =
      std::min(space_cap, closed_form_cutoff(n, m, static_cast<long long>(universe.size())));
  set_deadline(sh, budget_seconds);

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    Task t;
    t.prefix = {slice[i]};
    t.pool.assign(slice.begin() + std::ptrdiff_t(i) + 1, slice.end());
    t.root_bound = 1 + static_cast<long long>(t.pool.size());
    tasks.push_back(std::move(t));
  }

  Local lo;
  lo.ids.resize(sh.ids_cap);
  std::vector<std::uint64_t> seed =
      greedy_seed(sh, lo, {slice[0]}, slice.data() + 1, slice.size() - 1);

  return run_search(n, m, tasks, sh, seed, 1);
}

}  // namespace trif
