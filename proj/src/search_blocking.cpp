#include "trif/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace trif {

namespace {

using Clock = std::chrono::steady_clock;

long long pow3(int e) {
  long long r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

// ---- incumbent heuristics ------------------------------------------------

// Greedy multicover: repeatedly take the candidate covering the most targets
// with remaining demand (ties: lowest index).
std::vector<int> greedy_cover(const CoverInstance& inst) {
  const int N = int(inst.candidates.size());
  const int T = int(inst.targets.size());
  std::vector<int> rd(std::size_t(T), inst.m);
  std::vector<char> chosen(std::size_t(N), 0);
  std::vector<int> out;
  long long total = static_cast<long long>(T) * inst.m;
  while (total > 0) {
    int best = -1, best_cov = -1;
    for (int c = 0; c < N; ++c) {
      if (chosen[std::size_t(c)]) continue;
      int cov = 0;
      for (std::uint32_t t : inst.covers[std::size_t(c)]) cov += rd[t] > 0;
      if (cov > best_cov) {
        best_cov = cov;
        best = c;
      }
    }
    if (best < 0 || best_cov == 0)
      throw Error("internal: greedy cover stalled on a feasible instance");
    chosen[std::size_t(best)] = 1;
    out.push_back(best);
    for (std::uint32_t t : inst.covers[std::size_t(best)])
      if (rd[t] > 0) {
        --rd[t];
        --total;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool feasible_set(const CoverInstance& inst, const std::vector<char>& in) {
  for (std::size_t t = 0; t < inst.targets.size(); ++t) {
    int cov = 0;
    for (std::uint32_t c : inst.covered_by[t]) cov += in[c];
    if (cov < inst.m) return false;
  }
  return true;
}

// 1-removal to a minimal set, then 2-out/1-in swaps, to a local optimum;
// deterministic scan order.
std::vector<int> polish_incumbent(const CoverInstance& inst, std::vector<int> sol,
                                  bool with_swaps) {
  const int N = int(inst.candidates.size());
  const int T = int(inst.targets.size());
  std::vector<char> in(std::size_t(N), 0);
  for (int c : sol) in[std::size_t(c)] = 1;
  std::vector<int> cov(std::size_t(T), 0);
  for (int c : sol)
    for (std::uint32_t t : inst.covers[std::size_t(c)]) ++cov[t];

  auto removable = [&](int c) {
    for (std::uint32_t t : inst.covers[std::size_t(c)])
      if (cov[t] <= inst.m) return false;
    return true;
  };
  auto drop = [&](int c) {
    in[std::size_t(c)] = 0;
    for (std::uint32_t t : inst.covers[std::size_t(c)]) --cov[t];
  };
  auto add = [&](int c) {
    in[std::size_t(c)] = 1;
    for (std::uint32_t t : inst.covers[std::size_t(c)]) ++cov[t];
  };

  bool improved = true;
  while (improved) {
    improved = false;
    for (int c = 0; c < N; ++c)
      if (in[std::size_t(c)] && removable(c)) {
        drop(c);
        improved = true;
      }
    if (!with_swaps) break;
    for (int a = 0; a < N && !improved; ++a) {
      if (!in[std::size_t(a)]) continue;
      for (int b = a + 1; b < N && !improved; ++b) {
        if (!in[std::size_t(b)]) continue;
        drop(a);
        drop(b);
        for (int c = 0; c < N; ++c) {
          if (in[std::size_t(c)] || c == a || c == b) continue;
          add(c);
          if (feasible_set(inst, in)) {
            improved = true;
            break;
          }
          drop(c);
        }
        if (!improved) {
          add(a);
          add(b);
        }
      }
    }
  }
  std::vector<int> out;
  for (int c = 0; c < N; ++c)
    if (in[std::size_t(c)]) out.push_back(c);
  return out;
}

// ---- branch and bound ------------------------------------------------------

// Residual demands may go negative (overcovered targets); the positive part
// drives feasibility and bounds, and every state change is its own inverse,
// which keeps the undo trail exact.
struct CoverSolver {
  const CoverInstance& inst;
  int N, T, m;

  std::vector<int> rd;             // residual demand (may be negative)
  std::vector<int> options;        // free candidates still able to cover the target
  std::vector<int> res_cov;        // per candidate: targets with rd > 0 it covers
  std::vector<std::int8_t> state;  // 0 free, 1 chosen, 2 excluded
  std::vector<int> rd_hist;        // # targets with rd == v, for v in 1..m
  long long total_pos = 0;         // sum of positive residual demands
  int chosen_count = 0;
  std::vector<int> trail;          // +(c+1) include, -(c+1) exclude

  long long best_value;
  std::vector<int> best_set;
  bool stopped = false;
  bool has_budget = false;
  Clock::time_point deadline{};
  std::uint64_t nodes = 0;
  long long frontier_lb;
  std::vector<std::uint32_t> queue;  // propagation scratch

  explicit CoverSolver(const CoverInstance& ci)
      : inst(ci),
        N(int(ci.candidates.size())),
        T(int(ci.targets.size())),
        m(ci.m),
        rd(std::size_t(T), ci.m),
        options(std::size_t(T), 0),
        res_cov(std::size_t(N), 0),
        state(std::size_t(N), 0),
        rd_hist(std::size_t(ci.m) + 1, 0),
        total_pos(static_cast<long long>(T) * ci.m),
        best_value(N + 1),
        frontier_lb(N + 1) {
    for (std::size_t t = 0; t < std::size_t(T); ++t) options[t] = int(inst.covered_by[t].size());
    for (std::size_t c = 0; c < std::size_t(N); ++c) res_cov[c] = int(inst.covers[c].size());
    rd_hist[std::size_t(m)] = T;
  }

  void dec_rd(std::uint32_t t) {
    int v = rd[t];
    if (v > 0) {
      --rd_hist[std::size_t(v)];
      if (v - 1 > 0) ++rd_hist[std::size_t(v - 1)];
      --total_pos;
      if (v == 1)
        for (std::uint32_t d : inst.covered_by[t]) --res_cov[d];
    }
    rd[t] = v - 1;
  }
  void inc_rd(std::uint32_t t) {
    int v = rd[t] + 1;
    rd[t] = v;
    if (v > 0) {
      ++rd_hist[std::size_t(v)];
      if (v - 1 > 0) --rd_hist[std::size_t(v - 1)];
      ++total_pos;
      if (v == 1)
        for (std::uint32_t d : inst.covered_by[t]) ++res_cov[d];
    }
  }

  void include(int c) {
    state[std::size_t(c)] = 1;
    ++chosen_count;
    trail.push_back(c + 1);
    for (std::uint32_t t : inst.covers[std::size_t(c)]) {
      --options[t];
      dec_rd(t);
    }
  }
  void exclude(int c) {
    state[std::size_t(c)] = 2;
    trail.push_back(-(c + 1));
    for (std::uint32_t t : inst.covers[std::size_t(c)]) --options[t];
  }
  void undo_to(std::size_t mark) {
    while (trail.size() > mark) {
      int e = trail.back();
      trail.pop_back();
      int c = (e > 0 ? e : -e) - 1;
      state[std::size_t(c)] = 0;
      if (e > 0) {
        --chosen_count;
        for (std::uint32_t t : inst.covers[std::size_t(c)]) {
          ++options[t];
          inc_rd(t);
        }
      } else {
        for (std::uint32_t t : inst.covers[std::size_t(c)]) ++options[t];
      }
    }
  }

  // Settles forced picks reachable from the touched targets. Returns false on
  // a proven dead end (some target cannot meet its demand).
  bool propagate(std::vector<std::uint32_t> touched) {
    queue = std::move(touched);
    while (!queue.empty()) {
      std::uint32_t t = queue.back();
      queue.pop_back();
      if (rd[t] <= 0) continue;
      if (options[t] < rd[t]) return false;
      if (options[t] == rd[t]) {
        // every free coverer is needed
        for (std::uint32_t c : inst.covered_by[t]) {
          if (state[c] != 0) continue;
          include(int(c));
          for (std::uint32_t t2 : inst.covers[c]) queue.push_back(t2);
        }
      }
    }
    return true;
  }

  long long node_lower_bound() const {
    if (total_pos == 0) return chosen_count;
    int max_rd = 0;
    for (int v = m; v >= 1; --v)
      if (rd_hist[std::size_t(v)] > 0) {
        max_rd = v;
        break;
      }
    int max_cov = 1;
    for (int c = 0; c < N; ++c)
      if (state[std::size_t(c)] == 0 && res_cov[std::size_t(c)] > max_cov)
        max_cov = res_cov[std::size_t(c)];
    long long frac = (total_pos + max_cov - 1) / max_cov;
    return chosen_count + std::max<long long>(max_rd, frac);
  }

  void record_solution() {
    std::vector<int> sol;
    for (int c = 0; c < N; ++c)
      if (state[std::size_t(c)] == 1) sol.push_back(c);
    sol = polish_incumbent(inst, std::move(sol), false);
    if (static_cast<long long>(sol.size()) < best_value) {
      best_value = static_cast<long long>(sol.size());
      best_set = std::move(sol);
    }
  }

  void dfs() {
    if ((++nodes & 255u) == 0 && has_budget && Clock::now() >= deadline) stopped = true;
    if (total_pos == 0) {
      record_solution();
      return;
    }
    long long lb = node_lower_bound();
    if (lb >= best_value) return;  // exact prune
    if (stopped) {
      frontier_lb = std::min(frontier_lb, lb);
      return;
    }

    // most-constrained target: minimal slack, then lowest index
    int pick_t = -1;
    long long pick_slack = 0;
    for (int t = 0; t < T; ++t) {
      if (rd[std::size_t(t)] <= 0) continue;
      long long slack = options[std::size_t(t)] - rd[std::size_t(t)];
      if (pick_t < 0 || slack < pick_slack) {
        pick_t = t;
        pick_slack = slack;
      }
    }
    // highest-residual-coverage free candidate on it, then lowest index
    int pick_c = -1;
    for (std::uint32_t c : inst.covered_by[std::size_t(pick_t)]) {
      if (state[c] != 0) continue;
      if (pick_c < 0 || res_cov[c] > res_cov[std::size_t(pick_c)]) pick_c = int(c);
    }

    std::size_t mark = trail.size();
    include(pick_c);
    if (propagate({inst.covers[std::size_t(pick_c)].begin(), inst.covers[std::size_t(pick_c)].end()}))
      dfs();
    undo_to(mark);
    if (stopped) {
      frontier_lb = std::min(frontier_lb, lb);
      return;
    }

    exclude(pick_c);
    if (propagate({inst.covers[std::size_t(pick_c)].begin(), inst.covers[std::size_t(pick_c)].end()}))
      dfs();
    undo_to(mark);
    if (stopped) frontier_lb = std::min(frontier_lb, lb);
  }
};

PointMultiset witness_from(const CoverInstance& inst, const std::vector<int>& sol) {
  std::vector<ProjectivePoint> pts;
  pts.reserve(sol.size());
  for (int c : sol) pts.push_back(inst.candidates[std::size_t(c)]);
  return make_multiset(inst.k, pts);
}

}  // namespace

CoverInstance build_cover_instance(int k, int m) {
  if (k < 2 || k > 5) throw Error("cover instance supports dimensions 2..5");
  if (m < 1) throw Error("cover instance requires m >= 1");
  CoverInstance inst;
  inst.k = k;
  inst.m = m;
  inst.candidates = enumerate_points(k);
  inst.targets = enumerate_affine_targets(k);
  inst.covers.assign(inst.candidates.size(), {});
  inst.covered_by.assign(inst.targets.size(), {});
  for (std::size_t t = 0; t < inst.targets.size(); ++t) {
    const AffineSubspace& A = inst.targets[t];
    for (std::size_t c = 0; c < inst.candidates.size(); ++c) {
      const GF3Vector& v = inst.candidates[c].rep;
      if (A.contains(v) || A.contains(2 * v)) {
        inst.covers[c].push_back(std::uint32_t(t));
        inst.covered_by[t].push_back(std::uint32_t(c));
      }
    }
  }
  return inst;
}

void export_lp(const CoverInstance& inst, std::ostream& out) {
  const std::size_t N = inst.candidates.size();
  out << "Minimize\n obj:";
  if (N == 0) out << " 0";
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) out << " +";
    out << " x" << (i + 1);
    if ((i + 1) % 12 == 0 && i + 1 < N) out << "\n     ";
  }
  out << "\nSubject To\n";
  for (std::size_t t = 0; t < inst.targets.size(); ++t) {
    out << " c_" << (t + 1) << ":";
    const auto& row = inst.covered_by[t];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << " +";
      out << " x" << (row[i] + 1);
      if ((i + 1) % 12 == 0 && i + 1 < row.size()) out << "\n     ";
    }
    out << " >= " << inst.m << "\n";
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < N; ++i) out << " x" << (i + 1) << "\n";
  out << "End\n";
}

BlockingOutcome min_blocking_exact(int k, int m, double budget_seconds) {
  auto t0 = Clock::now();
  CoverInstance inst = build_cover_instance(k, m);
  BlockingOutcome out;

  if (static_cast<long long>(m) > pow3(k - 2)) {
    // every target holds exactly 3^{k-2} coverable vectors, one per candidate
    out.feasible = false;
    out.optimal = true;
    out.lower_bound = 0;
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  CoverSolver solver(inst);
  if (budget_seconds > 0) {
    solver.has_budget = true;
    solver.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(budget_seconds));
  }

  std::vector<int> incumbent = polish_incumbent(inst, greedy_cover(inst), true);
  solver.best_value = static_cast<long long>(incumbent.size());
  solver.best_set = incumbent;

  if (solver.propagate([&] {
        std::vector<std::uint32_t> all(inst.targets.size());
        for (std::size_t t = 0; t < all.size(); ++t) all[t] = std::uint32_t(t);
        return all;
      }())) {
    solver.dfs();
  } else {
    throw Error("internal: root propagation failed on a feasible instance");
  }

  out.feasible = true;
  out.value = int(solver.best_value);
  out.witness = witness_from(inst, solver.best_set);
  out.budget_hit = solver.stopped;
  out.lower_bound =
      solver.stopped ? int(std::min<long long>(solver.frontier_lb, solver.best_value))
                     : out.value;
  out.optimal = (out.lower_bound == out.value);
  out.nodes = solver.nodes;
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!is_strength_blocking(out.witness, m).ok)
    throw Error("internal: blocking search produced an invalid witness");
  return out;
}

TlDerivation tl_from_blocking(int n, int k_max, int m, double budget_seconds) {
  if (n < 1 || m < 1) throw Error("tl_from_blocking requires n >= 1, m >= 1");
  if (m > n) throw Error("tl_from_blocking requires m <= n");
  if (k_max < 2) throw Error("tl_from_blocking requires k_max >= 2");

  TlDerivation d;
  // dimension bound: k <= floor(20(n-m+1)/91) + 1
  int k_dim = int(20LL * (n - m + 1) / 91) + 1;
  std::string trace;
  if (k_dim < 2) {
    d.known = true;
    d.k_star = 1;
    d.value = 3;
    d.detail = "the dimension bound caps k at 1, and the repeated single-column code reaches 3";
    return d;
  }
  if (k_dim > k_max) {
    d.detail = "refusal: the dimension bound allows k up to " + std::to_string(k_dim) +
               " but optima were computed only up to k = " + std::to_string(k_max);
    return d;
  }
  if (k_dim > 5) {
    d.detail = "refusal: the dimension bound allows k up to " + std::to_string(k_dim) +
               ", beyond the solver's range (k <= 5)";
    return d;
  }

  int k_star = 1;  // dimension 1 always feasible for m <= n
  for (int k = 2; k <= k_dim; ++k) {
    BlockingOutcome oc = min_blocking_exact(k, m, budget_seconds);
    d.computed.push_back(oc);
    if (oc.feasible && oc.value <= n) {
      k_star = k;  // optimum <= incumbent = value <= n
      trace += "optimum(" + std::to_string(k) + "," + std::to_string(m) +
               ") <= " + std::to_string(oc.value) + " <= n; ";
    }
  }
  // exactness: every dimension above k_star and within k_dim must be excluded
  for (int k = std::max(2, k_star + 1); k <= k_dim; ++k) {
    const BlockingOutcome& oc = d.computed[std::size_t(k - 2)];
    if (!oc.feasible) {
      d.detail = "refusal: the point-set instance for k = " + std::to_string(k) +
                 " is infeasible, so dimension " + std::to_string(k) +
                 " cannot be decided by this model (columns with multiplicity are not covered); "
                 "only T_L <= " + std::to_string(pow3(k)) + " follows";
      return d;
    }
    if (oc.lower_bound <= n) {
      d.detail = "refusal: the computed lower bound " + std::to_string(oc.lower_bound) +
                 " for the k = " + std::to_string(k) +
                 " optimum does not exceed n = " + std::to_string(n) +
                 "; a longer run is needed to decide dimension " + std::to_string(k);
      return d;
    }
    trace += "optimum(" + std::to_string(k) + "," + std::to_string(m) + ") >= " +
             std::to_string(oc.lower_bound) + " > n; ";
  }

  d.known = true;
  d.k_star = k_star;
  d.value = power(BigInt(3), k_star);
  d.detail = trace + "dimension bound caps k at " + std::to_string(k_dim) +
             "; T_L = 3^" + std::to_string(k_star);
  return d;
}

}  // namespace trif
