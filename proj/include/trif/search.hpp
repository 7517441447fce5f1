#pragma once

// Exact optimization: maximum m-trifferent codes by branch-and-bound with
// symmetry reduction, and minimum strength-m strong blocking sets by
// branch-and-bound over the covering formulation (one binary variable per
// projective point, one demand-m constraint per affine target).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trif/bounds.hpp"
#include "trif/geometry.hpp"
#include "trif/ternary.hpp"

namespace trif {

struct TrifferentOptions {
  double budget_seconds = 0.0;  // 0 = unlimited
  int threads = 1;
  bool symmetry = true;         // fix 0^n, canonicalize the next two words
  long long cutoff = 0;         // upper-bound cutoff; 0 = derive via best_bounds
};

struct TrifferentOutcome {
  int value = 0;             // size of the best code found
  TernaryCode witness;       // always passes is_m_trifferent
  bool optimal = false;      // search space exhausted (or value == upper_bound)
  bool budget_hit = false;
  long long upper_bound = 0; // certified upper bound (frontier + composed bounds)
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

// Exact T(n, m) when the budget is not hit; otherwise the best code found
// with optimal=false and a still-valid upper bound from the unexplored
// frontier. Deterministic for every thread count.
TrifferentOutcome max_trifferent_exact(int n, int m, const TrifferentOptions& opt = {});

// Exact maximum over the slice of words with exactly k_twos symbols equal
// to 2 (no symmetry reduction; the slice is not translation-invariant).
TrifferentOutcome max_trifferent_slice(int n, int m, int k_twos, double budget_seconds = 0.0);

// Covering formulation: candidate i is the i-th projective point of
// PG(k-1,3) in enumeration order; every (k-2)-dimensional affine target
// avoiding the origin demands at least m chosen candidates among those
// whose spanned 1-subspace meets it.
struct CoverInstance {
  int k = 0;
  int m = 0;
  std::vector<ProjectivePoint> candidates;
  std::vector<AffineSubspace> targets;
  std::vector<std::vector<std::uint32_t>> covers;      // candidate -> target indices
  std::vector<std::vector<std::uint32_t>> covered_by;  // target -> candidate indices
};

CoverInstance build_cover_instance(int k, int m);  // k in {2,...,5}

// Plain-text integer program for the instance: minimize the number of chosen
// points subject to the demand constraints, all variables binary. Variable
// order matches candidate enumeration order.
void export_lp(const CoverInstance& inst, std::ostream& out);

struct BlockingOutcome {
  bool feasible = true;
  int value = 0;            // size of the best blocking set found (min when optimal)
  PointMultiset witness;    // multiplicity-free; passes is_strength_blocking
  bool optimal = false;
  bool budget_hit = false;
  int lower_bound = 0;      // certified lower bound
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

// Minimum strength-m strong blocking set in PG(k-1,3) among point sets
// (multiplicity-free). Infeasible exactly when m > 3^{k-2}.
BlockingOutcome min_blocking_exact(int k, int m, double budget_seconds = 0.0);

// Derived statement about T_L(n, m) from the computed blocking optima for
// dimensions 2..k_max plus the dimension bound k <= floor(20(n-m+1)/91) + 1.
struct TlDerivation {
  bool known = false;   // exact value established
  int k_star = 0;       // dimension attaining it (when known)
  BigInt value;         // 3^{k_star} when known
  std::string detail;   // derivation trace or refusal reason
  std::vector<BlockingOutcome> computed;  // outcome for each dimension 2..k_max
};

TlDerivation tl_from_blocking(int n, int k_max, int m, double budget_seconds = 0.0);

}  // namespace trif
