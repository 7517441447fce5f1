#pragma once

#include <cstdint>

#include "trif/bounds.hpp"
#include "trif/ternary.hpp"

namespace trif {

// Result of one run of the sample-and-delete construction.
struct AlterationResult {
  TernaryCode code;        // always m-trifferent
  AlterationPlan plan;     // sampling parameters used (same for every attempt)
  int attempts_used = 0;   // attempts actually run (1 + retries at most)
  bool target_met = false; // |code| >= plan.size_target
};

// Randomized construction of an m-trifferent code of length n: draw
// plan.t words i.i.d. uniform from {0,1,2}^n (kept set-style), list every
// triple triffering in fewer than m positions, then repeatedly delete the
// word lying on the most remaining bad triples (ties: the lexicographically
// smallest word) until none remain. Retries with fresh randomness until the
// size target is met or `retries` extra attempts are exhausted; returns the
// largest code found, ties broken toward the lexicographically smaller word
// sequence. Deterministic in (n, m, seed, retries); attempt a uses the
// derived stream Rng::stream(seed, a).
//
// Requires 1 <= m and 9m < 2n.
AlterationResult alteration_construct(int n, int m, std::uint64_t seed, int retries = 8);

}  // namespace trif
