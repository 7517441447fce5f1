#pragma once

// Linear codes over F_3: codeword enumeration, minimality / m-minimality
// tests, and the bridges between generator matrices, projective point
// multisets, and m-trifference.

#include <optional>
#include <string>
#include <vector>

#include "trif/geometry.hpp"
#include "trif/ternary.hpp"

namespace trif {

// Generator matrix with full row rank; rows are length-n ternary words.
struct LinearCode {
  int k = 0;
  int n = 0;
  std::vector<TernaryWord> rows;
};

// Validates shape and full row rank.
LinearCode make_linear_code(std::vector<TernaryWord> rows);

// Componentwise mod-3 word arithmetic (codeword = message . G).
TernaryWord word_add(const TernaryWord& a, const TernaryWord& b);
TernaryWord word_scale(int s, const TernaryWord& a);
int word_rank(std::vector<TernaryWord> rows);
SupportMask support_mask(const TernaryWord& w);

// All 3^k codewords; k <= 12.
TernaryCode enumerate_codewords(const LinearCode& G);

struct MinimalityWitness {
  std::vector<int> deleted_coordinates;  // empty for the plain minimality test
  TernaryWord a, b;
  std::string reason;  // "collision" or "nested-support"
};

struct MinimalityResult {
  bool ok;
  std::optional<MinimalityWitness> witness;
};

// No two linearly independent codewords may have nested supports.
MinimalityResult is_minimal(const LinearCode& G);

// After deleting ANY m-1 coordinates, codewords stay distinct and the
// punctured code stays minimal. Refuses (throws) when the work estimate
// binom(n, m-1) * 3^{2k} exceeds the ceiling rather than answering partially.
MinimalityResult is_m_minimal(const LinearCode& G, int m,
                              long long budget = 100'000'000);

// Columns = the multiset's canonical representatives (each point repeated per
// its multiplicity), by default in the multiset's sorted order; column_order,
// when given, permutes them. B must span F_3^k.
LinearCode generator_from_points(const PointMultiset& B,
                                 const std::vector<int>& column_order = {});

struct PointsFromGenerator {
  PointMultiset points;
  bool has_repeated_direction;  // some multiplicity > 1 (dependent columns)
};

// Columns as canonical projective points; rejects zero columns.
PointsFromGenerator points_from_generator(const LinearCode& G);

}  // namespace trif
