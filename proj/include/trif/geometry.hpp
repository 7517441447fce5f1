#pragma once

// Linear algebra over F_3 and the projective geometry PG(k-1,3): point, line
// and affine-target enumeration, strength-m strong blocking verification via
// the affine criterion, and the random-lines construction.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "trif/bounds.hpp"  // BigInt, Error
#include "trif/rng.hpp"

namespace trif {

// Vector of F_3^k, k <= 12, componentwise arithmetic mod 3.
struct GF3Vector {
  static constexpr int kMaxDim = 12;

  int k = 0;
  std::array<std::uint8_t, kMaxDim> e{};

  GF3Vector() = default;
  explicit GF3Vector(int dim) : k(dim) {
    if (dim < 0 || dim > kMaxDim) throw Error("dimension out of range [0,12]");
  }

  int get(int i) const { return e[std::size_t(i)]; }
  void set(int i, int v) { e[std::size_t(i)] = std::uint8_t(v % 3); }
  bool is_zero() const {
    for (int i = 0; i < k; ++i)
      if (e[std::size_t(i)]) return false;
    return true;
  }

  friend GF3Vector operator+(const GF3Vector& a, const GF3Vector& b) {
    GF3Vector r(a.k);
    for (int i = 0; i < a.k; ++i) r.e[std::size_t(i)] = std::uint8_t((a.e[std::size_t(i)] + b.e[std::size_t(i)]) % 3);
    return r;
  }
  friend GF3Vector operator*(int s, const GF3Vector& a) {
    GF3Vector r(a.k);
    for (int i = 0; i < a.k; ++i) r.e[std::size_t(i)] = std::uint8_t((a.e[std::size_t(i)] * s) % 3);
    return r;
  }
  friend auto operator<=>(const GF3Vector&, const GF3Vector&) = default;
};

int gf3_dot(const GF3Vector& a, const GF3Vector& b);
int gf3_rank(std::vector<GF3Vector> rows);

// A point of PG(k-1,3): nonzero vector normalized so its first nonzero
// entry is 1; the normalization is canonical.
struct ProjectivePoint {
  GF3Vector rep;
  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
};

ProjectivePoint canonical_point(const GF3Vector& v);  // rejects zero vectors

// Multiset of projective points with multiplicities >= 1, kept sorted.
struct PointMultiset {
  int k = 0;
  std::vector<std::pair<ProjectivePoint, int>> entries;

  int total() const {
    int t = 0;
    for (const auto& [p, mult] : entries) t += mult;
    return t;
  }
};

PointMultiset make_multiset(int k, const std::vector<ProjectivePoint>& points,
                            const std::vector<int>& multiplicities = {});

// Affine subspace base + span(directions) of F_3^k. Targets produced by
// enumerate_affine_targets also carry their dual description {x : phi1.x = rhs1,
// phi2.x = rhs2}, which membership testing uses when available.
struct AffineSubspace {
  int k = 0;
  GF3Vector base;
  std::vector<GF3Vector> directions;

  bool has_dual = false;
  GF3Vector phi1, phi2;
  int rhs1 = 0, rhs2 = 0;

  int dimension() const { return int(directions.size()); }
  bool contains(const GF3Vector& x) const;
};

// All (3^k-1)/2 canonical points, lexicographically ordered.
std::vector<ProjectivePoint> enumerate_points(int k);

// All lines (2-dimensional subspaces) as sorted 4-point quadruples,
// lexicographically ordered; count = gaussian_binomial(k, 2). k <= 8.
std::vector<std::array<ProjectivePoint, 4>> enumerate_lines(int k);

// Gaussian binomial coefficient base 3, exact.
BigInt gaussian_binomial(int a, int b);

// All (k-2)-dimensional affine subspaces avoiding the origin, with dual data;
// count = 8 * gaussian_binomial(k, 2). Canonically ordered by (phi1, phi2, rhs).
std::vector<AffineSubspace> enumerate_affine_targets(int k);

// Number of nonzero vectors of A covered by the 1-dimensional subspaces
// spanned by B's points, counted with multiplicities (each point contributes
// its two nonzero vectors as candidates).
int affine_block_count(const PointMultiset& B, const AffineSubspace& A);

struct BlockingCheck {
  bool ok;
  std::optional<AffineSubspace> witness;  // first failing target
  int witness_count = 0;                  // its coverage
};

// Strength-m strong blocking test: every affine target covered >= m times.
BlockingCheck is_strength_blocking(const PointMultiset& B, int m);

// Equivalent removal-resilient hyperplane-spanning test (cross-check oracle,
// full enumeration; k <= 4 only).
bool is_strength_blocking_hyperplane(const PointMultiset& B, int m);

struct Rational {
  BigInt num, den;  // reduced, den > 0
};

// Probability that a uniformly random line meets a fixed (k-3)-dimensional
// projective subspace "badly" per the union-bound recipe; exact rational,
// strictly below 11/27. k >= 3.
Rational line_hit_probability(int k);

struct LinesConstruction {
  bool ok = false;
  PointMultiset points;
  long long t = 0;       // lines sampled per attempt
  int attempts_used = 0; // attempts consumed (== max_attempts on failure)
};

// Union of t random lines, retried until it verifies as a strength-m strong
// blocking set; t depends on the mode ("general" or "asymptotic").
LinesConstruction random_lines_blocking(int k, int m, std::string_view mode,
                                        std::uint64_t seed, int max_attempts = 50);

// Helpers for symmetry-invariance tests.
std::vector<GF3Vector> random_invertible(int k, Rng& rng);
PointMultiset apply_linear(const PointMultiset& B, const std::vector<GF3Vector>& rows);

}  // namespace trif
