#include "trif/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace trif {

namespace {

long long pow3ll(int e) {
  long long r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

GF3Vector vector_from_index(int k, long long idx) {
  GF3Vector v(k);
  for (int i = k - 1; i >= 0; --i) {
    v.e[std::size_t(i)] = std::uint8_t(idx % 3);
    idx /= 3;
  }
  return v;
}

// All row-reduced 2 x k rank-2 matrices over F_3; visits every 2-dimensional
// subspace's canonical basis exactly once.
template <typename Fn>
void for_each_rref2(int k, Fn&& fn) {
  for (int c1 = 0; c1 < k; ++c1) {
    for (int c2 = c1 + 1; c2 < k; ++c2) {
      std::vector<int> free1, free2;
      for (int j = c1 + 1; j < k; ++j)
        if (j != c2) free1.push_back(j);
      for (int j = c2 + 1; j < k; ++j) free2.push_back(j);
      long long combos = pow3ll(int(free1.size() + free2.size()));
      for (long long mask = 0; mask < combos; ++mask) {
        GF3Vector r1(k), r2(k);
        r1.set(c1, 1);
        r2.set(c2, 1);
        long long rest = mask;
        for (int j : free1) {
          r1.set(j, int(rest % 3));
          rest /= 3;
        }
        for (int j : free2) {
          r2.set(j, int(rest % 3));
          rest /= 3;
        }
        fn(r1, r2);
      }
    }
  }
}

void check_dim(int k, int lo) {
  if (k < lo || k > GF3Vector::kMaxDim)
    throw Error("ambient dimension must lie in [" + std::to_string(lo) + ",12], got " +
                std::to_string(k));
}

}  // namespace

int gf3_dot(const GF3Vector& a, const GF3Vector& b) {
  if (a.k != b.k) throw Error("dimension mismatch");
  int s = 0;
  for (int i = 0; i < a.k; ++i) s += a.e[std::size_t(i)] * b.e[std::size_t(i)];
  return s % 3;
}

int gf3_rank(std::vector<GF3Vector> rows) {
  if (rows.empty()) return 0;
  int k = rows[0].k;
  int rank = 0;
  for (int col = 0; col < k && rank < int(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[std::size_t(r)].get(col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[std::size_t(rank)], rows[std::size_t(pivot)]);
    int inv = rows[std::size_t(rank)].get(col) == 1 ? 1 : 2;  // inverse mod 3
    rows[std::size_t(rank)] = inv * rows[std::size_t(rank)];
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank) continue;
      int f = rows[std::size_t(r)].get(col);
      if (f) rows[std::size_t(r)] = rows[std::size_t(r)] + ((3 - f) * rows[std::size_t(rank)]);
    }
    ++rank;
  }
  return rank;
}

ProjectivePoint canonical_point(const GF3Vector& v) {
  for (int i = 0; i < v.k; ++i) {
    int s = v.get(i);
    if (s == 0) continue;
    return {s == 1 ? v : 2 * v};  // 2*2 = 1 mod 3
  }
  throw Error("the zero vector spans no projective point");
}

PointMultiset make_multiset(int k, const std::vector<ProjectivePoint>& points,
                            const std::vector<int>& multiplicities) {
  if (!multiplicities.empty() && multiplicities.size() != points.size())
    throw Error("multiplicity list length must match point list length");
  std::map<ProjectivePoint, int> acc;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].rep.k != k) throw Error("point dimension mismatch");
    int mult = multiplicities.empty() ? 1 : multiplicities[i];
    if (mult < 1) throw Error("multiplicities must be positive");
    acc[points[i]] += mult;
  }
  PointMultiset B;
  B.k = k;
  B.entries.assign(acc.begin(), acc.end());
  return B;
}

bool AffineSubspace::contains(const GF3Vector& x) const {
  if (x.k != k) throw Error("dimension mismatch");
  if (has_dual) return gf3_dot(phi1, x) == rhs1 && gf3_dot(phi2, x) == rhs2;
  std::vector<GF3Vector> rows = directions;
  int base_rank = gf3_rank(rows);
  rows.push_back(x + (2 * base));  // x - base
  return gf3_rank(rows) == base_rank;
}

std::vector<ProjectivePoint> enumerate_points(int k) {
  check_dim(k, 1);
  std::vector<ProjectivePoint> pts;
  pts.reserve(std::size_t((pow3ll(k) - 1) / 2));
  for (long long idx = 1; idx < pow3ll(k); ++idx) {
    GF3Vector v = vector_from_index(k, idx);
    int first = 0;
    while (v.get(first) == 0) ++first;
    if (v.get(first) == 1) pts.push_back({v});
  }
  return pts;
}

std::vector<std::array<ProjectivePoint, 4>> enumerate_lines(int k) {
  check_dim(k, 2);
  if (k > 8) throw Error("line enumeration supported for k <= 8");
  std::vector<ProjectivePoint> pts = enumerate_points(k);
  std::vector<std::array<ProjectivePoint, 4>> lines;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::array<ProjectivePoint, 4> quad = {
          pts[i], pts[j], canonical_point(pts[i].rep + pts[j].rep),
          canonical_point(pts[i].rep + (2 * pts[j].rep))};
      std::sort(quad.begin(), quad.end());
      // keep each line only at its two lexicographically smallest points
      if (quad[0] == pts[i] && quad[1] == pts[j]) lines.push_back(quad);
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

BigInt gaussian_binomial(int a, int b) {
  if (b < 0 || b > a) throw Error("gaussian binomial needs 0 <= b <= a");
  BigInt num = 1, den = 1;
  for (int i = 0; i < b; ++i) {
    num *= power(3, a - i) - 1;
    den *= power(3, b - i) - 1;
  }
  return num / den;
}

std::vector<AffineSubspace> enumerate_affine_targets(int k) {
  check_dim(k, 2);
  std::vector<AffineSubspace> targets;
  for_each_rref2(k, [&](const GF3Vector& f1, const GF3Vector& f2) {
    int c1 = 0;
    while (f1.get(c1) == 0) ++c1;
    int c2 = c1 + 1;
    while (f2.get(c2) == 0) ++c2;
    // nullspace basis of {f1, f2}
    std::vector<GF3Vector> dirs;
    for (int j = 0; j < k; ++j) {
      if (j == c1 || j == c2) continue;
      GF3Vector v(k);
      v.set(j, 1);
      v.set(c1, (3 - f1.get(j)) % 3);
      v.set(c2, (3 - f2.get(j)) % 3);
      dirs.push_back(v);
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a == 0 && b == 0) continue;
        AffineSubspace A;
        A.k = k;
        A.base = GF3Vector(k);
        A.base.set(c1, a);
        A.base.set(c2, b);
        A.directions = dirs;
        A.has_dual = true;
        A.phi1 = f1;
        A.phi2 = f2;
        A.rhs1 = a;
        A.rhs2 = b;
        targets.push_back(std::move(A));
      }
    }
  });
  std::sort(targets.begin(), targets.end(), [](const AffineSubspace& x, const AffineSubspace& y) {
    if (x.phi1 != y.phi1) return x.phi1 < y.phi1;
    if (x.phi2 != y.phi2) return x.phi2 < y.phi2;
    if (x.rhs1 != y.rhs1) return x.rhs1 < y.rhs1;
    return x.rhs2 < y.rhs2;
  });
  return targets;
}

int affine_block_count(const PointMultiset& B, const AffineSubspace& A) {
  if (B.k != A.k) throw Error("dimension mismatch");
  int c = 0;
  for (const auto& [p, mult] : B.entries) {
    if (A.contains(p.rep)) c += mult;
    if (A.contains(2 * p.rep)) c += mult;
  }
  return c;
}

BlockingCheck is_strength_blocking(const PointMultiset& B, int m) {
  if (m < 1) throw Error("strength must be at least 1");
  check_dim(B.k, 2);
  for (const AffineSubspace& A : enumerate_affine_targets(B.k)) {
    int c = affine_block_count(B, A);
    if (c < m) return {false, A, c};
  }
  return {true, std::nullopt, 0};
}

bool is_strength_blocking_hyperplane(const PointMultiset& B, int m) {
  if (m < 1) throw Error("strength must be at least 1");
  int k = B.k;
  if (k < 2 || k > 4) throw Error("hyperplane-form test implemented for 2 <= k <= 4");
  auto mult_of = [&](const ProjectivePoint& p) {
    for (const auto& [q, mult] : B.entries)
      if (q == p) return mult;
    return 0;
  };
  std::vector<ProjectivePoint> pts = enumerate_points(k);
  for (const ProjectivePoint& phi : pts) {  // hyperplanes via dual points
    std::vector<ProjectivePoint> hpts;
    for (const ProjectivePoint& p : pts)
      if (gf3_dot(phi.rep, p.rep) == 0) hpts.push_back(p);
    int in_h = 0;
    for (const ProjectivePoint& p : hpts) in_h += mult_of(p);
    if (k == 2) {
      // W is empty: the hyperplane itself must carry m points
      if (in_h < m) return false;
      continue;
    }
    if (k == 3) {
      // W ranges over single projective points of H
      for (const ProjectivePoint& w : hpts)
        if (in_h - mult_of(w) < m) return false;
      continue;
    }
    // k == 4: W ranges over the lines contained in H
    for (std::size_t i = 0; i < hpts.size(); ++i) {
      for (std::size_t j = i + 1; j < hpts.size(); ++j) {
        std::array<ProjectivePoint, 4> quad = {
            hpts[i], hpts[j], canonical_point(hpts[i].rep + hpts[j].rep),
            canonical_point(hpts[i].rep + (2 * hpts[j].rep))};
        std::sort(quad.begin(), quad.end());
        if (!(quad[0] == hpts[i] && quad[1] == hpts[j])) continue;
        int on_w = 0;
        for (const ProjectivePoint& w : quad) on_w += mult_of(w);
        if (in_h - on_w < m) return false;
      }
    }
  }
  return true;
}

Rational line_hit_probability(int k) {
  if (k < 3) throw Error("hit probability needs k >= 3");
  BigInt p2 = power(3, 2 * k - 4), p1 = power(3, k - 1);
  Rational r{11 * p2 - 4 * p1 + 1, 27 * p2 - 4 * p1 + 1};
  BigInt g = boost::multiprecision::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

LinesConstruction random_lines_blocking(int k, int m, std::string_view mode,
                                        std::uint64_t seed, int max_attempts) {
  if (k < 3) throw Error("line construction needs k >= 3");
  if (m < 1) throw Error("strength must be at least 1");
  if (max_attempts < 1) throw Error("need at least one attempt");
  double t_raw;
  if (mode == "general") {
    t_raw = 10.729 * k + 4.385 * m - 23.287;
  } else if (mode == "asymptotic") {
    t_raw = 2.447 * k + 1.001 * m - 5.310;
  } else {
    throw Error("mode must be 'general' or 'asymptotic'");
  }
  long long t = (long long)std::ceil(t_raw - 1e-9);
  if (t < 1) throw Error("sampling count is not positive for these parameters");

  std::vector<std::array<ProjectivePoint, 4>> lines = enumerate_lines(k);
  LinesConstruction out;
  out.t = t;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng = Rng::stream(seed, std::uint64_t(attempt));
    std::set<ProjectivePoint> chosen;
    for (long long i = 0; i < t; ++i) {
      const auto& line = lines[std::size_t(rng.below(lines.size()))];
      chosen.insert(line.begin(), line.end());
    }
    PointMultiset B = make_multiset(
        k, std::vector<ProjectivePoint>(chosen.begin(), chosen.end()));
    out.attempts_used = attempt + 1;
    if (is_strength_blocking(B, m).ok) {
      out.ok = true;
      out.points = std::move(B);
      return out;
    }
    out.points = std::move(B);  // best effort: last attempt's set
  }
  out.ok = false;
  return out;
}

std::vector<GF3Vector> random_invertible(int k, Rng& rng) {
  check_dim(k, 1);
  for (;;) {
    std::vector<GF3Vector> rows;
    rows.reserve(std::size_t(k));
    for (int i = 0; i < k; ++i) {
      GF3Vector v(k);
      for (int j = 0; j < k; ++j) v.set(j, int(rng.below(3)));
      rows.push_back(v);
    }
    if (gf3_rank(rows) == k) return rows;
  }
}

PointMultiset apply_linear(const PointMultiset& B, const std::vector<GF3Vector>& rows) {
  if (int(rows.size()) != B.k) throw Error("matrix must be k x k");
  std::vector<ProjectivePoint> pts;
  std::vector<int> mults;
  for (const auto& [p, mult] : B.entries) {
    GF3Vector img(B.k);
    for (int i = 0; i < B.k; ++i) img.set(i, gf3_dot(rows[std::size_t(i)], p.rep));
    pts.push_back(canonical_point(img));
    mults.push_back(mult);
  }
  return make_multiset(B.k, pts, mults);
}

}  // namespace trif
