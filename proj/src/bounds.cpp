#include "trif/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace trif {

namespace {

constexpr double kGuard = 1.0 / double(1ull << 30);  // directed-rounding slack
constexpr double kTwoNinths = 2.0 / 9.0;
const double kLog2_3over2 = std::log2(1.5);
const double kLog2_3 = std::log2(3.0);

// log2 of a positive big integer, accurate to ~1e-15 relative.
double log2_big(const BigInt& v) {
  if (v <= 0) throw Error("log2 of a non-positive value");
  unsigned b = boost::multiprecision::msb(v);
  if (b <= 900) return std::log2(v.convert_to<double>());
  int sh = int(b) - 53;
  return std::log2(BigInt(v >> sh).convert_to<double>()) + sh;
}

const BigInt kIntLimit = BigInt(1) << 45;

// Package an exactly-known integer bound. log2_value is chosen so that
// floor/ceil(2^log2_value) reproduces integer_value while staying a valid
// directed-rounded statement of the bound.
BoundValue from_exact(Direction dir, BigInt v, std::string prov) {
  BoundValue b;
  b.dir = dir;
  b.provenance = std::move(prov);
  if (v < 0) v = 0;
  if (v < kIntLimit) {
    double d = v.convert_to<double>();
    if (dir == Direction::upper) {
      b.log2_value = std::log2(d + 0.5);
    } else {
      b.log2_value = std::log2(std::max(d - 0.5, 0.5));
    }
    b.integer_value = v;
  } else {
    b.log2_value = dir == Direction::upper ? log2_big(v) + kGuard : log2_big(v) - kGuard;
  }
  return b;
}

BoundValue from_log2(Direction dir, double raw, bool constant_known, std::string prov) {
  BoundValue b;
  b.dir = dir;
  b.log2_value = dir == Direction::upper ? raw + kGuard : raw - kGuard;
  b.constant_known = constant_known;
  b.provenance = std::move(prov);
  return b;
}

std::string at(int n, int m) {
  return "@(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

// floor(a/b) for b > 0, a of any sign.
long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

bool quadratic_ok(long long m, long long k, long long T) {
  __int128 a = 2 * m - 3 * k;
  return a * T * T - __int128(6) * m * T + 4 * m <= 0;
}

bool triple_count_ok(long long n, long long m, long long T) {
  // (T-1)(T-2)/T^2 <= 2n/(9m)
  return __int128(9) * m * (T - 1) * (T - 2) <= __int128(2) * n * T * T;
}

// ---- exact rational closed forms: floor(num/den) ------------------------

BigInt rational_floor(const BigInt& num, const BigInt& den) { return num / den; }

BigInt piecewise_exact(int n, int m) {
  int ell = m / 3, r = m % 3;
  BigInt num, den;
  if (r == 1) {
    num = BigInt(3) * (3 * ell + 1) * power(2, 2 * ell) * power(3, n);
    den = binomial(n, 2 * ell) * power(2, n);
  } else if (r == 2) {
    num = BigInt(6) * (3 * ell + 2) * power(2, 2 * ell + 1) * power(3, n);
    den = binomial(n, 2 * ell + 1) * power(2, n);
  } else {
    num = BigInt(6) * ell * power(2, 2 * ell - 1) * power(3, n);
    den = binomial(n, 2 * ell - 1) * power(2, n);
  }
  return rational_floor(num, den);
}

int small_m_min_n(int m) { return m <= 3 ? 4 : (m == 4 ? 7 : 10); }

BigInt small_m_exact(int n, int m) {
  BigInt nn = n;
  switch (m) {
    case 2:
    case 3:
      return rational_floor(BigInt(10) * power(3, n), nn * power(2, n));
    case 4:
      return rational_floor(BigInt(44) * power(3, n), nn * nn * power(2, n));
    default:
      return rational_floor(BigInt(232) * power(3, n), nn * nn * nn * power(2, n));
  }
}

BigInt aux_graph_exact(int n, int ell) {
  BigInt num = BigInt(4) * (2 * ell + 1) * binomial(n, ell) * power(3, n);
  BigInt den = binomial(n, 2 * ell) * power(2, n);
  return rational_floor(num, den);
}

// Slice weight from the cubic root, decremented until the counting
// denominator 2mn^2 - 3k(n-k)^2 is positive (it is for k/n below the root).
std::optional<std::pair<BigInt, int>> refined_exact(int n, int m) {
  double lambda = double(m) / double(n);
  if (!(lambda > 0.0 && lambda < kTwoNinths)) return std::nullopt;
  double xr = cubic_smallest_root(lambda);
  int k = int(std::ceil(xr * n)) - 1;
  if (k > n) k = n;
  auto denom = [&](int kk) {
    return BigInt(2) * m * n * n - BigInt(3) * kk * (n - kk) * (n - kk);
  };
  while (k >= 1 && denom(k) <= 0) --k;
  if (k < 1) return std::nullopt;
  BigInt D = denom(k);
  BigInt N = BigInt(6) * m * n * n;
  BigInt ts_max = (N + D - 1) / D - 1;  // slice code size is strictly below N/D
  if (ts_max < 0) ts_max = 0;
  BigInt bound = rational_floor(power(3, n) * power(2, k) * ts_max,
                                binomial(n, k) * power(2, n));
  return std::make_pair(bound, k);
}

}  // namespace

// ---- elementary numerics -------------------------------------------------

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("entropy argument must lie in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("divergence argument p must lie in [0,1]");
  if (!(q > 0.0 && q < 1.0)) throw Error("divergence argument q must lie in (0,1)");
  double a = p == 0.0 ? 0.0 : p * std::log2(p / q);
  double b = p == 1.0 ? 0.0 : (1.0 - p) * std::log2((1.0 - p) / (1.0 - q));
  return a + b;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt power(BigInt base, int exp) {
  if (exp < 0) throw Error("negative exponent");
  BigInt r = 1;
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

std::pair<bool, bool> binomial_entropy_check(int n, int k) {
  if (k < 0 || k > n) throw Error("binomial index out of range");
  // 2^{nH(k/n)} = n^n / (k^k (n-k)^(n-k)) exactly, with 0^0 = 1.
  BigInt kk = k == 0 ? BigInt(1) : power(k, k);
  BigInt nk = n - k == 0 ? BigInt(1) : power(n - k, n - k);
  BigInt nn = n == 0 ? BigInt(1) : power(n, n);
  BigInt lhs = binomial(n, k) * kk * nk;
  bool upper_holds = lhs <= nn;
  bool lower_holds = nn <= (BigInt(n) + 1) * lhs;
  return {lower_holds, upper_holds};
}

double cubic_smallest_root(double lambda) {
  if (!(lambda > 0.0 && lambda < kTwoNinths))
    throw Error("cubic root is defined for arguments strictly between 0 and 2/9");
  auto f = [&](double x) { return 1.5 * x * (1.0 - x) * (1.0 - x) - lambda; };
  double lo = 0.0, hi = 1.0 / 3.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  return std::min(std::max(x, std::numeric_limits<double>::min()), 1.0 / 3.0);
}

long long quadratic_T_bound(long long m, long long k) {
  if (k < 1) throw Error("slice weight must be at least 1");
  if (2 * m <= 3 * k) throw Error("quadratic bound needs 2m > 3k");
  double a = double(2 * m - 3 * k);
  long long T = (long long)((3.0 * m + std::sqrt(double(m) * m + 12.0 * m * k)) / a);
  while (quadratic_ok(m, k, T + 1)) ++T;
  while (T > 0 && !quadratic_ok(m, k, T)) --T;
  return T;
}

long long triple_count_bound(long long n, long long m) {
  if (n < 1 || m < 1) throw Error("parameters must be positive");
  if (9 * m <= 2 * n) throw Error("triple-count bound is finite only for 9m > 2n");
  double c = 2.0 * n / (9.0 * m);
  long long T = (long long)((3.0 + std::sqrt(1.0 + 8.0 * c)) / (2.0 * (1.0 - c)));
  if (T < 3) T = 3;
  while (triple_count_ok(n, m, T + 1)) ++T;
  while (T > 3 && !triple_count_ok(n, m, T)) --T;
  return T;
}

long long constant_bound(double lambda) {
  if (!(lambda > kTwoNinths && lambda <= 1.0))
    throw Error("constant regime requires a ratio in (2/9, 1]");
  long double c = 2.0L / (9.0L * (long double)lambda);
  auto ok = [&](long long T) {
    return (long double)(T - 1) * (T - 2) <= c * (long double)T * T;
  };
  long long T = (long long)((3.0L + sqrtl(1.0L + 8.0L * c)) / (2.0L * (1.0L - c)));
  if (T < 3) T = 3;
  while (ok(T + 1)) ++T;
  while (T > 3 && !ok(T)) --T;
  return T;
}

// ---- closed-form bounds ----------------------------------------------------

AlterationPlan alteration_plan(int n, int m) {
  if (n < 1 || m < 1 || m > n) throw Error("need 1 <= m <= n");
  AlterationPlan p{};
  p.h = kl_bernoulli(double(m) / double(n), kTwoNinths);
  double half = 0.5 * n * p.h;
  double t_raw = std::exp2(0.5 + half);  // sqrt(2) * 2^{nh/2}
  double cap = n * kLog2_3 < 40.0 ? std::pow(3.0, n) : std::exp2(40.0);
  p.t = (long long)std::min(std::max(t_raw, 3.0), cap);
  double target = std::exp2(std::log2(2.0 * std::sqrt(2.0) / 3.0) + half) - 1.0;
  p.size_target = std::max((long long)std::ceil(target - 1e-9), 1ll);
  return p;
}

BoundValue lower_bound_alteration(int n, int m) {
  if (m < 1 || 9 * m >= 2 * n)
    throw Error("alteration bound requires 1 <= m and 9m < 2n");
  double h = kl_bernoulli(double(m) / double(n), kTwoNinths);
  double l2 = std::log2(2.0 * std::sqrt(2.0) / 3.0) + 0.5 * n * h;
  // bound = 2^l2 - 1, clamped below by 3
  BigInt v;
  if (l2 < 62.0) {
    double raw = std::exp2(l2 - 1e-9) - 1.0;
    v = BigInt((long long)std::floor(raw));
  } else {
    v = BigInt(1) << (long long)std::floor(l2 - 1e-9);  // conservative for huge values
  }
  if (v < 3) v = 3;
  return from_exact(Direction::lower, v, "alteration" + at(n, m));
}

BoundValue upper_bound_legacy(int n, int m) {
  if (m < 1 || m > n) throw Error("need 1 <= m <= n");
  double l2 = std::log2(double(m)) + (n - 4.5 * (m - 1)) * kLog2_3over2;
  return from_log2(Direction::upper, l2, false, "legacy-recursive" + at(n, m));
}

BoundValue upper_bound_piecewise(int n, int m) {
  if (m < 1 || 9 * m > 2 * n)
    throw Error("piecewise slice bound requires 1 <= 9m <= 2n");
  return from_exact(Direction::upper, piecewise_exact(n, m), "slice-piecewise" + at(n, m));
}

BoundValue upper_bound_small_m(int n, int m) {
  if (m < 2 || m > 5) throw Error("small-strength bound covers m in {2,3,4,5}");
  if (n < small_m_min_n(m))
    throw Error("small-strength bound for m=" + std::to_string(m) + " requires n >= " +
                std::to_string(small_m_min_n(m)));
  return from_exact(Direction::upper, small_m_exact(n, m), "slice-small-m" + at(n, m));
}

BoundValue upper_bound_refined(int n, int m) {
  if (m < 1 || 9 * m >= 2 * n)
    throw Error("refined slice bound requires 1 <= m and 9m < 2n");
  auto r = refined_exact(n, m);
  if (!r) return upper_bound_piecewise(n, m);
  return from_exact(Direction::upper, r->first,
                    "cubic-slice[k=" + std::to_string(r->second) + "]" + at(n, m));
}

BoundValue upper_bound_aux_graph(int n, int ell) {
  if (ell < 0 || 6 * ell > n)
    throw Error("auxiliary-graph bound requires 6*ell <= n");
  return from_exact(Direction::upper, aux_graph_exact(n, ell),
                    "auxiliary-graph" + at(n, 2 * ell + 1));
}

double piecewise_log2(int n, int m) {
  int ell = m / 3, r = m % 3;
  auto log2_binom = [&](int k) {
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
           std::log(2.0);
  };
  if (r == 1) return std::log2(3.0 * (3 * ell + 1)) + 2 * ell + n * kLog2_3over2 - log2_binom(2 * ell);
  if (r == 2)
    return std::log2(6.0 * (3 * ell + 2)) + 2 * ell + 1 + n * kLog2_3over2 - log2_binom(2 * ell + 1);
  return std::log2(6.0 * ell) + 2 * ell - 1 + n * kLog2_3over2 - log2_binom(2 * ell - 1);
}

double small_m_log2(int n, int m) {
  double nn = n;
  switch (m) {
    case 2:
    case 3:
      return std::log2(10.0 / nn) + n * kLog2_3over2;
    case 4:
      return std::log2(44.0 / (nn * nn)) + n * kLog2_3over2;
    case 5:
      return std::log2(232.0 / (nn * nn * nn)) + n * kLog2_3over2;
    default:
      throw Error("small-strength formula covers m in {2,3,4,5}");
  }
}

// ---- rate curve ------------------------------------------------------------

double lower_rate_value(double lambda) {
  if (!(lambda >= 0.0 && lambda <= kTwoNinths + 1e-15))
    throw Error("construction rate is defined on [0, 2/9]");
  lambda = std::min(lambda, kTwoNinths);
  return std::exp2(0.5 * kl_bernoulli(lambda, kTwoNinths));
}

double upper_rate_legacy_value(double lambda) {
  return std::pow(1.5, 1.0 - 4.5 * lambda);
}

double upper_rate_refined_value(double lambda) {
  if (lambda <= 0.0) return 1.5;
  if (lambda >= kTwoNinths - 1e-15) return 1.0;
  double x = cubic_smallest_root(lambda);
  return 1.5 * std::exp2(x - binary_entropy(x));
}

double upper_rate_aux_value(double lambda) {
  return 1.5 * std::exp2(binary_entropy(lambda / 2.0) - binary_entropy(lambda));
}

RatePoint lower_rate(double lambda) {
  return {lambda, lower_rate_value(lambda), "alteration-rate"};
}

RatePoint upper_rate_derived(double alpha, double epsilon) {
  if (!(alpha > 0.0 && alpha < kTwoNinths)) throw Error("offset must lie in (0, 2/9)");
  if (!(epsilon > 0.0 && epsilon < 7.0 / 9.0)) throw Error("slack must lie in (0, 7/9)");
  return {kTwoNinths - alpha, std::pow(1.5, 4.5 * (alpha + epsilon)),
          "near-threshold-rate"};
}

void write_rate_curve(std::ostream& out, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0 / 9.0))
    throw Error("grid step must lie in (0, 1/9]");
  out << "lambda,lower_rate,upper_rate_legacy,upper_rate_refined,"
         "upper_rate_aux_graph,constant_regime_flag\n";
  char buf[256];
  for (int i = 0;; ++i) {
    double lambda = i * grid_step;
    if (lambda > 1.0 / 3.0 + 1e-12) break;
    bool constant_regime = lambda > kTwoNinths + 1e-12;
    double lo = 1.0, legacy = 1.0, refined = 1.0, aux = 1.0;
    if (!constant_regime) {
      lo = lower_rate_value(lambda);
      legacy = upper_rate_legacy_value(lambda);
      refined = upper_rate_refined_value(lambda);
      aux = upper_rate_aux_value(lambda);
    }
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%d\n", lambda, lo,
                  legacy, refined, aux, constant_regime ? 1 : 0);
    out << buf;
  }
}

// ---- linear codes ----------------------------------------------------------

std::pair<BoundValue, BoundValue> linear_bounds(int n, int m) {
  if (m < 1 || 9 * m >= 2 * n) throw Error("linear bounds require 1 <= m and 9m < 2n");
  long long e = floor_div(n - 18ll * m + 93, 43);
  if (e < 0) e = 0;
  BoundValue lo = from_exact(Direction::lower, power(3, int(e)), "random-lines" + at(n, m));
  long long kmax = floor_div(20ll * (n - m + 1), 91) + 1;
  BoundValue hi =
      from_exact(Direction::upper, power(3, int(kmax)), "dimension-bound" + at(n, m));
  return {lo, hi};
}

BoundValue linear_lower_asymptotic(int n, int m) {
  double l2 = (double(n) - 5.0 * m + 21.0) / 10.0 * kLog2_3;
  return from_log2(Direction::lower, l2, false, "random-lines-asymptotic" + at(n, m));
}

// ---- composition -----------------------------------------------------------

const std::vector<BaseFact>& known_exact_values() {
  static const std::vector<BaseFact> facts = {
      {1, 1, 3},  {2, 1, 4}, {3, 1, 6},  {4, 1, 9}, {5, 1, 10}, {6, 1, 13},
      {4, 2, 4},  {5, 2, 6}, {6, 2, 6},  {4, 3, 3}, {5, 3, 3},  {6, 3, 4},
      {7, 3, 4},
  };
  return facts;
}

namespace {

std::string wrap(const std::string& op, const std::string& inner) {
  // Collapse repeated applications: op(op^k(x)) -> op^{k+1}(x).
  std::string caret = op + "^";
  if (inner.rfind(op + "(", 0) == 0)
    return caret + "2(" + inner.substr(op.size() + 1);
  if (inner.rfind(caret, 0) == 0) {
    std::size_t paren = inner.find('(');
    long long k = std::stoll(inner.substr(caret.size(), paren - caret.size()));
    return caret + std::to_string(k + 1) + inner.substr(paren);
  }
  return op + "(" + inner + ")";
}

struct Cell {
  bool set = false;
  BigInt v;
  std::string prov;
};

}  // namespace

std::pair<BoundValue, BoundValue> best_bounds(int n, int m,
                                              const std::vector<BaseFact>& base_facts) {
  if (m < 1 || m > n) throw Error("need 1 <= m <= n");
  if (n > 400) throw Error("composition table capped at n <= 400; use the rate curve instead");

  auto fact_at = [&](int nn, int mm) -> std::optional<long long> {
    std::optional<long long> best;
    for (const BaseFact& f : base_facts)
      if (f.n == nn && f.m == mm && (!best || f.value < *best)) best = f.value;
    return best;
  };

  // ---- upper side: DP over (n', m') reachable by the two recursions ----
  std::vector<std::vector<Cell>> up(std::size_t(n) + 1,
                                    std::vector<Cell>(std::size_t(m) + 1));
  for (int nn = 1; nn <= n; ++nn) {
    int lo_m = std::max(1, m - (n - nn));
    int hi_m = std::min(m, nn);
    for (int mm = lo_m; mm <= hi_m; ++mm) {
      Cell& c = up[std::size_t(nn)][std::size_t(mm)];
      auto consider = [&](const BigInt& val, std::string prov) {
        if (!c.set || val < c.v) {
          c.set = true;
          c.v = val;
          c.prov = std::move(prov);
        }
      };
      if (auto f = fact_at(nn, mm)) consider(BigInt(*f), "base-fact" + at(nn, mm));
      if (9 * mm > 2 * nn)
        consider(BigInt(triple_count_bound(nn, mm)), "triple-count" + at(nn, mm));
      if (9 * mm <= 2 * nn) consider(piecewise_exact(nn, mm), "slice-piecewise" + at(nn, mm));
      if (mm >= 2 && mm <= 5 && nn >= small_m_min_n(mm))
        consider(small_m_exact(nn, mm), "slice-small-m" + at(nn, mm));
      if (mm % 2 == 1 && 6 * ((mm - 1) / 2) <= nn)
        consider(aux_graph_exact(nn, (mm - 1) / 2), "auxiliary-graph" + at(nn, mm));
      if (9 * mm < 2 * nn) {
        if (auto r = refined_exact(nn, mm))
          consider(r->first, "cubic-slice[k=" + std::to_string(r->second) + "]" + at(nn, mm));
      }
      if (nn > 1 && mm > 1 && up[std::size_t(nn) - 1][std::size_t(mm) - 1].set) {
        const Cell& p = up[std::size_t(nn) - 1][std::size_t(mm) - 1];
        consider(p.v, wrap("erase-coordinate", p.prov));
      }
      if (nn > 1 && mm <= nn - 1 && up[std::size_t(nn) - 1][std::size_t(mm)].set) {
        const Cell& p = up[std::size_t(nn) - 1][std::size_t(mm)];
        consider(BigInt(3 * p.v / 2), wrap("majority-puncture", p.prov));
      }
    }
  }
  const Cell& top = up[std::size_t(n)][std::size_t(m)];
  if (!top.set) throw Error("internal: empty upper-bound composition");

  // ---- lower side: max over seeds, then append-coordinate up to n ----
  BigInt best_lo = 3;
  std::string lo_prov = "trivial-triple" + at(n, m);
  auto consider_lo = [&](const BigInt& val, int from_n, std::string prov) {
    BigInt v = val;
    if (from_n < n) prov = from_n == n - 1 ? wrap("append-coordinate", prov)
                                           : "append-coordinate^" + std::to_string(n - from_n) +
                                                 "(" + prov + ")";
    if (v > best_lo) {
      best_lo = v;
      lo_prov = std::move(prov);
    }
  };
  if (9 * m < 2 * n) {
    BoundValue alt = lower_bound_alteration(n, m);
    if (alt.integer_value) consider_lo(*alt.integer_value, n, "alteration" + at(n, m));
  }
  for (const BaseFact& f : base_facts) {
    if (f.m == m && f.n <= n) consider_lo(BigInt(f.value), f.n, "base-fact" + at(f.n, f.m));
    if (f.m >= 1 && m % f.m == 0) {
      int t = m / f.m;
      if (t >= 2 && f.n * t <= n)
        consider_lo(BigInt(f.value), f.n * t,
                    "repeat-lift[" + std::to_string(t) + "](base-fact" + at(f.n, f.m) + ")");
    }
  }

  return {from_exact(Direction::lower, best_lo, lo_prov),
          from_exact(Direction::upper, top.v, top.prov)};
}

}  // namespace trif
