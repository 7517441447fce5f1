#pragma once

// Closed-form lower/upper bounds on the maximum size of m-trifferent ternary
// codes, their asymptotic rate versions, and a composition engine that mixes
// closed forms, recursions and exact base facts into the best certified
// bounds for a given (n, m).

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trif/ternary.hpp"

namespace trif {

using BigInt = boost::multiprecision::cpp_int;

enum class Direction { lower, upper };

// A one-sided bound on a code size, carried in log2 space with directed
// rounding (upper bounds round up, lower bounds round down) so floating-point
// error can never make a bound invalid. integer_value is present only when it
// is exactly representable AND consistent with log2_value (upper: floor of
// 2^log2_value; lower: ceil). constant_known = false marks rate-only bounds
// whose multiplicative constant is not effective; those never participate in
// best_bounds composition.
struct BoundValue {
  Direction dir;
  double log2_value;
  bool constant_known = true;
  std::optional<BigInt> integer_value;
  std::string provenance;
};

// A point of the exponential-rate curve: the base b such that the bound reads
// b^(n(1+o(1))) at m = ceil(lambda*n).
struct RatePoint {
  double lambda;
  double rate;
  std::string provenance;
};

// An exact value T(n0, m0) = value established elsewhere (solver output or a
// published table); feeds both sides of best_bounds.
struct BaseFact {
  int n;
  int m;
  long long value;
};

// ---- elementary numerics ----------------------------------------------

double binary_entropy(double p);                 // H(p), p in [0,1]
double kl_bernoulli(double p, double q);         // H(p,q), p in [0,1], q in (0,1)
BigInt binomial(int n, int k);                   // exact
BigInt power(BigInt base, int exp);              // exact base^exp, exp >= 0

// Both sides of the entropy estimate of the binomial coefficient,
//   2^{nH(k/n)}/(n+1) <= binom(n,k) <= 2^{nH(k/n)},
// decided exactly in integers. Returns {lower_holds, upper_holds}.
std::pair<bool, bool> binomial_entropy_check(int n, int k);

// Smallest root of lambda = (3/2)x(1-x)^2 in (0, 1/3], by bisection on the
// increasing branch; residual <= 1e-12. Requires 0 < lambda < 2/9.
double cubic_smallest_root(double lambda);

// Largest integer T with (2m-3k)T^2 - 6mT + 4m <= 0. Requires 2m > 3k, k >= 1.
long long quadratic_T_bound(long long m, long long k);

// Largest integer T with (T-1)(T-2)/T^2 <= 2n/(9m); finite iff 9m > 2n.
long long triple_count_bound(long long n, long long m);

// Same inequality with the real ratio lambda = m/n; finite for lambda > 2/9.
long long constant_bound(double lambda);

// ---- closed-form bounds on T(n, m) -------------------------------------

// Probabilistic construction: T >= (2*sqrt(2)/3) * 2^{n*h/2} - 1 with
// h = H(m/n, 2/9), clamped below by 3. Requires 1 <= m and 9m < 2n.
BoundValue lower_bound_alteration(int n, int m);

// Sampling plan behind the alteration construction: number of words to draw
// and the size target, with the raw (unclamped) target value.
struct AlterationPlan {
  long long t;           // words sampled, clamped to [3, 3^n] (capped at 2^40)
  long long size_target; // ceil((2*sqrt(2)/3)*2^{n*h/2} - 1), at least 1
  double h;              // KL exponent H(m/n, 2/9)
};
AlterationPlan alteration_plan(int n, int m);    // requires 1 <= m <= n only

// Recursive record bound T <= m*(3/2)^{n-4.5(m-1)}. Valid only as an
// exponential rate (fails at small n), hence constant_known = false.
BoundValue upper_bound_legacy(int n, int m);

// Slice counting bound, exact case split on m mod 3. Requires 1 <= 9m <= 2n.
BoundValue upper_bound_piecewise(int n, int m);

// Sharper slice constants for m in {2,3,4,5}: coefficients 10/n, 10/n,
// 44/n^2, 232/n^3 on (3/2)^n. Valid once n exceeds 3x the slice weight
// (n >= 4 for m in {2,3}, n >= 7 for m = 4, n >= 10 for m = 5).
BoundValue upper_bound_small_m(int n, int m);

// Slice bound with the cubic-root slice weight k = ceil(x^*n) - 1; the slice
// code size is bounded through the quadratic counting inequality, then lifted
// by the translation-averaging inequality. Requires 0 < 9m < 2n; falls back
// to the piecewise bound when the slice weight degenerates to 0.
BoundValue upper_bound_refined(int n, int m);

// Auxiliary-graph bound for odd strength m = 2*ell+1:
// T <= (3/2)^n * binom(n,ell)/binom(n,2ell) * 4(2ell+1). Requires 6*ell <= n.
BoundValue upper_bound_aux_graph(int n, int ell);

// Raw formula values (no validity gating), for formula-vs-formula comparisons.
double piecewise_log2(int n, int m);
double small_m_log2(int n, int m);

// ---- rate curve ---------------------------------------------------------

RatePoint lower_rate(double lambda);             // b(lambda) on [0, 2/9]
RatePoint upper_rate_derived(double alpha, double epsilon);  // rate-only

double lower_rate_value(double lambda);          // [0, 2/9]
double upper_rate_legacy_value(double lambda);   // (3/2)^{1-4.5*lambda}
double upper_rate_refined_value(double lambda);  // (3/2)*2^{x^ - H(x^)}
double upper_rate_aux_value(double lambda);      // (3/2)*2^{H(l/2)-H(l)}

// CSV with columns lambda, lower_rate, upper_rate_legacy, upper_rate_refined,
// upper_rate_aux_graph, constant_regime_flag; grid over [0, 1/3].
void write_rate_curve(std::ostream& out, double grid_step);

// ---- linear codes -------------------------------------------------------

// {lower, upper} bounds on the maximum size of a LINEAR m-trifferent code:
// lower 3^max(floor((n-18m+93)/43), 0) from the random-lines construction,
// upper 3^(floor(20(n-m+1)/91)+1) from the dimension bound. Requires 9m < 2n.
std::pair<BoundValue, BoundValue> linear_bounds(int n, int m);

// Statement-level asymptotic variant 3^{(n-5m+21)/10}; rate only.
BoundValue linear_lower_asymptotic(int n, int m);

// ---- composition --------------------------------------------------------

// Best certified bounds for T(n, m), 1 <= m <= n, as {lower, upper}:
// dynamic programming over smaller parameters combining every applicable
// closed form, the erase-coordinate recursion T(n,m) <= T(n-1,m-1), the
// majority-puncture recursion T(n,m) <= floor(3 T(n-1,m)/2), the
// append-coordinate monotonicity T(n,m) >= T(n-1,m), repetition lifts of
// base facts, and the base facts themselves. Provenance records the chain.
std::pair<BoundValue, BoundValue> best_bounds(int n, int m,
                                              const std::vector<BaseFact>& base_facts = {});

// Exact values reproduced by the exact solver at desk scale, usable as
// default base facts.
const std::vector<BaseFact>& known_exact_values();

}  // namespace trif
