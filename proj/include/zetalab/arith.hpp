#pragma once

#include <vector>

namespace zetalab::arith {

// Sieve-backed lookup tables. Built once, immutable afterwards; all readers
// are const and thread-safe.
struct ArithTables {
    int limit = 0;
    double smooth_bound = 0.0;       // X in the smoothness predicate
    std::vector<int> spf;            // smallest prime factor; spf[1] = 1
    std::vector<int> mu;             // Moebius
    std::vector<int> pp_prime;       // p when n = p^a, else 0
    std::vector<int> pp_exp;         // a when n = p^a, else 0
    std::vector<char> smooth;        // every prime factor <= smooth_bound
    std::vector<int> primes;

    static ArithTables build(int limit, double smooth_bound);

    bool is_prime_power(int n) const { return pp_prime[n] != 0; }
    double von_mangoldt(int n) const;
    bool is_smooth(int n) const { return smooth[n] != 0; }
};

// Coefficients of the k-th power of the truncated prime product, stored
// densely for 1 <= n <= cutoff. Zero off the smooth support.
struct AlphaCoefficients {
    double k = 0.0;
    double x_cut = 0.0;
    int cutoff = 0;
    std::vector<double> values;      // index by n; values[0] unused

    double at(int n) const { return values[n]; }
};

// Generalized divisor function, multiplicative with
// d_k(p^a) = binom(k+a-1, a), computed as a rising-factorial product so
// negative and fractional k stay finite.
double d_k(double k, long long n);

// binom(k+a-1, a) itself, for prime-power building blocks.
double d_k_prime_power(double k, int a);

AlphaCoefficients build_alpha(double k, double x_cut, int cutoff,
                              const ArithTables& tables);

struct AkResult {
    double value = 0.0;
    double tail_bound = 0.0;         // bound on |log a_k - log(truncated)|
};

AkResult a_k(double k, long long prime_cutoff, double term_tol = 1e-14);

double delta_multiplicative(long long n);

// (a*b)(n) = sum_{d|n} a(d) b(n/d); inputs indexed from 1, slot 0 ignored.
std::vector<double> dirichlet_convolve(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       int limit);

// Sum over pairs of smooth numbers of alpha(m) alpha(n) gcd(m,n)/(mn),
// evaluated per prime: the summand is multiplicative in the prime-power
// components of (m,n), so the double sum factors into
// prod_{p <= X} sum_{a,b} c_a c_b p^{-max(a,b)} with c_a = alpha(p^a).
// `cutoff` caps the prime powers admitted (p^a <= cutoff); the omitted tail
// is geometrically small, unlike a plain truncation of the double sum over
// m,n <= cutoff, which converges far too slowly to be usable.
double gcd_weighted_double_sum(double k, double x_cut, long long cutoff);

}  // namespace zetalab::arith
