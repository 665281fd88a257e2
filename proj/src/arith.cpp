#include "zetalab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab::arith {

ArithTables ArithTables::build(int limit, double smooth_bound) {
    if (limit < 1) throw DomainError("table limit must be at least 1");
    if (smooth_bound < 2.0) throw DomainError("smoothness bound must be at least 2");
    ArithTables t;
    t.limit = limit;
    t.smooth_bound = smooth_bound;
    t.spf.assign(limit + 1, 0);
    t.mu.assign(limit + 1, 0);
    t.pp_prime.assign(limit + 1, 0);
    t.pp_exp.assign(limit + 1, 0);
    t.smooth.assign(limit + 1, 0);
    if (limit >= 1) {
        t.spf[1] = 1;
        t.mu[1] = 1;
        t.smooth[1] = 1;
    }
    // linear sieve: spf and mu in one pass
    for (int n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = n;
            t.mu[n] = -1;
            t.primes.push_back(n);
        }
        for (int p : t.primes) {
            long long m = static_cast<long long>(p) * n;
            if (p > t.spf[n] || m > limit) break;
            t.spf[m] = p;
            t.mu[m] = (p == t.spf[n]) ? 0 : -t.mu[n];
        }
    }
    for (int p : t.primes) {
        long long q = p;
        int a = 1;
        while (q <= limit) {
            t.pp_prime[q] = p;
            t.pp_exp[q] = a;
            q *= p;
            ++a;
        }
    }
    for (int n = 2; n <= limit; ++n) {
        int p = t.spf[n];
        t.smooth[n] = (p <= smooth_bound) && t.smooth[n / p];
    }
    return t;
}

double ArithTables::von_mangoldt(int n) const {
    if (n < 1 || n > limit) throw DomainError("von_mangoldt argument out of table range");
    return pp_prime[n] ? std::log(static_cast<double>(pp_prime[n])) : 0.0;
}

double d_k_prime_power(double k, int a) {
    if (a < 0) throw DomainError("prime-power exponent must be nonnegative");
    double v = 1.0;
    for (int m = 0; m < a; ++m) v *= (k + m) / (m + 1);
    return v;
}

double d_k(double k, long long n) {
    if (n < 1) throw DomainError("d_k argument must be a positive integer");
    double v = 1.0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        v *= d_k_prime_power(k, a);
    }
    if (n > 1) v *= k;  // leftover prime to the first power
    return v;
}

AlphaCoefficients build_alpha(double k, double x_cut, int cutoff,
                              const ArithTables& tables) {
    if (x_cut < 2.0) throw DomainError("prime cutoff must be at least 2");
    if (cutoff < 1) throw DomainError("coefficient cutoff must be at least 1");
    if (cutoff > tables.limit)
        throw CapacityError("coefficient cutoff exceeds sieve table limit");

    AlphaCoefficients alpha;
    alpha.k = k;
    alpha.x_cut = x_cut;
    alpha.cutoff = cutoff;
    alpha.values.assign(cutoff + 1, 0.0);
    alpha.values[1] = 1.0;

    // support is smoothness w.r.t. x_cut, which may differ from the table's
    // own bound; derive it locally from spf
    std::vector<char> sm(cutoff + 1, 0);
    sm[1] = 1;
    for (int n = 2; n <= cutoff; ++n)
        sm[n] = (tables.spf[n] <= x_cut) && sm[n / tables.spf[n]];

    // prime powers first: a * alpha(p^a) = k * sum_{l=1..min(a,L_p)} alpha(p^{a-l})
    for (int p : tables.primes) {
        if (p > x_cut || p > cutoff) break;
        int lp = 0;
        double q = 1.0;
        while (q * p <= x_cut) {
            q *= p;
            ++lp;
        }
        std::vector<double> c;
        c.push_back(1.0);
        long long pw = p;
        for (int a = 1; pw <= cutoff; ++a, pw *= p) {
            double s = 0.0;
            for (int l = 1; l <= std::min(a, lp); ++l) s += c[a - l];
            c.push_back(k * s / a);
            alpha.values[pw] = c[a];
        }
    }
    // multiplicative extension by peeling the full power of the smallest prime
    for (int n = 2; n <= cutoff; ++n) {
        if (!sm[n]) {
            alpha.values[n] = 0.0;
            continue;
        }
        if (tables.pp_prime[n]) continue;  // already set
        int p = tables.spf[n];
        int rest = n;
        long long ppow = 1;
        while (rest % p == 0) {
            rest /= p;
            ppow *= p;
        }
        alpha.values[n] = alpha.values[ppow] * alpha.values[rest];
    }
    return alpha;
}

namespace {

std::vector<int> primes_below(long long n) {
    if (n < 2) return {};
    std::vector<char> comp(n + 1, 0);
    std::vector<int> primes;
    for (long long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(static_cast<int>(i));
        for (long long j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return primes;
}

}  // namespace

AkResult a_k(double k, long long prime_cutoff, double term_tol) {
    if (prime_cutoff < 2) throw DomainError("prime cutoff must be at least 2");
    if (!(term_tol > 0.0)) throw DomainError("term tolerance must be positive");

    const double k2 = k * k;
    CompensatedSum log_product;
    for (int p : primes_below(prime_cutoff)) {
        const double invp = 1.0 / p;
        // inner series sum_m binom(k+m-1,m)^2 p^{-m}
        double c = 1.0;   // binom(k+m-1, m)
        double x = 1.0;   // p^{-m}
        double series = 1.0;
        bool converged = false;
        for (int m = 1; m <= 10000; ++m) {
            c *= (k + m - 1) / m;
            x *= invp;
            double term = c * c * x;
            series += term;
            if (std::abs(term) < term_tol * std::abs(series)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NonconvergenceError("per-prime series failed to converge");
        log_product.add(k2 * std::log1p(-invp) + std::log(series));
    }
    AkResult r;
    // remaining primes contribute ~ -k^2(k-1)^2/4 * p^{-2} each to the log
    const double ck = k2 * (k - 1.0) * (k - 1.0) / 4.0;
    const double p0 = static_cast<double>(prime_cutoff);
    r.tail_bound = 1.5 * (ck + 1e-3) / (p0 * std::log(p0));
    r.value = std::exp(log_product.value());
    return r;
}

double delta_multiplicative(long long n) {
    if (n < 1) throw DomainError("argument must be a positive integer");
    double v = 1.0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        v *= 1.0 + a * (1.0 - 1.0 / p) / (1.0 + 1.0 / p);
    }
    if (n > 1) v *= 1.0 + (1.0 - 1.0 / n) / (1.0 + 1.0 / n);
    return v;
}

std::vector<double> dirichlet_convolve(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       int limit) {
    if (limit < 1) throw DomainError("convolution limit must be at least 1");
    if (static_cast<int>(a.size()) <= limit || static_cast<int>(b.size()) <= limit)
        throw CapacityError("inputs shorter than the requested convolution limit");
    std::vector<double> h(limit + 1, 0.0);
    for (int d = 1; d <= limit; ++d) {
        if (a[d] == 0.0) continue;
        for (int m = d; m <= limit; m += d) h[m] += a[d] * b[m / d];
    }
    return h;
}

double gcd_weighted_double_sum(double k, double x_cut, long long cutoff) {
    if (cutoff < 1) throw DomainError("cutoff must be at least 1");
    if (x_cut < 2.0) throw DomainError("prime cutoff must be at least 2");
    if (x_cut > 2e7) throw CapacityError("prime cutoff beyond supported sieve range");

    long double product = 1.0L;
    for (int p : primes_below(static_cast<long long>(x_cut))) {
        // exponent cap from the prime-power budget
        int amax = 0;
        long double q = 1.0L;
        while (q * p <= static_cast<long double>(cutoff) && amax < 200) {
            q *= p;
            ++amax;
        }
        if (amax == 0) continue;
        int lp = 0;
        double pl = 1.0;
        while (pl * p <= x_cut) {
            pl *= p;
            ++lp;
        }
        std::vector<double> c{1.0};
        for (int a = 1; a <= amax; ++a) {
            double s = 0.0;
            for (int l = 1; l <= std::min(a, lp); ++l) s += c[a - l];
            c.push_back(k * s / a);
        }
        // sum_{a,b <= amax} c_a c_b p^{-max(a,b)}
        long double sp = 0.0L;
        long double pma = 1.0L;  // p^{-a}
        long double prefix = 0.0L;  // sum_{b < a} c_b
        const long double invp = 1.0L / p;
        for (int a = 0; a <= amax; ++a) {
            sp += (c[a] * c[a] + 2.0L * c[a] * prefix) * pma;
            prefix += c[a];
            pma *= invp;
        }
        product *= sp;
        if (!std::isfinite(static_cast<double>(product)))
            throw AccuracyError("double-sum product overflowed");
    }
    return static_cast<double>(product);
}

}  // namespace zetalab::arith
