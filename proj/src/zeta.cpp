#include "zetalab/zeta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/special.hpp"

namespace zetalab::zeta_engine {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

// B_{2k} as exact fractions, k = 1..12
constexpr long double kBernNum[] = {1.0L,     -1.0L,   1.0L,  -1.0L,
                                    5.0L,     -691.0L, 7.0L,  -3617.0L,
                                    43867.0L, -174611.0L, 854513.0L,
                                    -236364091.0L};
constexpr long double kBernDen[] = {6.0L,   30.0L, 42.0L, 30.0L,
                                    66.0L,  2730.0L, 6.0L, 510.0L,
                                    798.0L, 330.0L, 138.0L, 2730.0L};

// B_{2k} / (2k)!
double bern_coeff(int k) {
    long double fact = 1.0L;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    return static_cast<double>(kBernNum[k - 1] / (kBernDen[k - 1] * fact));
}

// natural logs in extended precision; grows on demand, per thread
const long double* log_table(int upto) {
    thread_local std::vector<long double> tab = {0.0L, 0.0L};
    while (static_cast<int>(tab.size()) <= upto)
        tab.push_back(logl(static_cast<long double>(tab.size())));
    return tab.data();
}

// e^{-i t ln n}: the phase t*ln(n) is far too large to round through a
// double, so reduce mod 2pi in extended precision first
inline Complex unit_phase_neg(long double t, long double ln_n) {
    double ph = static_cast<double>(fmodl(t * ln_n, kTwoPiL));
    return Complex(std::cos(ph), -std::sin(ph));
}

struct PochhammerPair {
    Complex value;       // (s)_m = s(s+1)...(s+m-1)
    Complex derivative;  // d/ds of the same, via the product rule
};

PochhammerPair pochhammer(Complex s, int m) {
    Complex p(1.0, 0.0), dp(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
        dp = dp * (s + Complex(j, 0)) + p;
        p *= s + Complex(j, 0);
    }
    return {p, dp};
}

// Euler-Maclaurin with the tail differentiated analytically; assumes
// Im s >= 0 and s != 1
ZetaPair zeta_core(Complex s, int n_main, int n_bern) {
    const double sigma = s.real();
    const long double tl = s.imag();
    const bool on_line = sigma == 0.5;
    const long double* lt = log_table(n_main);

    ComplexCompensatedSum sum, dsum;
    sum.add(Complex(1.0, 0.0));  // n = 1
    for (int n = 2; n < n_main; ++n) {
        double lnn = static_cast<double>(lt[n]);
        double mag = on_line ? 1.0 / std::sqrt(static_cast<double>(n))
                             : std::exp(-sigma * lnn);
        Complex term = mag * unit_phase_neg(tl, lt[n]);
        sum.add(term);
        dsum.add(-lnn * term);
    }

    const long double lnNl = logl(static_cast<long double>(n_main));
    const double lnN = static_cast<double>(lnNl);
    Complex n_pow_ms = std::exp(-sigma * lnN) * unit_phase_neg(tl, lnNl);  // N^{-s}
    Complex n_pow_1ms = n_pow_ms * static_cast<double>(n_main);           // N^{1-s}
    Complex sm1 = s - Complex(1.0, 0.0);

    Complex value = sum.value() + n_pow_1ms / sm1 + 0.5 * n_pow_ms;
    Complex deriv = dsum.value() - lnN * n_pow_1ms / sm1 -
                    n_pow_1ms / (sm1 * sm1) - 0.5 * lnN * n_pow_ms;

    double q = 1.0 / n_main;  // N^{-(2k-1)}
    for (int k = 1; k <= n_bern; ++k) {
        double b = bern_coeff(k);
        auto [p, dp] = pochhammer(s, 2 * k - 1);
        Complex base = n_pow_ms * q;
        value += b * p * base;
        deriv += b * (dp - p * lnN) * base;
        q /= static_cast<double>(n_main) * n_main;
    }
    return {value, deriv};
}

ZetaPair zeta_checked(Complex s) {
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw PoleError("zeta has its pole at s = 1");
    double t = std::abs(s.imag());
    if (t > kTCeiling)
        throw AccuracyError("imaginary part beyond the configured ceiling");
    if (s.imag() < 0.0) {
        ZetaPair r = zeta_core(std::conj(s), 10 + static_cast<int>(std::ceil(2.0 * t)), 8);
        return {std::conj(r.value), std::conj(r.derivative)};
    }
    return zeta_core(s, 10 + static_cast<int>(std::ceil(2.0 * t)), 8);
}

}  // namespace

Complex zeta(Complex s) { return zeta_checked(s).value; }

Complex zeta_prime(Complex s) { return zeta_checked(s).derivative; }

ZetaPair zeta_and_prime(Complex s) { return zeta_checked(s); }

double theta(double t) {
    if (t < 2.0) throw DomainError("phase function needs t >= 2");
    if (t > kTCeiling)
        throw AccuracyError("imaginary part beyond the configured ceiling");
    if (t < 15.0) {
        return std::imag(special::log_gamma(Complex(0.25, 0.5 * t))) -
               0.5 * t * std::log(pi);
    }
    double u = 1.0 / t;
    double u2 = u * u;
    double tail = u * (1.0 / 48.0 +
                       u2 * (7.0 / 5760.0 +
                             u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0))));
    return 0.5 * t * std::log(t / two_pi) - 0.5 * t - pi / 8.0 + tail;
}

double hardy_z(double t) {
    Complex z = zeta(Complex(0.5, t));
    double th = theta(t);
    Complex prod = Complex(std::cos(th), std::sin(th)) * z;
    if (std::abs(prod.imag()) > 1e-9 * std::max(1.0, std::abs(prod)))
        throw AccuracyError("rotated critical-line value failed to be real");
    return prod.real();
}

std::size_t ZeroTable::count_below(double t) const {
    return std::upper_bound(ordinates.begin(), ordinates.end(), t) -
           ordinates.begin();
}

namespace {

// derivative of the phase function, for Newton steps
double theta_deriv(double t) {
    return 0.5 * std::log(t / two_pi) - 1.0 / (48.0 * t * t);
}

double gram_point(long n) {
    double target = static_cast<double>(n) * pi;
    // crude invert of t/2 log(t/2pi e) = target, then Newton
    double t = std::max(9.0, two_pi * (n + 2.0) / std::max(1.0, std::log(n + 3.0)));
    for (int it = 0; it < 60; ++it) {
        double f = theta(t) - target;
        double step = f / theta_deriv(t);
        double next = t - step;
        if (next < 7.0) next = 0.5 * (t + 7.0);
        t = next;
        if (std::abs(step) < 1e-12 * std::max(1.0, t)) break;
    }
    return t;
}

struct Bracket {
    double lo, hi, f_lo, f_hi;
};

double refine_zero(const Bracket& br) {
    double lo = br.lo, hi = br.hi, flo = br.f_lo, fhi = br.f_hi;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        double fm = hardy_z(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    // fixed secant polish, bracket-clamped
    double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
    for (int i = 0; i < 3; ++i) {
        if (f1 == f0) break;
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (x2 < lo || x2 > hi) x2 = 0.5 * (lo + hi);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = hardy_z(x2);
    }
    return x1;
}

}  // namespace

ZeroTable find_zeros(double t_max, int threads) {
    if (t_max > kTCeiling)
        throw AccuracyError("zero search beyond the configured ceiling");
    ZeroTable table;
    table.t_max = t_max;
    table.source = ZeroSource::computed;
    table.claimed_accuracy = 1e-9;
    if (t_max < 14.0) return table;

    // Gram points from g_{-1} until one lands past t_max; a margin of a few
    // ensures the final block can close on a good point
    std::vector<double> gp;
    std::vector<long> gn;
    {
        long n = -1;
        double g = 0.0;
        int past = 0;
        while (past < 80) {
            g = gram_point(n);
            gp.push_back(g);
            gn.push_back(n);
            if (g > t_max) ++past;
            ++n;
        }
    }
    std::vector<double> zg(gp.size());
    parallel_for_index(gp.size(), threads,
                       [&](std::size_t i) { zg[i] = hardy_z(gp[i]); });

    // good Gram point: (-1)^n Z(g_n) > 0; the anchor g_{-1} is treated as good
    auto is_good = [&](std::size_t i) {
        if (i == 0) return true;
        double sign = (gn[i] % 2 == 0) ? 1.0 : -1.0;
        return sign * zg[i] > 0.0;
    };

    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < gp.size(); ++i)
        if (is_good(i)) anchors.push_back(i);
    if (anchors.size() < 2 || gp[anchors.back()] <= t_max)
        throw MissedZeroError("Gram scan ended before the last block closed");

    struct Block {
        std::size_t a, b;  // indices into gp
    };
    std::vector<Block> blocks;
    for (std::size_t j = 0; j + 1 < anchors.size(); ++j) {
        if (gp[anchors[j]] > t_max) break;
        blocks.push_back({anchors[j], anchors[j + 1]});
    }

    std::vector<std::vector<double>> found(blocks.size());
    std::atomic<bool> failed{false};
    std::string fail_msg;
    std::mutex fail_mu;

    parallel_for_index(blocks.size(), threads, [&](std::size_t bi) {
        if (failed.load()) return;
        try {
            const Block& blk = blocks[bi];
            const std::size_t kintervals = blk.b - blk.a;
            std::vector<Bracket> brackets;
            for (int level = 1; level <= 4096; level *= 2) {
                brackets.clear();
                for (std::size_t iv = blk.a; iv < blk.b; ++iv) {
                    double lo = gp[iv], hi = gp[iv + 1];
                    double prev_t = lo, prev_f = zg[iv];
                    for (int j = 1; j <= level; ++j) {
                        double tj = lo + (hi - lo) * j / level;
                        double fj = (j == level) ? zg[iv + 1] : hardy_z(tj);
                        if ((fj < 0.0) != (prev_f < 0.0))
                            brackets.push_back({prev_t, tj, prev_f, fj});
                        prev_t = tj;
                        prev_f = fj;
                    }
                }
                if (brackets.size() == kintervals) break;
                if (brackets.size() > kintervals)
                    throw MissedZeroError(
                        "more sign changes than the block budget allows");
                if (level == 4096)
                    throw MissedZeroError(
                        "sign changes missing after maximal subdivision");
            }
            std::vector<double> zs;
            zs.reserve(brackets.size());
            for (const Bracket& br : brackets) zs.push_back(refine_zero(br));
            std::sort(zs.begin(), zs.end());
            found[bi] = std::move(zs);
        } catch (const Error& e) {
            std::lock_guard<std::mutex> lk(fail_mu);
            failed.store(true);
            if (fail_msg.empty()) fail_msg = e.what();
        }
    });
    if (failed.load()) throw MissedZeroError(fail_msg);

    for (auto& zs : found)
        for (double g : zs)
            if (g <= t_max) table.ordinates.push_back(g);
    std::sort(table.ordinates.begin(), table.ordinates.end());
    return table;
}

std::vector<CriticalPointValue> zeta_prime_at_zeros(const ZeroTable& zeros,
                                                    int threads) {
    std::vector<CriticalPointValue> out(zeros.ordinates.size());
    parallel_for_index(zeros.ordinates.size(), threads, [&](std::size_t i) {
        double g = zeros.ordinates[i];
        Complex d = zeta_prime(Complex(0.5, g));
        out[i] = {g, d};
    });
    for (const auto& cv : out) {
        if (!is_finite(cv.zeta_prime) || std::abs(cv.zeta_prime) == 0.0)
            throw AccuracyError("derivative at a zero failed to be finite and nonzero");
    }
    return out;
}

namespace {

// log p when n = p^a, else 0
double von_mangoldt_ll(long long n) {
    if (n < 2) return 0.0;
    long long p = 2;
    while (n % p) {
        ++p;
        if (p * p > n) {
            p = n;
            break;
        }
    }
    long long m = n;
    while (m % p == 0) m /= p;
    return (m == 1) ? std::log(static_cast<double>(p)) : 0.0;
}

bool is_prime_power_ll(long long n) { return von_mangoldt_ll(n) != 0.0; }

// distance from x to the nearest prime power different from x itself
double nearest_other_prime_power(double x) {
    long long cx = llround(x);
    bool x_is_pp = std::abs(x - cx) < 1e-9 && is_prime_power_ll(cx);
    double best = 1e300;
    for (long long n = std::max<long long>(2, cx - 200); n <= cx + 200; ++n) {
        if (!is_prime_power_ll(n)) continue;
        if (x_is_pp && n == cx) continue;
        best = std::min(best, std::abs(x - static_cast<double>(n)));
    }
    return best;
}

}  // namespace

bool LandauGonekResult::within_bound() const {
    return std::abs(lhs - Complex(main_term, 0.0)) <= bound;
}

LandauGonekResult landau_gonek_check(double x, const ZeroTable& zeros, double T) {
    if (x <= 1.0) throw DomainError("explicit-formula check needs x > 1");
    if (T > zeros.t_max * (1.0 + 1e-12))
        throw DomainError("T exceeds the zero table range");

    const long double lx = logl(static_cast<long double>(x));
    ComplexCompensatedSum s;
    for (double g : zeros.ordinates) {
        if (g > T) break;
        double ph = static_cast<double>(fmodl(static_cast<long double>(g) * lx, kTwoPiL));
        s.add(Complex(std::cos(ph), std::sin(ph)));
    }
    Complex lhs = std::sqrt(x) * s.value();

    double lam = 0.0;
    long long cx = llround(x);
    if (cx >= 2 && std::abs(x - cx) < 1e-9) lam = von_mangoldt_ll(cx);
    double main = -(T / two_pi) * lam;

    double gap = nearest_other_prime_power(x);
    double b1 = x * std::log(2.0 * x * T) * std::log(std::log(3.0 * x));
    double b2 = std::log(x) * std::min(T, x / gap);
    double b3 = std::log(2.0 * T) * std::min(T, 1.0 / std::log(x));
    double bound = 10.0 * (b1 + b2 + b3);
    return {lhs, main, bound};
}

}  // namespace zetalab::zeta_engine
