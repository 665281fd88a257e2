#include "zetalab/harness.hpp"

#include <cmath>
#include <numeric>

#include "zetalab/arith.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/hybrid.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab::harness {

namespace {

// prefix count for T, guarded against an uncovered or empty range
std::size_t zero_prefix(double t, const Workspace& ws) {
    if (!(t > 0.0)) throw DomainError("T must be positive");
    if (t > ws.zeros.t_max + 1e-9)
        throw DomainError("zero table does not cover T");
    std::size_t n = ws.zeros.count_below(t);
    if (n == 0) throw DomainError("no zeros below T");
    return n;
}

// fixed-order compensated mean of per-zero values; slots are filled in
// parallel, reduction order never varies
template <typename Fn>
double indexed_mean(std::size_t n, int threads, Fn&& per_index) {
    std::vector<double> slot(n);
    parallel_for_index(n, threads,
                       [&](std::size_t i) { slot[i] = per_index(i); });
    CompensatedSum sum;
    for (double v : slot) sum.add(v);
    return sum.value() / static_cast<double>(n);
}

// real part of the prime-side exponent at each of the first n zeros
std::vector<double> prime_exponents(std::size_t n, double x,
                                    const Workspace& ws) {
    hybrid::HybridContext ctx;
    ctx.x_cut = x;
    ctx.kernel = ws.kernel;
    (void)hybrid::p_x_exponent({1.0, 0.0}, ctx);  // surface domain errors here
    std::vector<double> re(n);
    parallel_for_index(n, ws.threads, [&](std::size_t i) {
        re[i] =
            hybrid::p_x_exponent({0.5, ws.zeros.ordinates[i]}, ctx).real();
    });
    return re;
}

double barnes_ratio(double k) {
    if (!(k > -1.5)) throw DomainError("exponent at or below -3/2");
    return std::exp(2.0 * special::barnes_g_log(k + 2.0) -
                    special::barnes_g_log(2.0 * k + 3.0));
}

MomentReport finish(MomentReport r) {
    r.ratio = r.empirical / r.predicted;
    return r;
}

}  // namespace

double ExperimentConfig::x_for(double t) const {
    if (x_fixed > 0.0) return x_fixed;
    return std::pow(std::log(t), x_rule_exponent);
}

void ExperimentConfig::validate(double coverage) const {
    if (t_grid.empty()) throw ValidationError("empty T grid");
    if (k_list.empty()) throw ValidationError("empty k list");
    if ((x_fixed > 0.0) == (x_rule_exponent > 0.0))
        throw ValidationError("exactly one of fixed X and X rule required");
    if (x_rule_exponent > 0.0 && !(x_rule_exponent < 2.0))
        throw ValidationError("X rule exponent must stay below 2");
    for (double t : t_grid) {
        if (t > coverage + 1e-9)
            throw ValidationError("T grid exceeds zero table coverage");
        if (x_for(t) < 2.0) throw ValidationError("X below 2 on this grid");
    }
    if (cutoff < 1) throw ValidationError("cutoff must be positive");
}

Workspace Workspace::build(zeta_engine::ZeroTable zeros, int threads) {
    Workspace ws;
    ws.zeros = std::move(zeros);
    ws.kernel = special::make_bump_kernel(64);
    ws.threads = threads;
    auto vals = zeta_engine::zeta_prime_at_zeros(ws.zeros, threads);
    ws.derivs.reserve(vals.size());
    for (const auto& v : vals) ws.derivs.push_back(v.zeta_prime);
    return ws;
}

double log_scale(double t) {
    double l = std::log(t / two_pi);
    if (!(l > 0.0)) throw DomainError("scale log(T/2pi) must be positive");
    return l;
}

double compute_jk(double k, double t, const Workspace& ws,
                  std::vector<double>* flagged) {
    if (!(k > -1.5)) throw DomainError("exponent at or below -3/2");
    std::size_t n = zero_prefix(t, ws);
    if (k < 0.0 && flagged) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(ws.derivs[i]) < 1e-8)
                flagged->push_back(ws.zeros.ordinates[i]);
    }
    return indexed_mean(n, ws.threads, [&](std::size_t i) {
        return std::exp(2.0 * k * std::log(std::abs(ws.derivs[i])));
    });
}

double predict_hko(double k, double t, double ak_value) {
    return ak_value * barnes_ratio(k) * std::pow(log_scale(t), k * (k + 2.0));
}

MomentReport moment_jk(double k, double t, const Workspace& ws,
                       std::vector<double>* flagged) {
    MomentReport r;
    r.t = t;
    r.x = 0.0;
    r.k = k;
    r.quantity = "jk";
    r.n_zeros = static_cast<long long>(zero_prefix(t, ws));
    r.empirical = compute_jk(k, t, ws, flagged);
    r.predicted =
        predict_hko(k, t, arith::a_k(k, ws.ak_prime_cutoff).value);
    return finish(r);
}

MomentReport moment_p_x(double k, double t, double x, const Workspace& ws) {
    MomentReport r;
    r.t = t;
    r.x = x;
    r.k = k;
    r.quantity = "px";
    std::size_t n = zero_prefix(t, ws);
    r.n_zeros = static_cast<long long>(n);
    std::vector<double> re = prime_exponents(n, x, ws);
    r.empirical = indexed_mean(n, ws.threads, [&](std::size_t i) {
        return std::exp(2.0 * k * re[i]);
    });
    double ak = arith::a_k(k, ws.ak_prime_cutoff).value;
    r.predicted =
        ak * std::pow(std::exp(euler_gamma) * std::log(x), k * k);
    return finish(r);
}

MomentReport moment_ratio2(double t, double x, const Workspace& ws) {
    MomentReport r;
    r.t = t;
    r.x = x;
    r.k = 1.0;
    r.quantity = "ratio2";
    std::size_t n = zero_prefix(t, ws);
    r.n_zeros = static_cast<long long>(n);
    std::vector<double> re = prime_exponents(n, x, ws);
    r.empirical = indexed_mean(n, ws.threads, [&](std::size_t i) {
        return std::norm(ws.derivs[i]) * std::exp(-2.0 * re[i]);
    });
    r.predicted = predict_conj3(1.0, t, x);
    return finish(r);
}

MomentReport moment_ratio4(double t, double x, const Workspace& ws) {
    MomentReport r;
    r.t = t;
    r.x = x;
    r.k = 2.0;
    r.quantity = "ratio4";
    std::size_t n = zero_prefix(t, ws);
    r.n_zeros = static_cast<long long>(n);
    std::vector<double> re = prime_exponents(n, x, ws);
    r.empirical = indexed_mean(n, ws.threads, [&](std::size_t i) {
        double q = std::norm(ws.derivs[i]) * std::exp(-2.0 * re[i]);
        return q * q;
    });
    r.predicted = predict_conj3(2.0, t, x);
    return finish(r);
}

MomentReport splitting_check(double k, double t, double x,
                             const Workspace& ws) {
    if (!(k > -1.5)) throw DomainError("exponent at or below -3/2");
    MomentReport r;
    r.t = t;
    r.x = x;
    r.k = k;
    r.quantity = "split";
    std::size_t n = zero_prefix(t, ws);
    r.n_zeros = static_cast<long long>(n);
    std::vector<double> re = prime_exponents(n, x, ws);
    r.empirical = compute_jk(k, t, ws);
    double prime_part = indexed_mean(n, ws.threads, [&](std::size_t i) {
        return std::exp(2.0 * k * re[i]);
    });
    double zero_part = indexed_mean(n, ws.threads, [&](std::size_t i) {
        return std::exp(2.0 * k *
                        (std::log(std::abs(ws.derivs[i])) - re[i]));
    });
    r.predicted = prime_part * zero_part;
    return finish(r);
}

double predict_conj3(double k, double t, double x) {
    double base = std::exp(euler_gamma) * std::log(x);
    return barnes_ratio(k) * std::pow(base, 2.0 * k) *
           std::pow(log_scale(t) / base, k * (k + 2.0));
}

double predict_twisted_i4(long long m, long long n, double t) {
    if (m < 1 || n < 1) throw DomainError("twists must be positive");
    if (std::gcd(m, n) != 1) throw DomainError("twists must be coprime");
    double l = log_scale(t);
    double l4 = l * l * l * l;
    double zeta2 = pi * pi / 6.0;
    return (t * l / two_pi) * (l4 * l4 / (8640.0 * zeta2)) *
           arith::delta_multiplicative(m) * arith::delta_multiplicative(n) /
           std::sqrt(static_cast<double>(m) * static_cast<double>(n));
}

}  // namespace zetalab::harness
