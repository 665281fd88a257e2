#include "zetalab/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/errors.hpp"

namespace zetalab::hybrid {

namespace {

void check_context(const HybridContext& ctx) {
    if (!(ctx.x_cut >= 2.0))
        throw DomainError("hybrid context needs a prime cutoff >= 2");
    if (!(ctx.zero_window >= 20.0))
        throw WindowError("zero window below 20 gives an uncontrolled tail");
}

// ordinates in [lo, hi]; the table is ascending
std::pair<std::size_t, std::size_t> ordinate_range(
    const std::vector<double>& ords, double lo, double hi) {
    auto b = std::lower_bound(ords.begin(), ords.end(), lo);
    auto e = std::upper_bound(ords.begin(), ords.end(), hi);
    return {static_cast<std::size_t>(b - ords.begin()),
            static_cast<std::size_t>(e - ords.begin())};
}

// window sum of U((s - rho') log X) over zeros 1/2 +- i gamma' whose
// ordinate lies within half_width of Im s; skip_index excludes one ordinate
// (the zero being differentiated at), applied on the + side only
Complex window_exponent(Complex s, const HybridContext& ctx, double half_width,
                        std::size_t skip_index) {
    const double lx = std::log(ctx.x_cut);
    const double t = s.imag();
    const auto& ords = ctx.zeros.ordinates;
    ComplexCompensatedSum sum;

    auto [b, e] = ordinate_range(ords, t - half_width, t + half_width);
    for (std::size_t i = b; i < e; ++i) {
        if (i == skip_index) continue;
        Complex z = (s - Complex(0.5, ords[i])) * lx;
        sum.add(special::u_kernel(z, ctx.x_cut, ctx.kernel));
    }
    // mirrored ordinates -gamma'; only reachable when |t| is small or t < 0
    auto [mb, me] = ordinate_range(ords, -t - half_width, -t + half_width);
    for (std::size_t i = mb; i < me; ++i) {
        Complex z = (s - Complex(0.5, -ords[i])) * lx;
        sum.add(special::u_kernel(z, ctx.x_cut, ctx.kernel));
    }
    return sum.value();
}

void check_window_coverage(double t, double half_width,
                           const zeta_engine::ZeroTable& zeros) {
    if (std::abs(t) + half_width > zeros.t_max + 1e-9)
        throw WindowError("zero table stops inside the truncation window");
}

}  // namespace

const arith::AlphaCoefficients& HybridContext::alpha_for(double k) const {
    for (const auto& a : alpha)
        if (std::abs(a.k - k) <= 1e-12 && std::abs(a.x_cut - x_cut) <= 1e-12)
            return a;
    throw DomainError("no coefficient table for this exponent and cutoff");
}

Complex p_x_exponent(Complex s, const HybridContext& ctx) {
    check_context(ctx);
    if (s.real() < 0.0)
        throw DomainError("prime-side factor is evaluated on Re s >= 0");
    const int x = static_cast<int>(ctx.x_cut);
    ComplexCompensatedSum sum;
    for (int p = 2; p <= x; ++p) {
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        const double lp = std::log(static_cast<double>(p));
        double pa = static_cast<double>(p);
        for (int a = 1; pa <= ctx.x_cut; ++a, pa *= p)
            sum.add(std::exp(-s * (a * lp)) / static_cast<double>(a));
    }
    return sum.value();
}

Complex p_x(Complex s, const HybridContext& ctx) {
    return std::exp(p_x_exponent(s, ctx));
}

Complex p_x_pow_k_poly(Complex s, double k, long long cutoff,
                       const HybridContext& ctx) {
    check_context(ctx);
    if (k == 0.0) return {1.0, 0.0};
    const auto& a = ctx.alpha_for(k);
    if (cutoff < 1) throw DomainError("cutoff must be positive");
    if (cutoff > a.cutoff)
        throw CapacityError("coefficient table shorter than requested cutoff");
    ComplexCompensatedSum sum;
    for (long long n = 1; n <= cutoff; ++n) {
        const double c = a.values[static_cast<std::size_t>(n)];
        if (c == 0.0) continue;
        sum.add(c * std::exp(-s * std::log(static_cast<double>(n))));
    }
    return sum.value();
}

Complex z_x(Complex s, const HybridContext& ctx) {
    check_context(ctx);
    const double half_width = ctx.zero_window / std::log(ctx.x_cut);
    check_window_coverage(s.imag(), half_width, ctx.zeros);
    Complex expo = window_exponent(s, ctx, half_width, ctx.zeros.ordinates.size());
    return std::exp(-expo);
}

Complex z_x_prime_at_zero(double gamma, const HybridContext& ctx,
                          ZxPrimeMethod method) {
    check_context(ctx);
    const auto& ords = ctx.zeros.ordinates;
    auto it = std::lower_bound(ords.begin(), ords.end(), gamma - 1e-6);
    if (it == ords.end() || std::abs(*it - gamma) > 1e-6)
        throw ZeroNotFoundError("ordinate is not in the zero table");
    const std::size_t idx = static_cast<std::size_t>(it - ords.begin());
    const Complex rho(0.5, ords[idx]);

    if (method == ZxPrimeMethod::ratio) {
        zeta_engine::ZetaPair zp = zeta_engine::zeta_and_prime(rho);
        return zp.derivative / p_x(rho, ctx);
    }

    const double half_width = ctx.zero_window / std::log(ctx.x_cut);
    check_window_coverage(ords[idx], half_width, ctx.zeros);
    Complex expo = window_exponent(rho, ctx, half_width, idx);
    const double prefactor =
        special::small_z_constant(ctx.x_cut, ctx.kernel) * std::log(ctx.x_cut);
    return prefactor * std::exp(-expo);
}

}  // namespace zetalab::hybrid
