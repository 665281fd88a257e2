#pragma once

#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/special.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab::hybrid {

// Frozen evaluation setting for the factored form of zeta: prime cutoff,
// smoothing weight, the zero table feeding the Hadamard-side factor, and the
// coefficient tables for whichever powers of the prime factor are in play.
// Immutable once assembled; every evaluator below is pure and safe to call
// from multiple threads.
struct HybridContext {
    double x_cut = 2.0;
    special::SmoothingKernel kernel;
    zeta_engine::ZeroTable zeros;
    // half-width of the zero-sum truncation, in units of 1/log(x_cut); the
    // summand decays exponentially on that scale, so 40 buries the tail far
    // below every tolerance used here
    double zero_window = 40.0;
    std::vector<arith::AlphaCoefficients> alpha;

    // table for a given exponent; DomainError when absent or built for a
    // different prime cutoff
    const arith::AlphaCoefficients& alpha_for(double k) const;
};

// Exponent of the prime-side factor: sum of Lambda(n)/(n^s log n) over prime
// powers n <= x_cut.  Exposed so callers can form |P|^(2k) in log space.
Complex p_x_exponent(Complex s, const HybridContext& ctx);

// exp(p_x_exponent)
Complex p_x(Complex s, const HybridContext& ctx);

// Truncated Dirichlet polynomial for the k-th power of the prime-side
// factor: sum over smooth n <= cutoff of alpha_k(n) n^{-s}.
Complex p_x_pow_k_poly(Complex s, double k, long long cutoff,
                       const HybridContext& ctx);

// Zero-side factor away from zeros.
Complex z_x(Complex s, const HybridContext& ctx);

enum class ZxPrimeMethod {
    ratio,   // zeta'(rho) / P_X(rho): the reference used by the moment code
    direct,  // C log X times the windowed product over neighbouring zeros
};

// Derivative of the zero-side factor at the zero with ordinate gamma.
Complex z_x_prime_at_zero(double gamma, const HybridContext& ctx,
                          ZxPrimeMethod method);

}  // namespace zetalab::hybrid
