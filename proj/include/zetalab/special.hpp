#pragma once

#include <functional>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::special {

// Principal-branch log Gamma.  exp(log_gamma(z)) reproduces Gamma(z) to
// 1e-12 relative on |z| <= 50; continuous in each open half-plane.
Complex log_gamma(Complex z);

// log G(x) for the Barnes G-function at real x > 0.
// Satisfies log G(x+1) = log Gamma(x) + log G(x).
double barnes_g_log(double x);

// Exponential integral E1(z), principal branch (cut on the negative real
// axis, which is excluded from the domain).
Complex exp_integral_e1(Complex z);

// chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), so zeta(s) = chi(s) zeta(1-s).
Complex chi(Complex s);

// chi'/chi(1/2 + it) for t >= 1; equals -log(t/2pi) plus O(1/t^2) corrections
// from the Stirling expansion of the Gamma factors.  Real on the line.
double chi_logderiv_half(double t);

// Smooth mass-1 weight on [0,1] together with the fixed quadrature rule used
// for every integral against it.  Immutable after construction.
struct SmoothingKernel {
    std::function<double(double)> evaluator; // normalized f
    std::vector<double> nodes;               // quadrature nodes in (0,1)
    std::vector<double> weights;
    double mass = 0.0;                       // quadrature value of the mass

    // Integrate g against the rule (not weighted by f).
    double quad(const std::function<double(double)>& g) const;

    // Recompute mass and rescale the evaluator so the quadrature mass is 1.
    void normalize();
};

// Default kernel: c * exp(-1/(u(1-u))) on (0,1), normalized to mass 1 over a
// Gauss-Legendre rule with node_count nodes.
SmoothingKernel make_bump_kernel(int node_count = 64);

// U(z) = integral_0^1 f(u) E1(z (u + X - 1)/X) du over the kernel's rule.
Complex u_kernel(Complex z, double x_cut, const SmoothingKernel& f);

// Constant C in exp(-U(z)) ~ C z as z -> 0:
//   C = e^gamma0 * exp(integral f(u) log((u + X - 1)/X) du).
// Derived from the small-argument expansion E1(w) = -gamma0 - log w + O(w).
double small_z_constant(double x_cut, const SmoothingKernel& f);

// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Real zeta(s) for s > 1 (coefficient feed for the Barnes series; exposed for tests).
double zeta_real_gt1(double s);

} // namespace zetalab::special
