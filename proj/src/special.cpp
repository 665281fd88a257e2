#include "zetalab/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "zetalab/errors.hpp"

namespace zetalab::special {

namespace {

// Lanczos rational approximation, g = 607/128, 15 terms (Godfrey's set).
// Relative error ~ 1e-15 for Re z >= 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosC = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Complex lanczos_log_gamma(Complex z) {
    // Valid for Re z >= 0.5.
    Complex acc(kLanczosC[0], 0.0);
    for (std::size_t i = 1; i < kLanczosC.size(); ++i)
        acc += kLanczosC[i] / (z + Complex(static_cast<double>(i) - 1.0, 0.0));
    const Complex base = z + Complex(kLanczosG - 0.5, 0.0);
    return 0.5 * log_two_pi + (z - Complex(0.5, 0.0)) * std::log(base) - base + std::log(acc);
}

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log(sin w) up to a multiple of 2 pi i, safe for large |Im w|.
Complex log_sin(Complex w) {
    const Complex i_unit(0.0, 1.0);
    if (w.imag() > 25.0) {
        // sin w = e^{-iw}(i/2)(1 - e^{2iw})
        return -i_unit * w + Complex(-std::log(2.0), 0.5 * pi) +
               std::log(Complex(1.0, 0.0) - std::exp(2.0 * i_unit * w));
    }
    if (w.imag() < -25.0) {
        return i_unit * w + Complex(-std::log(2.0), -0.5 * pi) +
               std::log(Complex(1.0, 0.0) - std::exp(-2.0 * i_unit * w));
    }
    return std::log(std::sin(w));
}

// E1 power series: -gamma0 - log z - sum_{k>=1} (-z)^k/(k k!).
// Accurate whenever the largest term is not exponentially bigger than the
// result: |z| <= 4, or anywhere left of the imaginary axis at small |Im z|.
Complex e1_series(Complex z) {
    Complex u(1.0, 0.0);
    ComplexCompensatedSum s;
    for (int k = 1; k <= 500; ++k) {
        u *= -z / static_cast<double>(k);
        const Complex term = u / static_cast<double>(k);
        s.add(term);
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(s.value())))
            break;
    }
    return -euler_gamma - std::log(z) - s.value();
}

// E1 continued fraction (even contraction), evaluated by modified Lentz:
//   E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
// Converges off the negative real axis; used away from the cut.
Complex e1_continued_fraction(Complex z) {
    constexpr double tiny = 1e-290;
    Complex b = z + Complex(1.0, 0.0);
    Complex f = (b == Complex(0.0, 0.0)) ? Complex(tiny, 0.0) : b;
    Complex c = f;
    Complex d(0.0, 0.0);
    for (int j = 1; j <= 20000; ++j) {
        const double a = -static_cast<double>(j) * static_cast<double>(j);
        b = z + Complex(2.0 * j + 1.0, 0.0);
        d = b + a * d;
        if (d == Complex(0.0, 0.0)) d = Complex(tiny, 0.0);
        c = b + a / c;
        if (c == Complex(0.0, 0.0)) c = Complex(tiny, 0.0);
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        if (std::abs(delta - Complex(1.0, 0.0)) < 1e-15)
            return std::exp(-z) / f;
    }
    throw AccuracyError("exp_integral_e1: continued fraction failed to converge");
}

double legendre_newton_node(int n, int i) {
    // Standard initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15)
            break;
    }
    return x;
}

} // namespace

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5)
        return lanczos_log_gamma(z);
    // Shift into the Lanczos half-plane; the recurrence with principal logs
    // stays on the analytic branch in each open half-plane.
    const int m = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex shift_logs(0.0, 0.0);
    for (int j = 0; j < m; ++j)
        shift_logs += std::log(z + Complex(static_cast<double>(j), 0.0));
    return lanczos_log_gamma(z + Complex(static_cast<double>(m), 0.0)) - shift_logs;
}

double zeta_real_gt1(double s) {
    // Euler-Maclaurin with a short main sum; plenty for s >= 2 coefficients.
    constexpr int n_main = 24;
    constexpr std::array<double, 10> b2k = {
        1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0,     -1.0 / 30.0,    5.0 / 66.0,
        -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
    };
    CompensatedSum acc;
    for (int n = 1; n < n_main; ++n)
        acc.add(std::pow(n, -s));
    const double nn = n_main;
    acc.add(std::pow(nn, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(nn, -s));
    double rising = s;                 // s(s+1)...(s+2k-2)
    double fact = 2.0;                 // (2k)!
    double npow = std::pow(nn, -s - 1.0);
    for (std::size_t k = 1; k <= b2k.size(); ++k) {
        acc.add(b2k[k - 1] / fact * rising * npow);
        const double a = s + (2.0 * k - 1.0);
        rising *= a * (a + 1.0);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= nn * nn;
    }
    return acc.value();
}

double barnes_g_log(double x) {
    if (!(x > 0.0))
        throw DomainError("barnes_g_log: requires x > 0");

    // zeta(2..60) for the Taylor coefficients of log G(1+z).
    static const std::vector<double> zeta_table = [] {
        std::vector<double> t;
        t.reserve(59);
        for (int n = 2; n <= 60; ++n)
            t.push_back(zeta_real_gt1(static_cast<double>(n)));
        return t;
    }();

    // Pull x up above 1/2, then walk down to a base in [0.5, 1.5) where the
    // series in z = base - 1 converges geometrically (|z| <= 1/2).
    CompensatedSum gamma_terms;
    double t = x;
    while (t < 0.5) { // log G(t) = log G(t+1) - log Gamma(t)
        gamma_terms.add(-log_gamma(Complex(t, 0.0)).real());
        t += 1.0;
    }
    while (t >= 1.5) { // log G(t) = log Gamma(t-1) + log G(t-1)
        t -= 1.0;
        gamma_terms.add(log_gamma(Complex(t, 0.0)).real());
    }

    const double z = t - 1.0; // |z| <= 1/2
    CompensatedSum series;
    series.add(0.5 * z * log_two_pi);
    series.add(-0.5 * (z + (1.0 + euler_gamma) * z * z));
    double zk = z * z; // z^(k-1) running power
    for (int k = 3; k <= 61; ++k) {
        zk *= z;
        const double term = ((k % 2 == 1) ? 1.0 : -1.0) * zeta_table[k - 3] * zk / k;
        series.add(term);
        if (std::abs(term) < 1e-18)
            break;
    }
    return series.value() + gamma_terms.value();
}

Complex exp_integral_e1(Complex z) {
    if (z == Complex(0.0, 0.0))
        throw DomainError("exp_integral_e1: z = 0");
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw DomainError("exp_integral_e1: branch cut on the negative real axis");
    if (z.imag() < 0.0)
        return std::conj(exp_integral_e1(std::conj(z))); // Schwarz reflection, exact

    const double r = std::abs(z);
    // Near the cut the function is exponentially large, so the series loses
    // nothing; the continued fraction is the one that struggles there.
    const bool series_ok = r <= 4.0 || (z.real() < 0.0 && z.imag() <= 4.0 && r <= 55.0);
    return series_ok ? e1_series(z) : e1_continued_fraction(z);
}

Complex chi(Complex s) {
    const Complex one_minus_s = Complex(1.0, 0.0) - s;
    if (is_nonpositive_integer(one_minus_s))
        throw PoleError("chi: Gamma(1-s) pole at integer s >= 1");
    // Trivial zeros of the sine factor at even s <= 0.
    if (s.imag() == 0.0 && s.real() <= 0.0 && std::abs(std::remainder(s.real(), 2.0)) == 0.0)
        return {0.0, 0.0};
    const Complex log_chi = s * std::log(Complex(2.0, 0.0)) +
                            (s - Complex(1.0, 0.0)) * std::log(Complex(pi, 0.0)) +
                            log_sin(0.5 * pi * s) + log_gamma(one_minus_s);
    const Complex value = std::exp(log_chi);
    if (!is_finite(value))
        throw AccuracyError("chi: non-finite result");
    return value;
}

double chi_logderiv_half(double t) {
    if (!(t >= 1.0))
        throw DomainError("chi_logderiv_half: requires t >= 1");
    // -2 theta'(t) with theta the Riemann-Siegel phase.
    const double t2 = t * t;
    return -std::log(t / two_pi) + 1.0 / (24.0 * t2) + 7.0 / (960.0 * t2 * t2) +
           31.0 / (8064.0 * t2 * t2 * t2);
}

double SmoothingKernel::quad(const std::function<double(double)>& g) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        s.add(weights[i] * g(nodes[i]));
    return s.value();
}

void SmoothingKernel::normalize() {
    const double m = quad(evaluator);
    const double scale = 1.0 / m;
    auto inner = evaluator;
    evaluator = [inner, scale](double u) { return scale * inner(u); };
    mass = quad(evaluator);
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = legendre_newton_node(n, i);
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        // Map [-1,1] -> [0,1]; sort ascending in u.
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

SmoothingKernel make_bump_kernel(int node_count) {
    if (node_count < 4)
        throw DomainError("make_bump_kernel: too few quadrature nodes");
    SmoothingKernel k;
    gauss_legendre_01(node_count, k.nodes, k.weights);
    k.evaluator = [](double u) {
        if (u <= 0.0 || u >= 1.0)
            return 0.0;
        return std::exp(-1.0 / (u * (1.0 - u)));
    };
    k.normalize();
    return k;
}

Complex u_kernel(Complex z, double x_cut, const SmoothingKernel& f) {
    if (z == Complex(0.0, 0.0))
        throw DomainError("u_kernel: z = 0");
    if (!(x_cut >= 2.0))
        throw DomainError("u_kernel: requires X >= 2");
    ComplexCompensatedSum s;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const double u = f.nodes[i];
        const double w = f.weights[i] * f.evaluator(u);
        if (w == 0.0)
            continue;
        s.add(w * exp_integral_e1(z * ((u + x_cut - 1.0) / x_cut)));
    }
    return s.value();
}

double small_z_constant(double x_cut, const SmoothingKernel& f) {
    if (!(x_cut >= 2.0))
        throw DomainError("small_z_constant: requires X >= 2");
    const double integral =
        f.quad([&](double u) { return f.evaluator(u) * std::log((u + x_cut - 1.0) / x_cut); });
    return std::exp(euler_gamma + integral);
}

} // namespace zetalab::special
