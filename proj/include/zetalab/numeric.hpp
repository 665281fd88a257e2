#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace zetalab {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double log_two_pi = 1.83787706640934548356065947281123527;

// Neumaier-compensated accumulator.  Used for every long reduction whose
// result feeds a report, so that the summation order (not the partitioning
// of work) determines the bits of the answer.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ComplexCompensatedSum {
    CompensatedSum re, im;

    void add(Complex z) {
        re.add(z.real());
        im.add(z.imag());
    }
    Complex value() const { return {re.value(), im.value()}; }
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Splittable counter-based stream: a splitmix64 walk whose initial state is
// derived from (seed, index), so per-sample streams are reproducible under
// any parallel partitioning of the sample range.
struct RngStream {
    std::uint64_t state;

    explicit RngStream(std::uint64_t seed) : state(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static RngStream derive(std::uint64_t seed, std::uint64_t index) {
        RngStream s(0);
        s.state = mix(mix(seed) ^ (0xA0761D6478BD642FULL * (index + 1)));
        return s;
    }

    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0,1]; never returns 0 so logs are safe.
    double next_double01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Box-Muller pair, written out so streams are identical across platforms
    // (std::normal_distribution is not pinned by the standard).
    void next_gaussian_pair(double& g0, double& g1) {
        const double u1 = next_double01();
        const double u2 = next_double01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        g0 = r * std::cos(two_pi * u2);
        g1 = r * std::sin(two_pi * u2);
    }
};

} // namespace zetalab
