#pragma once

#include <string>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::zeta_engine {

inline constexpr double kTCeiling = 1e5;

Complex zeta(Complex s);
Complex zeta_prime(Complex s);

// both values from one pass; cheaper than two calls and exactly consistent
struct ZetaPair {
    Complex value;
    Complex derivative;
};
ZetaPair zeta_and_prime(Complex s);

double theta(double t);
double hardy_z(double t);

enum class ZeroSource { computed, ingested };

struct ZeroTable {
    std::vector<double> ordinates;  // ascending, gamma > 0
    double t_max = 0.0;
    ZeroSource source = ZeroSource::computed;
    double claimed_accuracy = 1e-9;

    std::size_t count_below(double t) const;
};

ZeroTable find_zeros(double t_max, int threads = 1);

struct CriticalPointValue {
    double gamma = 0.0;
    Complex zeta_prime;
};

std::vector<CriticalPointValue> zeta_prime_at_zeros(const ZeroTable& zeros,
                                                    int threads = 1);

struct LandauGonekResult {
    Complex lhs;        // sum of x^rho over 0 < gamma <= T
    double main_term;   // -(T/2pi) Lambda(x)
    double bound;       // assembled error budget
    bool within_bound() const;
};

LandauGonekResult landau_gonek_check(double x, const ZeroTable& zeros, double T);

}  // namespace zetalab::zeta_engine
