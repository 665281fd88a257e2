#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/numeric.hpp"
#include "zetalab/special.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab::harness {

// Grid driving one experiment run.  Either x_fixed > 0 (constant cutoff) or
// x_rule_exponent > 0 (cutoff grows like a power of log T, kept below the
// square to stay in the regime the predictions assume).
struct ExperimentConfig {
    std::vector<double> t_grid;
    std::vector<double> k_list;
    double x_fixed = 0.0;
    double x_rule_exponent = 0.0;
    long long cutoff = 100000;
    std::uint64_t seed = 0;
    bool deterministic = false;

    double x_for(double t) const;
    // coverage = top of the zero table; throws ValidationError on violation
    void validate(double coverage) const;
};

// One output row: an empirical moment, its closed-form prediction, and the
// quotient, together with the zero count used for normalization.
struct MomentReport {
    double t = 0.0;
    double x = 0.0;
    double k = 0.0;
    std::string quantity;
    double empirical = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    long long n_zeros = 0;
};

// Shared immutable inputs: the zero table and the derivative of zeta at every
// zero (computed once; every moment below reuses them).  All evaluation is
// slot-indexed per zero and reduced in fixed order, so results are identical
// for every thread count.
struct Workspace {
    zeta_engine::ZeroTable zeros;
    std::vector<Complex> derivs;
    special::SmoothingKernel kernel;
    long long ak_prime_cutoff = 1000000;
    int threads = 1;

    static Workspace build(zeta_engine::ZeroTable zeros, int threads = 1);
};

// log(T / 2pi): the scale every prediction is phrased in.  Computed here and
// nowhere else.
double log_scale(double t);

// Mean of |zeta'(rho)|^(2k) over 0 < gamma <= T, normalized by the exact
// prefix count.  For k < 0 any zero with |zeta'| below 1e-8 is appended to
// `flagged` (never dropped from the sum).
double compute_jk(double k, double t, const Workspace& ws,
                  std::vector<double>* flagged = nullptr);

// Closed-form moment prediction at exponent k given the arithmetic factor.
double predict_hko(double k, double t, double ak_value);

MomentReport moment_jk(double k, double t, const Workspace& ws,
                       std::vector<double>* flagged = nullptr);
MomentReport moment_p_x(double k, double t, double x, const Workspace& ws);
MomentReport moment_ratio2(double t, double x, const Workspace& ws);
MomentReport moment_ratio4(double t, double x, const Workspace& ws);
MomentReport splitting_check(double k, double t, double x, const Workspace& ws);

// Closed-form prediction for the mean of |zeta'(rho)/P_X(rho)|^(2k).
double predict_conj3(double k, double t, double x);

// Leading-term prediction for the twisted fourth moment at coprime twists.
double predict_twisted_i4(long long m, long long n, double t);

}  // namespace zetalab::harness
