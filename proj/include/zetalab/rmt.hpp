#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::rmt {

struct CueSample {
    int n = 0;
    std::vector<double> angles;  // ascending, in [0, 2pi)
};

// closed-form unitary-ensemble moment of |Z'| at eigenangles
double cue_moment_exact(int n, double k);

// Haar draw: complex Ginibre, Householder QR, R-diagonal phase correction.
// When matrix_out is given, the unitary itself is stored there (row-major).
CueSample sample_haar_unitary(int n, RngStream& rng,
                              std::vector<Complex>* matrix_out = nullptr);

// eigenangles of a (numerically) unitary matrix, ascending in [0, 2pi)
std::vector<double> eigenangles(std::vector<Complex> matrix, int n);

double charpoly_deriv_moment(const CueSample& sample, double k);

struct McResult {
    double mean = 0.0;
    double std_error = 0.0;
};

McResult cue_moment_mc(int n, double k, long long samples, std::uint64_t seed,
                       int threads = 1);

}  // namespace zetalab::rmt
