#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/rmt.hpp"
#include "zetalab/special.hpp"

#include <cmath>
#include <vector>

using namespace zetalab;
using namespace zetalab::rmt;

namespace {

// two-angle ensemble: the density is proportional to |e^{i a} - e^{i b}|^2,
// so the first moment of |Z'|^2 reduces to a one-dimensional quadrature in
// the angle difference
double two_angle_moment_oracle() {
    auto f_num = [](double u) {
        double s2 = 2.0 * std::sin(0.5 * u) * (2.0 * std::sin(0.5 * u));
        return s2 * s2;  // |Z'|^2 weighted by the density factor
    };
    auto f_den = [](double u) {
        double s = 2.0 * std::sin(0.5 * u);
        return s * s;
    };
    const int n = 20000;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= n; ++i) {
        double u = two_pi * i / n;
        double w = (i == 0 || i == n) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
        num += w * f_num(u);
        den += w * f_den(u);
    }
    return num / den;
}

Complex det_by_lu(std::vector<Complex> a, int n) {
    Complex det(1, 0);
    for (int j = 0; j < n; ++j) {
        int piv = j;
        for (int i = j + 1; i < n; ++i)
            if (std::abs(a[i * n + j]) > std::abs(a[piv * n + j])) piv = i;
        if (piv != j) {
            for (int c = 0; c < n; ++c) std::swap(a[j * n + c], a[piv * n + c]);
            det = -det;
        }
        det *= a[j * n + j];
        for (int i = j + 1; i < n; ++i) {
            Complex f = a[i * n + j] / a[j * n + j];
            for (int c = j; c < n; ++c) a[i * n + c] -= f * a[j * n + c];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("exact moment pinned values") {
    CHECK(cue_moment_exact(2, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cue_moment_exact(6, 1.0) == doctest::Approx(98.0 / 3.0).epsilon(1e-12));
    CHECK(cue_moment_exact(2, 1.0) ==
          doctest::Approx(two_angle_moment_oracle()).epsilon(1e-9));
}

TEST_CASE("exact moment is exactly one at k=0") {
    for (int n = 1; n <= 64; ++n) CHECK(cue_moment_exact(n, 0.0) == 1.0);
}

TEST_CASE("exact moment asymptotic scaling") {
    double v = cue_moment_exact(256, 1.0);
    double ratio = v / (256.0 * 256.0 * 256.0 / 12.0);
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
}

TEST_CASE("exact moment scaling approaches its limit monotonically") {
    double prev = 1e300;
    for (int n : {8, 16, 32, 64, 128, 256}) {
        double r = cue_moment_exact(n, 1.0) * 12.0 / (static_cast<double>(n) * n * n);
        double dist = std::abs(std::log(r));
        CHECK(dist < prev);
        prev = dist;
    }
}

TEST_CASE("exact moment is stable under a Barnes recursion shift") {
    // rewrite G(N+2k+2) as Gamma(N+2k+1) G(N+2k+1) inside the composition
    using special::barnes_g_log;
    using special::log_gamma;
    for (int n : {4, 9, 31}) {
        for (double k : {0.5, 1.0, 2.0}) {
            double direct = cue_moment_exact(n, k);
            double lg = 2.0 * barnes_g_log(k + 2.0) - barnes_g_log(2.0 * k + 3.0) +
                        barnes_g_log(static_cast<double>(n)) +
                        log_gamma({n + 2.0 * k + 1.0, 0.0}).real() +
                        barnes_g_log(n + 2.0 * k + 1.0) -
                        std::log(static_cast<double>(n)) -
                        2.0 * barnes_g_log(n + k + 1.0);
            CHECK(std::abs(std::exp(lg) / direct - 1.0) < 1e-11);
        }
    }
}

TEST_CASE("exact moment positivity and domain") {
    for (double k : {-1.4, -1.0, -0.5, 0.25, 1.0, 2.5}) {
        for (int n : {1, 2, 7, 32}) CHECK(cue_moment_exact(n, k) > 0.0);
    }
    CHECK_THROWS_AS((void)cue_moment_exact(4, -1.5), DomainError);
    CHECK_THROWS_AS((void)cue_moment_exact(4, -2.0), DomainError);
    CHECK_THROWS_AS((void)cue_moment_exact(0, 1.0), DomainError);
}

TEST_CASE("sampled matrices are unitary and angle lists well-formed") {
    RngStream rng = RngStream::derive(5150, 0);
    std::vector<Complex> u;
    CueSample s = sample_haar_unitary(24, rng, &u);
    REQUIRE(static_cast<int>(s.angles.size()) == 24);
    double resid = 0.0;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            Complex dot(0, 0);
            for (int l = 0; l < 24; ++l) dot += std::conj(u[l * 24 + i]) * u[l * 24 + j];
            if (i == j) dot -= Complex(1, 0);
            resid = std::max(resid, std::abs(dot));
        }
    CHECK(resid <= 1e-12);
    for (std::size_t i = 0; i < s.angles.size(); ++i) {
        CHECK(s.angles[i] >= 0.0);
        CHECK(s.angles[i] < two_pi);
        if (i) CHECK(s.angles[i] >= s.angles[i - 1]);
    }
}

TEST_CASE("sampler dimension guards") {
    RngStream rng = RngStream::derive(1, 0);
    CHECK_THROWS_AS((void)sample_haar_unitary(0, rng), DomainError);
    CHECK_THROWS_AS((void)sample_haar_unitary(129, rng), CapacityError);
}

TEST_CASE("determinant agrees between angles and an LU factorization") {
    for (int rep = 0; rep < 5; ++rep) {
        RngStream rng = RngStream::derive(7070, rep);
        std::vector<Complex> u;
        CueSample s = sample_haar_unitary(16, rng, &u);
        Complex d_lu = det_by_lu(u, 16);
        Complex d_ang(1, 0);
        for (double a : s.angles) d_ang *= Complex(std::cos(a), std::sin(a));
        CHECK(std::abs(std::abs(d_lu) - 1.0) < 1e-10);
        CHECK(std::abs(d_lu - d_ang) < 1e-9);
    }
}

TEST_CASE("eigenangle statistics are rotation invariant") {
    const int n = 4, samples = 10000;
    ComplexCompensatedSum sum;
    CompensatedSum sq_re, sq_im;
    std::vector<Complex> vals;
    vals.reserve(samples * n);
    for (int i = 0; i < samples; ++i) {
        RngStream rng = RngStream::derive(31337, i);
        CueSample s = sample_haar_unitary(n, rng);
        for (double a : s.angles) {
            Complex e(std::cos(a), std::sin(a));
            vals.push_back(e);
            sum.add(e);
        }
    }
    double m = static_cast<double>(vals.size());
    Complex mean = sum.value() / m;
    for (Complex e : vals) {
        sq_re.add((e.real() - mean.real()) * (e.real() - mean.real()));
        sq_im.add((e.imag() - mean.imag()) * (e.imag() - mean.imag()));
    }
    double se = std::sqrt((sq_re.value() + sq_im.value()) / (m * (m - 1.0)));
    CHECK(std::abs(mean) <= 4.0 * se);
}

TEST_CASE("eigenangle statistics survive a fixed phase twist") {
    // left-multiplying by a fixed diagonal phase matrix must not move the
    // spectral statistics outside Monte Carlo noise
    const int n = 6, samples = 3000;
    const double twist[] = {0.9, 1.7, 2.1, 3.3, 4.4, 5.5};
    ComplexCompensatedSum s_plain, s_twist;
    for (int i = 0; i < samples; ++i) {
        RngStream rng = RngStream::derive(2222, i);
        std::vector<Complex> u;
        CueSample plain = sample_haar_unitary(n, rng, &u);
        for (double a : plain.angles) s_plain.add({std::cos(a), std::sin(a)});
        std::vector<Complex> v = u;
        for (int r = 0; r < n; ++r) {
            Complex ph(std::cos(twist[r]), std::sin(twist[r]));
            for (int c = 0; c < n; ++c) v[r * n + c] *= ph;
        }
        for (double a : eigenangles(v, n))
            s_twist.add({std::cos(a), std::sin(a)});
    }
    double m = static_cast<double>(samples) * n;
    // e^{i theta} has unit modulus, so each mean's standard error is below
    // 1/sqrt(m); allow five of those for the difference
    CHECK(std::abs(s_plain.value() / m - s_twist.value() / m) <= 5.0 * 2.0 / std::sqrt(m));
}

TEST_CASE("derivative moment pinned two-angle case") {
    CueSample s;
    s.n = 2;
    s.angles = {0.0, pi};
    CHECK(charpoly_deriv_moment(s, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(charpoly_deriv_moment(s, 0.0) == 1.0);
}

TEST_CASE("derivative moment k=0 is exactly one on random samples") {
    RngStream rng = RngStream::derive(88, 0);
    CueSample s = sample_haar_unitary(10, rng);
    CHECK(charpoly_deriv_moment(s, 0.0) == 1.0);
}

TEST_CASE("derivative modulus matches a finite-difference limit") {
    RngStream rng = RngStream::derive(4242, 0);
    CueSample s = sample_haar_unitary(3, rng);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
        // |Z(theta_n + h)| / h -> |Z'(theta_n)| as h -> 0
        Complex z(1, 0);
        double th = s.angles[i] + h;
        for (int m = 0; m < 3; ++m) {
            double d = s.angles[m] - th;
            z *= Complex(1, 0) - Complex(std::cos(d), std::sin(d));
        }
        double fd = std::abs(z) / h;
        double formula = 1.0;
        for (int m = 0; m < 3; ++m) {
            if (m == i) continue;
            formula *= 2.0 * std::abs(std::sin(0.5 * (s.angles[m] - s.angles[i])));
        }
        CHECK(std::abs(fd / formula - 1.0) < 1e-4);
    }
}

TEST_CASE("derivative moment rejects coincident angles") {
    CueSample s;
    s.n = 3;
    s.angles = {1.0, 1.0, 2.0};
    CHECK_THROWS_AS((void)charpoly_deriv_moment(s, 1.0), DegenerateSampleError);
}

TEST_CASE("monte carlo matches the exact formula at N=6") {
    McResult r = cue_moment_mc(6, 1.0, 100000, 2024);
    double exact = cue_moment_exact(6, 1.0);
    CHECK(std::abs(r.mean - exact) <= 3.0 * r.std_error);
    CHECK(r.std_error > 0.0);
    CHECK(r.std_error < 0.1);
}

TEST_CASE("monte carlo matches the two-angle quadrature at N=2") {
    McResult r = cue_moment_mc(2, 1.0, 100000, 11);
    CHECK(std::abs(r.mean - 3.0) <= 3.0 * r.std_error);
}

TEST_CASE("monte carlo negative exponent sanity") {
    McResult r = cue_moment_mc(6, -0.5, 20000, 7);
    double exact = cue_moment_exact(6, -0.5);
    CHECK(std::abs(r.mean - exact) <= 4.0 * r.std_error);
}

TEST_CASE("monte carlo k=0 degenerates to exactly one") {
    McResult r = cue_moment_mc(8, 0.0, 1000, 5);
    CHECK(r.mean == 1.0);
    CHECK(r.std_error == 0.0);
}

TEST_CASE("monte carlo determinism across thread counts") {
    McResult a = cue_moment_mc(4, 1.0, 2000, 99, 1);
    McResult b = cue_moment_mc(4, 1.0, 2000, 99, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("monte carlo sample-count guard") {
    CHECK_THROWS_AS((void)cue_moment_mc(4, 1.0, 99, 1), DomainError);
}
