#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/special.hpp"
#include "zetalab/zeta.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace zetalab;
using namespace zetalab::zeta_engine;

namespace {

using CL = std::complex<long double>;

// Test-local evaluator: same mathematical formula, independent coding, much
// heavier truncation (N = 50 + 4t, 12 correction terms), and long-double
// arithmetic end to end.
CL zeta_oracle(CL s) {
    static const long double bn[] = {1.0L,     -1.0L,      1.0L,   -1.0L,
                                     5.0L,     -691.0L,    7.0L,   -3617.0L,
                                     43867.0L, -174611.0L, 854513.0L,
                                     -236364091.0L};
    static const long double bd[] = {6.0L,   30.0L,   42.0L, 30.0L,
                                     66.0L,  2730.0L, 6.0L,  510.0L,
                                     798.0L, 330.0L,  138.0L, 2730.0L};
    const int N = 50 + static_cast<int>(4.0L * fabsl(s.imag()));
    CL sum = 0.0L;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * logl(static_cast<long double>(n)));
    CL lnN = logl(static_cast<long double>(N));
    CL npms = std::exp(-s * lnN);
    sum += npms * static_cast<long double>(N) / (s - 1.0L) + 0.5L * npms;
    long double fact = 1.0L;
    CL q = 1.0L / static_cast<long double>(N);
    for (int k = 1; k <= 12; ++k) {
        fact *= (2.0L * k - 1.0L) * (2.0L * k);
        CL poch = 1.0L;
        for (int j = 0; j < 2 * k - 1; ++j) poch *= s + static_cast<long double>(j);
        sum += (bn[k - 1] / (bd[k - 1] * fact)) * poch * npms * q;
        q /= static_cast<long double>(N) * N;
    }
    return sum;
}

Complex oracle(Complex s) {
    CL r = zeta_oracle(CL(s.real(), s.imag()));
    return Complex(static_cast<double>(r.real()), static_cast<double>(r.imag()));
}

double rel(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}

const ZeroTable& shared_zeros_1000() {
    static ZeroTable t = find_zeros(1000.0);
    return t;
}

}  // namespace

TEST_CASE("zeta classical values") {
    CHECK(rel(zeta({2.0, 0.0}), {pi * pi / 6.0, 0.0}) < 1e-12);
    CHECK(std::abs(zeta({0.5, 0.0}).real() - (-1.46035450880958681)) < 1e-9);
    CHECK(std::abs(zeta({0.0, 0.0}).real() - (-0.5)) < 1e-10);
}

TEST_CASE("zeta and zeta_prime reference values") {
    // mpmath, 30 digits
    CHECK(rel(zeta({0.5, 100.0}),
              {2.69261988568132409047609647052, -0.0203860296025981617707268532983}) < 1e-12);
    CHECK(rel(zeta_prime({0.5, 100.0}),
              {-3.72731270964464823865487345133, -0.194228702573743233375454759901}) < 1e-12);
    CHECK(rel(zeta({3.0, -5.0}),
              {0.912526588998971310107313220142, -0.0508428710745713620716726747498}) < 1e-12);
    CHECK(rel(zeta_prime({2.0, 0.0}), {-0.937548254315843753702574094568, 0.0}) < 1e-12);
}

TEST_CASE("zeta agrees with the high-truncation oracle") {
    RngStream rng = RngStream::derive(777, 0);
    for (int i = 0; i < 30; ++i) {
        double sigma = 0.2 + 2.8 * rng.next_double01();
        double t = 2.0 + 1998.0 * rng.next_double01();
        Complex s(sigma, t);
        CHECK(rel(zeta(s), oracle(s)) < 1e-10);
    }
}

TEST_CASE("zeta pole and ceiling") {
    CHECK_THROWS_AS((void)zeta({1.0, 0.0}), PoleError);
    CHECK_THROWS_AS((void)zeta({0.5, 2.0e5}), AccuracyError);
}

TEST_CASE("zeta conjugate symmetry") {
    Complex s(0.7, 35.0);
    Complex a = zeta(std::conj(s));
    Complex b = std::conj(zeta(s));
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
}

TEST_CASE("log-derivative at 2 matches the prime sum") {
    // -sum Lambda(n)/n^2, prime powers sieved to 1e7, integral tail restored
    const long long M = 10000000;
    std::vector<char> comp(M + 1, 0);
    CompensatedSum sum;
    for (long long p = 2; p <= M; ++p) {
        if (comp[p]) continue;
        for (long long q = p * p; q <= M; q += p) comp[q] = 1;
        double lp = std::log(static_cast<double>(p));
        for (long double q = p; q <= M; q *= p)
            sum.add(lp / static_cast<double>(q * q));
    }
    double want = -(sum.value() + 1.0 / M);
    auto zp = zeta_and_prime({2.0, 0.0});
    double got = (zp.derivative / zp.value).real();
    CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("functional equation residual") {
    RngStream rng = RngStream::derive(901, 0);
    for (int i = 0; i < 100; ++i) {
        double sigma = 0.2 + 0.6 * rng.next_double01();
        double t = 2.0 + 498.0 * rng.next_double01();
        Complex s(sigma, t);
        Complex lhs = zeta(s);
        Complex rhs = special::chi(s) * zeta(Complex(1.0, 0.0) - s);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
    }
}

TEST_CASE("analytic derivative matches central differences") {
    RngStream rng = RngStream::derive(445, 0);
    const double h = 1e-5;
    for (int i = 0; i < 50; ++i) {
        double t = 2.0 + 498.0 * rng.next_double01();
        Complex s(0.5, t);
        Complex fd = (zeta(s + Complex(h, 0)) - zeta(s - Complex(h, 0))) / (2.0 * h);
        CHECK(std::abs(zeta_prime(s) - fd) < 1e-6);
    }
}

TEST_CASE("theta values and smoothness") {
    CHECK(std::abs(theta(20.0) - 1.18689480844448404481275654949) < 1e-12);
    // the evaluation strategy changes at t=15; both sides must agree with the
    // exact Gamma form there
    for (double t : {14.9990, 15.0010, 100.0}) {
        double exact = std::imag(special::log_gamma(Complex(0.25, 0.5 * t))) -
                       0.5 * t * std::log(pi);
        CHECK(std::abs(theta(t) - exact) < 1e-9);
    }
    CHECK_THROWS_AS((void)theta(1.0), DomainError);
}

TEST_CASE("hardy_z anchors and realness") {
    CHECK(std::abs(hardy_z(20.0) - 1.14784241218519727763503408718) < 1e-10);
    CHECK(std::abs(hardy_z(17.8455995404108569) - 2.34018166849673167364023187022) < 1e-10);
    CHECK(hardy_z(14.0) * hardy_z(14.2) < 0.0);
    // |Z| must reproduce |zeta| on the line
    for (double t : {25.3, 77.7, 312.0}) {
        CHECK(std::abs(std::abs(hardy_z(t)) - std::abs(zeta({0.5, t}))) < 1e-12);
    }
}

TEST_CASE("hardy_z brackets the second zero") {
    CHECK(hardy_z(20.9) * hardy_z(21.1) < 0.0);
}

TEST_CASE("find_zeros counts 29 zeros below 100") {
    ZeroTable t = find_zeros(100.0);
    CHECK(t.ordinates.size() == 29);
    CHECK(t.t_max == 100.0);
    CHECK(t.source == ZeroSource::computed);
}

TEST_CASE("first zero against an independent bisection") {
    // bracket on the rotated oracle, never touching the production evaluator
    auto z_oracle = [](double t) {
        Complex v = oracle(Complex(0.5, t));
        double th = theta(t);
        return (Complex(std::cos(th), std::sin(th)) * v).real();
    };
    double lo = 14.0, hi = 14.2, flo = z_oracle(lo);
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = z_oracle(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double gamma1_oracle = 0.5 * (lo + hi);
    ZeroTable t = find_zeros(15.0);
    REQUIRE(t.ordinates.size() == 1);
    CHECK(std::abs(t.ordinates[0] - gamma1_oracle) < 1e-6);
    CHECK(std::abs(t.ordinates[0] - 14.1347251417346937904572519836) < 1e-9);
}

TEST_CASE("zero table matches reference ordinates") {
    const ZeroTable& t = shared_zeros_1000();
    const double want[] = {14.1347251417346937904572519836,
                           21.0220396387715549926284795939,
                           25.0108575801456887632137909926,
                           30.4248761258595132103118975306,
                           32.9350615877391896906623689641};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(t.ordinates[i] - want[i]) < 2e-9);
    CHECK(std::abs(t.ordinates[9] - 49.7738324776723021819167846786) < 2e-9);
    CHECK(std::abs(t.ordinates[49] - 143.111845807620632739405123869) < 2e-9);
    CHECK(std::abs(t.ordinates[99] - 236.524229665816205802475507956) < 2e-9);
}

TEST_CASE("zero table structural invariants") {
    const ZeroTable& t = shared_zeros_1000();
    CHECK(t.ordinates.front() > 14.0);
    CHECK(t.ordinates.front() < 15.0);
    for (std::size_t i = 1; i < t.ordinates.size(); ++i)
        CHECK(t.ordinates[i] > t.ordinates[i - 1]);
    // every prefix count tracks the counting-function estimate
    for (double T : {20.0, 50.0, 100.0, 250.0, 500.0, 750.0, 1000.0}) {
        double rvm = T / two_pi * std::log(T / two_pi) - T / two_pi + 7.0 / 8.0;
        double got = static_cast<double>(t.count_below(T));
        CHECK(std::abs(got - rvm) <= 3.0 * std::log(T));
    }
}

TEST_CASE("reported zeros flip the sign of hardy_z within 1e-9") {
    const ZeroTable& t = shared_zeros_1000();
    for (std::size_t i = 0; i < t.ordinates.size(); i += 13) {
        double g = t.ordinates[i];
        CHECK(hardy_z(g - 1e-9) * hardy_z(g + 1e-9) < 0.0);
    }
}

TEST_CASE("find_zeros is deterministic across thread counts") {
    ZeroTable a = find_zeros(200.0, 1);
    ZeroTable b = find_zeros(200.0, 4);
    REQUIRE(a.ordinates.size() == b.ordinates.size());
    for (std::size_t i = 0; i < a.ordinates.size(); ++i)
        CHECK(a.ordinates[i] == b.ordinates[i]);
}

TEST_CASE("find_zeros rejects requests beyond the ceiling") {
    CHECK_THROWS_AS((void)find_zeros(2.0e5), AccuracyError);
}

TEST_CASE("zeta_prime_at_zeros values and invariants") {
    const ZeroTable& t = shared_zeros_1000();
    auto cps = zeta_prime_at_zeros(t);
    REQUIRE(cps.size() == t.ordinates.size());
    CHECK(std::abs(std::abs(cps[0].zeta_prime) - 0.793160433356506116013897565274) < 1e-9);
    // published approximation matches the real part at this zero
    CHECK(std::abs(cps[0].zeta_prime.real() - 0.7832) < 1e-3);
    CHECK(std::abs(std::abs(cps[1].zeta_prime) - 1.13683910682797482213611450662) < 1e-9);
    CHECK(std::abs(std::abs(cps[2].zeta_prime) - 1.37172128721612993730691528883) < 1e-9);
    for (const auto& cv : cps) {
        CHECK(std::abs(cv.zeta_prime) > 0.0);
        CHECK(is_finite(cv.zeta_prime));
    }
}

TEST_CASE("derivative phases satisfy the reflection relation") {
    // zeta'(rho) = -chi(rho) * conj(zeta'(rho)) when the zero is on the line
    const ZeroTable& t = shared_zeros_1000();
    auto cps = zeta_prime_at_zeros(t);
    for (int i = 0; i < 20; ++i) {
        Complex lhs = cps[i].zeta_prime;
        Complex rhs = -special::chi(Complex(0.5, cps[i].gamma)) * std::conj(lhs);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
    }
}

TEST_CASE("landau-gonek main term and direct summation") {
    const ZeroTable& t = shared_zeros_1000();
    auto r = landau_gonek_check(4.0, t, 1000.0);
    CHECK(std::abs(r.main_term - (-(1000.0 / two_pi) * std::log(2.0))) < 1e-10);

    // plain long-double re-summation
    std::complex<long double> acc = 0.0L;
    const long double lx = logl(4.0L);
    for (double g : t.ordinates) {
        if (g > 1000.0) break;
        long double ph = fmodl(static_cast<long double>(g) * lx,
                               6.283185307179586476925286766559L);
        acc += std::complex<long double>(cosl(ph), sinl(ph));
    }
    acc *= 2.0L;  // sqrt(4)
    CHECK(std::abs(r.lhs - Complex(static_cast<double>(acc.real()),
                                   static_cast<double>(acc.imag()))) < 1e-10);
}

TEST_CASE("landau-gonek bound holds at prime powers and composites") {
    const ZeroTable& t = shared_zeros_1000();
    for (double x : {2.0, 3.0, 4.0, 6.0}) {
        auto r = landau_gonek_check(x, t, 1000.0);
        CHECK(r.within_bound());
        if (x == 6.0) CHECK(r.main_term == 0.0);
    }
    // non-integer x has no main term but still obeys the bound
    auto r = landau_gonek_check(2.5, t, 900.0);
    CHECK(r.main_term == 0.0);
    CHECK(r.within_bound());
}

TEST_CASE("landau-gonek domain") {
    const ZeroTable& t = shared_zeros_1000();
    CHECK_THROWS_AS((void)landau_gonek_check(1.0, t, 100.0), DomainError);
    CHECK_THROWS_AS((void)landau_gonek_check(2.0, t, 2000.0), DomainError);
}
