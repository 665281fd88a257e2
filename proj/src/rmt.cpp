#include "zetalab/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/special.hpp"

namespace zetalab::rmt {

namespace {

constexpr int kMaxDim = 128;

struct CMat {
    int n = 0;
    std::vector<Complex> a;
    explicit CMat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}
    Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Complex& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }
};

// A <- (I - 2 v v*) A restricted to rows [row0, n)
void reflect_left(CMat& m, const std::vector<Complex>& v, int row0) {
    int n = m.n;
    int len = static_cast<int>(v.size());
    for (int j = 0; j < n; ++j) {
        Complex dot(0, 0);
        for (int i = 0; i < len; ++i) dot += std::conj(v[i]) * m(row0 + i, j);
        dot *= 2.0;
        for (int i = 0; i < len; ++i) m(row0 + i, j) -= dot * v[i];
    }
}

// A <- A (I - 2 v v*) restricted to columns [col0, n)
void reflect_right(CMat& m, const std::vector<Complex>& v, int col0) {
    int n = m.n;
    int len = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        Complex dot(0, 0);
        for (int j = 0; j < len; ++j) dot += m(i, col0 + j) * v[j];
        dot *= 2.0;
        for (int j = 0; j < len; ++j) m(i, col0 + j) -= dot * std::conj(v[j]);
    }
}

// Householder vector sending x to a multiple of e_1; returns false when x is
// already there
bool householder_vector(std::vector<Complex>& x) {
    double norm2 = 0.0;
    for (const Complex& c : x) norm2 += std::norm(c);
    double norm = std::sqrt(norm2);
    if (norm == 0.0) return false;
    Complex x0 = x[0];
    Complex phase = (std::abs(x0) == 0.0) ? Complex(1, 0) : x0 / std::abs(x0);
    Complex alpha = -phase * norm;
    x[0] -= alpha;
    double vnorm2 = 0.0;
    for (const Complex& c : x) vnorm2 += std::norm(c);
    double vnorm = std::sqrt(vnorm2);
    if (vnorm < 1e-300) return false;
    for (Complex& c : x) c /= vnorm;
    return true;
}

// plane rotation [c s; -conj(s) c] with real c zeroing b in (a, b)^T
void givens(Complex a, Complex b, double& c, Complex& s) {
    double absa = std::abs(a), absb = std::abs(b);
    if (absb == 0.0) {
        c = 1.0;
        s = Complex(0, 0);
        return;
    }
    if (absa == 0.0) {
        c = 0.0;
        s = std::conj(b) / absb;
        return;
    }
    double h = std::hypot(absa, absb);
    c = absa / h;
    s = (a / absa) * std::conj(b) / h;
}

void hessenberg_in_place(CMat& h) {
    int n = h.n;
    std::vector<Complex> v;
    for (int j = 0; j + 2 < n; ++j) {
        v.assign(n - j - 1, Complex(0, 0));
        for (int i = 0; i < n - j - 1; ++i) v[i] = h(j + 1 + i, j);
        if (!householder_vector(v)) continue;
        reflect_left(h, v, j + 1);
        reflect_right(h, v, j + 1);
    }
}

std::vector<Complex> hessenberg_eigenvalues(CMat h) {
    const int n = h.n;
    std::vector<Complex> eig(n);
    int hi = n - 1;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        bool deflated = false;
        for (int iter = 0; iter <= 500; ++iter) {
            // split at negligible subdiagonal entries
            int lo = hi;
            while (lo > 0) {
                double off = std::abs(h(lo, lo - 1));
                if (off <= 1e-13 * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)))) {
                    h(lo, lo - 1) = Complex(0, 0);
                    break;
                }
                --lo;
            }
            if (lo == hi) {
                eig[hi] = h(hi, hi);
                --hi;
                deflated = true;
                break;
            }
            // Wilkinson shift from the trailing 2x2 of the active window;
            // every tenth sweep take an exceptional shift instead, which
            // breaks the stagnation of perfectly symmetric spectra
            Complex mu;
            if (iter > 0 && iter % 10 == 0) {
                mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
            } else {
                Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
                Complex c = h(hi, hi - 1), d = h(hi, hi);
                Complex tr = a + d;
                Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
                Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
                mu = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
            }

            for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
            std::vector<double> cs(hi - lo);
            std::vector<Complex> sn(hi - lo);
            for (int i = lo; i < hi; ++i) {
                double gc;
                Complex gs;
                givens(h(i, i), h(i + 1, i), gc, gs);
                cs[i - lo] = gc;
                sn[i - lo] = gs;
                for (int j = i; j <= hi; ++j) {
                    Complex t1 = h(i, j), t2 = h(i + 1, j);
                    h(i, j) = gc * t1 + gs * t2;
                    h(i + 1, j) = -std::conj(gs) * t1 + gc * t2;
                }
            }
            for (int i = lo; i < hi; ++i) {
                double gc = cs[i - lo];
                Complex gs = sn[i - lo];
                // columns i, i+1 carry nonzeros only down to row i+1 here
                for (int r = lo; r <= std::min(hi, i + 1); ++r) {
                    Complex t1 = h(r, i), t2 = h(r, i + 1);
                    h(r, i) = gc * t1 + std::conj(gs) * t2;
                    h(r, i + 1) = -gs * t1 + gc * t2;
                }
            }
            for (int i = lo; i <= hi; ++i) h(i, i) += mu;
        }
        if (!deflated)
            throw ConvergenceError("eigen-iteration exceeded its cap");
    }
    return eig;
}

}  // namespace

double cue_moment_exact(int n, double k) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (k <= -1.5) throw DomainError("moment exponent must exceed -3/2");
    if (k == 0.0) return 1.0;  // telescopes exactly; avoid float residue
    using special::barnes_g_log;
    double lg = 2.0 * barnes_g_log(k + 2.0) - barnes_g_log(2.0 * k + 3.0) +
                barnes_g_log(static_cast<double>(n)) +
                barnes_g_log(n + 2.0 * k + 2.0) - std::log(static_cast<double>(n)) -
                2.0 * barnes_g_log(n + k + 1.0);
    return std::exp(lg);
}

std::vector<double> eigenangles(std::vector<Complex> matrix, int n) {
    CMat h(n);
    h.a = std::move(matrix);
    hessenberg_in_place(h);
    std::vector<Complex> eig = hessenberg_eigenvalues(std::move(h));
    std::vector<double> angles(n);
    for (int i = 0; i < n; ++i) {
        double a = std::arg(eig[i]);
        if (a < 0.0) a += two_pi;
        if (a >= two_pi) a -= two_pi;
        angles[i] = a;
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

CueSample sample_haar_unitary(int n, RngStream& rng,
                              std::vector<Complex>* matrix_out) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (n > kMaxDim) throw CapacityError("dimension beyond the eigen-solver budget");

    // complex Ginibre draw
    CMat a(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double g0, g1;
            rng.next_gaussian_pair(g0, g1);
            a(i, j) = Complex(g0 * inv_sqrt2, g1 * inv_sqrt2);
        }

    // Householder QR, accumulating Q
    CMat q(n);
    for (int i = 0; i < n; ++i) q(i, i) = Complex(1, 0);
    std::vector<std::vector<Complex>> reflectors;
    std::vector<Complex> v;
    for (int j = 0; j < n - 1; ++j) {
        v.assign(n - j, Complex(0, 0));
        for (int i = 0; i < n - j; ++i) v[i] = a(j + i, j);
        if (!householder_vector(v)) {
            reflectors.emplace_back();
            continue;
        }
        reflect_left(a, v, j);
        reflectors.push_back(v);
    }
    for (int j = n - 2; j >= 0; --j)
        if (!reflectors[j].empty()) reflect_left(q, reflectors[j], j);

    // un-phase the R diagonal so the draw is exactly Haar
    for (int j = 0; j < n; ++j) {
        Complex r = a(j, j);
        double ar = std::abs(r);
        Complex phase = (ar == 0.0) ? Complex(1, 0) : r / ar;
        for (int i = 0; i < n; ++i) q(i, j) *= phase;
    }

    // unitarity residual before any spectral work
    double resid = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex dot(0, 0);
            for (int l = 0; l < n; ++l) dot += std::conj(q(l, i)) * q(l, j);
            if (i == j) dot -= Complex(1, 0);
            resid = std::max(resid, std::abs(dot));
        }
    if (resid > 1e-12)
        throw AccuracyError("orthonormalization left a unitarity residual");

    if (matrix_out) *matrix_out = q.a;

    CueSample s;
    s.n = n;
    s.angles = eigenangles(std::move(q.a), n);
    return s;
}

double charpoly_deriv_moment(const CueSample& sample, double k) {
    if (k == 0.0) return 1.0;
    const int n = sample.n;
    if (n < 1) throw DomainError("sample is empty");
    if (n == 1) return 1.0;  // empty product: |Z'| = 1
    CompensatedSum acc;
    for (int i = 0; i < n; ++i) {
        CompensatedSum log_abs;
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            double s = 2.0 * std::abs(std::sin(0.5 * (sample.angles[l] - sample.angles[i])));
            if (s < 1e-13)
                throw DegenerateSampleError("coincident eigenangles in sample");
            log_abs.add(std::log(s));
        }
        acc.add(std::exp(2.0 * k * log_abs.value()));
    }
    return acc.value() / n;
}

McResult cue_moment_mc(int n, double k, long long samples, std::uint64_t seed,
                       int threads) {
    if (samples < 100) throw DomainError("need at least 100 samples");
    std::vector<double> vals(static_cast<std::size_t>(samples));
    std::exception_ptr first_error;
    std::mutex err_mu;
    parallel_for_index(static_cast<std::size_t>(samples), threads,
                       [&](std::size_t i) {
                           try {
                               RngStream rng = RngStream::derive(seed, i);
                               CueSample s = sample_haar_unitary(n, rng);
                               vals[i] = charpoly_deriv_moment(s, k);
                           } catch (...) {
                               std::lock_guard<std::mutex> lk(err_mu);
                               if (!first_error) first_error = std::current_exception();
                           }
                       });
    if (first_error) std::rethrow_exception(first_error);

    CompensatedSum mean_sum;
    for (double v : vals) mean_sum.add(v);
    double mean = mean_sum.value() / static_cast<double>(samples);
    CompensatedSum var_sum;
    for (double v : vals) var_sum.add((v - mean) * (v - mean));
    double se = (samples > 1)
                    ? std::sqrt(var_sum.value() /
                                (static_cast<double>(samples) *
                                 (static_cast<double>(samples) - 1.0)))
                    : 0.0;
    return {mean, se};
}

}  // namespace zetalab::rmt
