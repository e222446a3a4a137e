#pragma once

// Test-side reference computations, deliberately independent of the library
// internals: plain loops, fixed wide grids, no shared quadrature plumbing.
// Unit and acceptance tests compare library results against these.

#include <cmath>
#include <complex>
#include <vector>

#include "gkz/integer_matrix.hpp"

namespace oracles {

using Complex = std::complex<double>;

/// Gamma function via a long fixed trapezoid grid for
/// Int_R exp(z T - e^T) dT, valid for Re z > 0.
inline Complex gamma_oracle(Complex z) {
    const double re = z.real();
    const double lo = -55.0 / re;     // left tail: |integrand| ~ e^{re*T}
    const double hi = 30.0;           // right tail dies double-exponentially
    const long n = 400001;
    const double h = (hi - lo) / (n - 1);
    Complex acc(0.0, 0.0);
    for (long k = 0; k < n; ++k) {
        const double t = lo + h * k;
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double mag = std::exp(re * t - std::exp(t)) * w;
        const double ph = z.imag() * t;
        acc += Complex(mag * std::cos(ph), mag * std::sin(ph));
    }
    return acc * h;
}

/// Int_0^inf t^c e^{-w t} dt / t^0 ... i.e. the plain moment integral
/// Int_0^inf t^c e^{-w t} dt for c > -1, w > 0, again on a fixed log grid.
inline double exp_moment_oracle(double c, double w) {
    // substitute t = e^T: Int exp((c+1) T - w e^T) dT
    const double a = c + 1.0;
    const double lo = -55.0 / a - std::log(w);
    const double hi = 30.0 - std::log(w);
    const long n = 400001;
    const double h = (hi - lo) / (n - 1);
    double acc = 0.0;
    for (long k = 0; k < n; ++k) {
        const double t = lo + h * k;
        const double wt = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        acc += std::exp(a * t - w * std::exp(t)) * wt;
    }
    return acc * h;
}

/// All kernel vectors of A with entries in [-bound, bound] by exhaustion.
inline std::vector<std::vector<gkz::Int>> brute_force_kernel(const gkz::IntegerMatrix& a,
                                                             long bound) {
    std::vector<std::vector<gkz::Int>> found;
    const std::size_t n = a.cols();
    std::vector<long> v(n, -bound);
    while (true) {
        bool is_kernel = true;
        for (std::size_t r = 0; r < a.rows() && is_kernel; ++r) {
            gkz::Int acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += a(r, j) * v[j];
            if (acc != 0) is_kernel = false;
        }
        if (is_kernel) {
            std::vector<gkz::Int> copy(n);
            for (std::size_t j = 0; j < n; ++j) copy[j] = v[j];
            found.push_back(std::move(copy));
        }
        std::size_t i = n;
        while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
        if (i == 0) break;
        ++v[i - 1];
    }
    return found;
}

/// Sound-but-incomplete generation check: every standard basis vector of
/// Z^m must be an integer combination of the columns of A with coefficients
/// bounded by `bound`.  Returns true only when certificates were found.
inline bool brute_force_generates(const gkz::IntegerMatrix& a, long bound) {
    const std::size_t m = a.rows(), n = a.cols();
    for (std::size_t target = 0; target < m; ++target) {
        bool found = false;
        std::vector<long> v(n, -bound);
        while (!found) {
            bool hit = true;
            for (std::size_t r = 0; r < m && hit; ++r) {
                gkz::Int acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += a(r, j) * v[j];
                if (acc != gkz::Int(r == target ? 1 : 0)) hit = false;
            }
            if (hit) found = true;
            std::size_t i = n;
            while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
            if (i == 0) break;
            ++v[i - 1];
        }
        if (!found) return false;
    }
    return true;
}

} // namespace oracles
