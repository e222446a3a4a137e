#include "gkz/whittaker.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace gkz {

namespace {

std::size_t pair_offset(std::size_t k, std::size_t i) {
    // pairs (k,i), 1 <= i <= k, in lexicographic order
    return k * (k - 1) / 2 + (i - 1);
}

void check_vertex(std::size_t ell, std::size_t k, std::size_t i) {
    if (k < 1 || k > ell || i < 1 || i > k)
        throw std::invalid_argument("GzGraphData: vertex index out of range");
}

} // namespace

std::size_t GzGraphData::a_index(std::size_t k, std::size_t i) const {
    check_vertex(ell, k, i);
    return pair_offset(k, i);
}

std::size_t GzGraphData::b_index(std::size_t k, std::size_t i) const {
    check_vertex(ell, k, i);
    return d + pair_offset(k, i);
}

GzGraphData build_gz_data(std::size_t ell) {
    if (ell < 1) throw std::invalid_argument("build_gz_data: rank must be at least 1");
    GzGraphData g;
    g.ell = ell;
    g.d = ell * (ell + 1) / 2;
    const std::size_t n = 2 * g.d;

    auto apos = [&](std::size_t k, std::size_t i) { return pair_offset(k, i); };
    auto bpos = [&](std::size_t k, std::size_t i) { return g.d + pair_offset(k, i); };

    // Relation rows: one per vertex, coupling (k,i) to (k+1,i+1) and (k+1,i);
    // the boundary terms vanish at k = ell.
    IntegerMatrix M(g.d, n);
    for (std::size_t k = 1; k <= ell; ++k)
        for (std::size_t i = 1; i <= k; ++i) {
            const std::size_t r = pair_offset(k, i);
            M(r, apos(k, i)) += 1;
            M(r, bpos(k, i)) += 1;
            if (k < ell) {
                M(r, apos(k + 1, i + 1)) -= 1;
                M(r, bpos(k + 1, i)) -= 1;
            }
        }

    // Exponent rows: one per vertex.
    IntegerMatrix A(g.d, n);
    for (std::size_t k = 1; k <= ell; ++k) {
        for (std::size_t i = 1; i <= k; ++i) {
            const std::size_t r = pair_offset(k, i);
            for (std::size_t j = 1; j < i; ++j) A(r, apos(k - j, i - j)) += 1;
            for (std::size_t j = i; j <= k; ++j) {
                A(r, apos(k, j)) += 1;
                A(r, bpos(k, j)) -= 1;
            }
        }
    }

    g.data = build_gkz_data(A, M);
    for (std::size_t k = 2; k <= ell; ++k)
        for (std::size_t i = 1; i < k; ++i) g.pivot_preference.push_back(bpos(k, i));
    return g;
}

WhittakerSpectrum whittaker_spectrum(std::size_t ell, const std::vector<Complex>& lambda) {
    if (lambda.size() != ell + 1)
        throw std::invalid_argument("whittaker_spectrum: need ell+1 spectral values");
    GzGraphData g = build_gz_data(ell);
    WhittakerSpectrum sp;
    sp.lambda = lambda;
    sp.gamma.gamma.assign(2 * g.d, Complex(0.0, 0.0));
    for (std::size_t k = 1; k <= ell; ++k) {
        Complex partial(0.0, 0.0);
        for (std::size_t i = 1; i <= k; ++i) partial += lambda[i - 1];
        for (std::size_t i = 1; i <= k; ++i) {
            sp.gamma.gamma[g.a_index(k, i)] = lambda[k];  // lambda_{k+1}, zero-based storage
            sp.gamma.gamma[g.b_index(k, i)] = (i == k) ? partial : Complex(0.0, 0.0);
        }
    }
    return sp;
}

RestrictedArguments restrict_arguments(std::size_t ell, const std::vector<double>& x) {
    if (x.size() != ell + 1)
        throw std::invalid_argument("restrict_arguments: need ell+1 coordinates");
    GzGraphData g = build_gz_data(ell);
    std::vector<double> y(2 * g.d, 0.0);
    // Canonical representative: b-block zero, a-block pulled back along the
    // graph so that row (k,i) carries the difference x_{i+ell-k} - x_{i+ell-k+1}.
    for (std::size_t k = 1; k <= ell; ++k)
        for (std::size_t i = 1; i <= k; ++i) {
            const std::size_t j = i + ell - k;  // 1-based position into x
            y[g.a_index(k, i)] = x[j - 1] - x[j];
        }
    RestrictedArguments ra;
    ra.x = x;
    ra.args = ArgumentVector::from_logs(y);
    return ra;
}

EvalResult eval_whittaker_min(std::size_t ell, const std::vector<Complex>& lambda,
                              const std::vector<double>& x, const QuadratureConfig& cfg) {
    GzGraphData g = build_gz_data(ell);
    WhittakerSpectrum sp = whittaker_spectrum(ell, lambda);
    RestrictedArguments ra = restrict_arguments(ell, x);
    EvalResult base = evaluate_gg(g.data, sp.gamma, ra.args, cfg, g.pivot_preference);
    Complex total(0.0, 0.0);
    for (const Complex& l : lambda) total += l;
    Complex pref = std::exp(total * x[ell]);
    return EvalResult{pref * base.value, std::abs(pref) * base.err_estimate};
}

GkzData build_extended_data(std::size_t ell) {
    GzGraphData g = build_gz_data(ell);
    const std::size_t n = 2 * g.d;
    // One extra variable: exponent rows gain a zero column, the lattice gains
    // the unit relation on the new variable.
    IntegerMatrix a_ext(g.d, n + 1);
    for (std::size_t r = 0; r < g.d; ++r)
        for (std::size_t c = 0; c < n; ++c) a_ext(r, c) = g.data.A(r, c);
    IntegerMatrix m_ext(g.d + 1, n + 1);
    for (std::size_t r = 0; r < g.d; ++r)
        for (std::size_t c = 0; c < n; ++c) m_ext(r, c) = g.data.M(r, c);
    m_ext(g.d, n) = 1;
    return build_gkz_data(a_ext, m_ext);
}

GkzData build_max_parabolic_data(std::size_t ell) {
    if (ell < 1) throw std::invalid_argument("build_max_parabolic_data: rank must be at least 1");
    IntegerMatrix a(ell, ell + 1);
    for (std::size_t i = 0; i < ell; ++i) {
        a(i, i) = 1;
        a(i, i + 1) = -1;
    }
    IntegerMatrix m(1, ell + 1);
    for (std::size_t j = 0; j <= ell; ++j) m(0, j) = 1;
    return build_gkz_data(a, m);
}

EvalResult eval_whittaker_max(std::size_t ell, const std::vector<Complex>& lambda, double x,
                              const QuadratureConfig& cfg) {
    if (lambda.size() != ell + 1)
        throw std::invalid_argument("eval_whittaker_max: need ell+1 spectral values");
    GkzData data = build_max_parabolic_data(ell);
    std::vector<double> y(ell + 1, 0.0);
    y[0] = x;  // only the product of the arguments enters the single relation
    return evaluate_gg(data, SpectralVector{lambda}, ArgumentVector::from_logs(y), cfg);
}

Complex bessel_k_oracle(Complex nu, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("bessel_k_oracle: argument must be positive finite");

    // Magnitude of the integrand exp(nu T - z cosh T) peaks where
    // Re nu = z sinh T; expand symmetric-in-structure but independently
    // sized halfwidths until the magnitude has dropped by `target`.
    const double target = std::log(1e18);
    const double tstar = std::asinh(nu.real() / z);
    auto logmag = [&](double t) { return nu.real() * t - z * std::cosh(t); };
    const double peak = logmag(tstar);

    double half[2];
    for (int side = 0; side < 2; ++side) {
        const int dir = side == 0 ? -1 : 1;
        double lo = 0.0, hi = 1.0;
        while (peak - logmag(tstar + dir * hi) < target) {
            hi *= 2.0;
            if (hi > 1e4)
                throw std::domain_error("bessel_k_oracle: integrand failed to decay");
        }
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (peak - logmag(tstar + dir * mid) >= target ? hi : lo) = mid;
        }
        half[side] = hi;
    }

    const int n = 4097;
    const double lo = tstar - half[0], hi = tstar + half[1];
    const double h = (hi - lo) / (n - 1);
    // pairwise summation over the fixed grid
    std::vector<Complex> vals(n);
    for (int k = 0; k < n; ++k) {
        const double t = lo + h * k;
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double re = nu.real() * t - z * std::cosh(t) - peak;
        const double im = nu.imag() * t;
        const double mag = std::exp(re) * w;
        vals[k] = Complex(mag * std::cos(im), mag * std::sin(im));
    }
    std::function<Complex(int, int)> sum = [&](int a, int b) -> Complex {
        if (b - a <= 16) {
            Complex acc(0.0, 0.0);
            for (int i = a; i < b; ++i) acc += vals[i];
            return acc;
        }
        int mid = a + (b - a) / 2;
        return sum(a, mid) + sum(mid, b);
    };
    return 0.5 * h * std::exp(peak) * sum(0, n);
}

} // namespace gkz
