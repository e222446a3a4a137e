#pragma once

#include <vector>

#include "gkz/evaluate.hpp"
#include "gkz/gkz_data.hpp"

namespace gkz {

/// Hypergeometric datum attached to the rank-ell Gelfand-Zetlin graph:
/// one pair of variables a_{k,i}, b_{k,i} per vertex (1 <= i <= k <= ell),
/// d = ell(ell+1)/2 pairs, N = 2d variables in total.  Variables are laid
/// out a-block first, then b-block, each in (k,i) lexicographic order.
struct GzGraphData {
    std::size_t ell = 0;
    std::size_t d = 0;
    GkzData data;

    /// Delta resolution works at the b_{k,i} with i < k first; those are the
    /// variables whose spectral components vanish under the Whittaker
    /// specialization, so pinning them keeps the free exponents positive.
    std::vector<std::size_t> pivot_preference;

    std::size_t a_index(std::size_t k, std::size_t i) const;
    std::size_t b_index(std::size_t k, std::size_t i) const;
};

/// Spectral vector of the GZ datum specialized to a principal series
/// parameter lambda (ell+1 components): a_{k,i} carries lambda_{k+1},
/// b_{k,k} carries lambda_1 + ... + lambda_k, b_{k,i} with i < k carries 0.
struct WhittakerSpectrum {
    std::vector<Complex> lambda;
    SpectralVector gamma;
};

/// Canonical representative of the torus argument on the restricted
/// subvariety: the b-block log-arguments are set to zero and the a-block
/// ones are determined by consecutive differences of x.
struct RestrictedArguments {
    std::vector<double> x;  // ell+1 components
    ArgumentVector args;    // length 2d
};

GzGraphData build_gz_data(std::size_t ell);
WhittakerSpectrum whittaker_spectrum(std::size_t ell, const std::vector<Complex>& lambda);
RestrictedArguments restrict_arguments(std::size_t ell, const std::vector<double>& x);

/// Minimal-parabolic Whittaker function of rank ell at argument e^x:
/// the exponential prefactor times the GG value on the restricted GZ datum.
EvalResult eval_whittaker_min(std::size_t ell, const std::vector<Complex>& lambda,
                              const std::vector<double>& x, const QuadratureConfig& cfg = {});

/// One-variable extension of the GZ datum: one extra torus variable with its
/// own unit relation; the GG function factorizes into an exponential factor
/// in the extra variable times the base GG function.
GkzData build_extended_data(std::size_t ell);

/// Rank-ell datum with a single relation (1,...,1) and difference exponent
/// rows e_i - e_{i+1}; its GG profile satisfies an order ell+1 ODE.
GkzData build_max_parabolic_data(std::size_t ell);

/// Maximal-parabolic Whittaker profile at scalar argument x: GG value at
/// u = (e^x, 1, ..., 1) with spectral vector lambda.
EvalResult eval_whittaker_max(std::size_t ell, const std::vector<Complex>& lambda, double x,
                              const QuadratureConfig& cfg = {});

/// Modified Bessel function of the second kind via its own mode-centered
/// trapezoid discretization of (1/2) Int exp(nu T - z cosh T) dT.  Entirely
/// independent of the GG evaluator; serves as the cross-check oracle.
Complex bessel_k_oracle(Complex nu, double z);

} // namespace gkz
