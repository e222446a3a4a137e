#pragma once

#include <vector>

#include "gkz/gkz_data.hpp"
#include "gkz/reduce.hpp"

namespace gkz {

/// Controls for the mode-centered tensor trapezoid rule in log coordinates.
struct QuadratureConfig {
    int points_per_dim = 96;      ///< grid points per free axis at the coarsest level
    double tail_tolerance = 1e-14; ///< boundary/mode integrand magnitude ratio target
    double max_halfwidth = 60.0;  ///< per-axis cap on box halfwidth (log coordinates)
    int refinement = 1;           ///< grid doublings used for the error estimate
};

struct EvalResult {
    Complex value;
    double err_estimate;  ///< |difference of the two finest grids|, absolute
};

/// Parameters of a reduced exponential integrand
///   jacobian_factor * Int_{R^m} exp( g . T(s) - sum_i w_i e^{T_i(s)} ) ds
/// with T(s) = E s + d from the delta resolution.
struct IntegrandParams {
    std::vector<Complex> exponents;  ///< g, one per variable
    std::vector<double> scales;      ///< w, strictly positive, one per variable
    std::vector<double> offsets;     ///< d, one per variable
};

struct QuadratureBox {
    std::vector<double> lo, hi;  // per free axis, mode strictly inside
};

/// Maximizer of the real part of the log-integrand (damped Newton ascent).
/// Post: max-norm of the gradient at the returned point is below 1e-8
/// relative to the scale of the reduced exponent coefficients.
std::vector<double> find_stationary_point(const ReducedIntegral& red,
                                          const IntegrandParams& params);

/// Axis-aligned box around the mode such that the integrand maximum over
/// every face has dropped below tail_tolerance times the mode value; by
/// concavity of the log-integrand this bounds the whole exterior.
/// Throws std::domain_error when the drop target is not reached within
/// max_halfwidth (the integrand decays too slowly or not at all).
QuadratureBox choose_box(const ReducedIntegral& red, const IntegrandParams& params,
                         const std::vector<double>& mode, const QuadratureConfig& cfg);

/// Tensor-product trapezoid rule on the box with the given per-axis point
/// count; includes the delta jacobian factor.  Summation order is fixed
/// (pairwise over the lexicographic grid), so results are reproducible.
Complex integrate_box(const ReducedIntegral& red, const IntegrandParams& params,
                      const QuadratureBox& box, int points_per_axis);

/// Convergence-chamber test for the delta-resolved integral: spectral
/// components on free variables need strictly positive real part, pinned
/// (pivot) variables only nonnegative.  Throws std::domain_error otherwise.
void check_chamber(const ReducedIntegral& red, const SpectralVector& gamma);

/// Laplace mode of the GG integrand (unit scales, deltas centered at log u).
std::vector<double> find_laplace_mode(const ReducedIntegral& red, const SpectralVector& gamma,
                                      const ArgumentVector& u);

/// GG function: value and grid-refinement error estimate.
EvalResult evaluate_gg(const GkzData& data, const SpectralVector& gamma, const ArgumentVector& u,
                       const QuadratureConfig& cfg = {},
                       const std::vector<std::size_t>& pivot_preference = {});

/// Torus-homogeneous normalization f = (prod_i u_i^{-gamma_i}) Phi, computed
/// from its own integral form (scales u, homogeneous deltas), not by
/// rescaling evaluate_gg.
EvalResult evaluate_gkz(const GkzData& data, const SpectralVector& gamma, const ArgumentVector& u,
                        const QuadratureConfig& cfg = {},
                        const std::vector<std::size_t>& pivot_preference = {});

/// Frozen-grid evaluator: reduction, box and grid are resolved once at a
/// center point, then reused for evaluations at nearby parameters.  This
/// keeps the discretization error a smooth function of the parameters, which
/// is what a finite-difference residual needs; the adaptive entry points
/// above re-plan on every call instead.
class FrozenGgPlan {
public:
    FrozenGgPlan(const GkzData& data, const SpectralVector& gamma, const ArgumentVector& u,
                 const QuadratureConfig& cfg,
                 const std::vector<std::size_t>& pivot_preference = {});

    Complex value(const SpectralVector& gamma, const ArgumentVector& u) const;
    const ReducedIntegral& reduction() const { return red_; }
    int points() const { return points_; }

private:
    ReducedIntegral red_;
    QuadratureBox box_;
    int points_;
};

} // namespace gkz
