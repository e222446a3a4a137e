#pragma once

#include <string>
#include <vector>

#include "gkz/evaluate.hpp"
#include "gkz/gkz_data.hpp"

namespace gkz {

/// One verified equation instance.  `relative_residual` is the absolute
/// residual divided by the largest magnitude among the equation's individual
/// terms; when every term vanishes identically the relative residual is
/// reported as zero.
struct ResidualReport {
    std::string equation_id;          // lattice_pde | torus_pde | dual_difference |
                                      // spectral_linear | contiguity | reduced_ode
    std::vector<double> parameters;   // defining indices (row / variable), plus x for the ODE
    double absolute_residual = 0.0;
    double relative_residual = 0.0;
    double step = 0.0;                // finite-difference step; 0 for pure difference equations

    std::string to_json() const;
};

/// Two-sided derivative equation attached to lattice row `alpha`:
/// the product of (-d/du_i + gamma_i/u_i) over negative entries applied to
/// the GG function equals the corresponding product over positive entries.
/// Derivatives are nested central differences with relative step h*u_i.
ResidualReport residual_lattice_pde(const GkzData& data, const SpectralVector& gamma,
                                    const ArgumentVector& u, std::size_t alpha, double h,
                                    const QuadratureConfig& cfg = {});

/// Torus scaling equation for exponent row s: sum_i A(s,i) u_i dPhi/du_i = 0.
ResidualReport residual_torus_pde(const GkzData& data, const SpectralVector& gamma,
                                  const ArgumentVector& u, std::size_t s, double h,
                                  const QuadratureConfig& cfg = {});

/// Difference form of the torus equation: sum_i A(s,i) (Phi(gamma+e_i) - gamma_i Phi) = 0.
ResidualReport residual_dual_difference(const GkzData& data, const SpectralVector& gamma,
                                        const ArgumentVector& u, std::size_t s,
                                        const QuadratureConfig& cfg = {});

/// Spectral shift equation for lattice row alpha:
/// sum_i M(alpha,i) (dPhi/dgamma_i - log(u_i) Phi) = 0, with central
/// differences of absolute step h along the real gamma directions.
ResidualReport residual_spectral_linear(const GkzData& data, const SpectralVector& gamma,
                                        const ArgumentVector& u, std::size_t alpha, double h,
                                        const QuadratureConfig& cfg = {});

/// Contiguity relation for variable i: (-u_i d/du_i + gamma_i) Phi_gamma = Phi_{gamma+e_i}.
ResidualReport residual_contiguity(const GkzData& data, const SpectralVector& gamma,
                                   const ArgumentVector& u, std::size_t i, double h,
                                   const QuadratureConfig& cfg = {});

/// Scalar ordinary differential equation satisfied by the one-relation
/// (rank ell) parabolic profile F(x):
///   prod_{i=1..ell+1} (-d/dx + lambda_i) F = e^x F,
/// with nested central differences of absolute step h in x.
ResidualReport residual_reduced_ode(std::size_t ell, const std::vector<Complex>& lambda,
                                    double x, double h, const QuadratureConfig& cfg = {});

/// Reports for every equation family available on the given datum: one
/// lattice_pde and one spectral_linear per lattice row, one torus_pde and
/// one dual_difference per exponent row, one contiguity per variable.
std::vector<ResidualReport> verify_all(const GkzData& data, const SpectralVector& gamma,
                                       const ArgumentVector& u, double h,
                                       const QuadratureConfig& cfg = {});

} // namespace gkz
