#pragma once

#include <complex>
#include <vector>

#include "gkz/integer_matrix.hpp"

namespace gkz {

using Complex = std::complex<double>;

/// Spectral parameter vector gamma, one complex entry per torus variable.
struct SpectralVector {
    std::vector<Complex> gamma;

    std::size_t size() const { return gamma.size(); }
    Complex& operator[](std::size_t i) { return gamma[i]; }
    const Complex& operator[](std::size_t i) const { return gamma[i]; }

    /// Plain chamber test: every component has positive real part.  The
    /// evaluator applies a finer test that relaxes delta-pinned variables
    /// to nonnegative real part.
    bool strictly_positive_real() const;
};

/// Positive evaluation point u together with its logarithm y = log u,
/// kept in sync so callers can supply either chart.
struct ArgumentVector {
    std::vector<double> u;
    std::vector<double> y;

    static ArgumentVector from_values(std::vector<double> u);
    static ArgumentVector from_logs(std::vector<double> y);
    std::size_t size() const { return u.size(); }
};

/// Hypergeometric datum: exponent matrix A (m x N, full row rank, columns
/// generating Z^m) and a basis M of the integer relation lattice
/// {l : A l = 0} as rows ((N-m) x N).  Invariant: A * M^T = 0 and the rows
/// of M span the full kernel lattice.
struct GkzData {
    IntegerMatrix A;
    IntegerMatrix M;

    std::size_t num_variables() const { return A.cols() > 0 ? A.cols() : M.cols(); }
    std::size_t num_torus_equations() const { return A.rows(); }
    std::size_t num_relations() const { return M.rows(); }
};

/// Validate A and derive the relation lattice basis by exact kernel
/// computation.  Throws std::invalid_argument when A fails the rank or
/// generation preconditions.
GkzData build_gkz_data(const IntegerMatrix& A);

/// As above but with a caller-supplied lattice basis; the basis must span
/// exactly the kernel lattice of A (checked), not merely a sublattice.
GkzData build_gkz_data(const IntegerMatrix& A, const IntegerMatrix& M);

/// Minimum-norm solution of the affine spectral constraint A gamma = -c
/// together with the homogeneous directions (the relation lattice basis).
struct SpectralAffineSolution {
    SpectralVector gamma0;
    IntegerMatrix directions;
};

SpectralAffineSolution solve_spectral_affine(const IntegerMatrix& A,
                                             const std::vector<Complex>& c);

/// Shift gamma along the relation lattice: gamma_j += sum_a xi_a * M(a, j).
/// Leaves A * gamma (and hence the affine constraint) unchanged.
SpectralVector gauge_shift(const GkzData& data, const SpectralVector& gamma,
                           const std::vector<Complex>& xi);

/// Replace the lattice basis by g * M for unimodular g (|det g| = 1 checked).
GkzData change_lattice_basis(const GkzData& data, const IntegerMatrix& g);

} // namespace gkz
