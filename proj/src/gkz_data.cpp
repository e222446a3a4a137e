#include "gkz/gkz_data.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace gkz {

bool SpectralVector::strictly_positive_real() const {
    for (const Complex& g : gamma)
        if (!(g.real() > 0.0)) return false;
    return true;
}

ArgumentVector ArgumentVector::from_values(std::vector<double> u) {
    ArgumentVector a;
    a.y.reserve(u.size());
    for (double v : u) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("ArgumentVector: components must be positive finite");
        a.y.push_back(std::log(v));
    }
    a.u = std::move(u);
    return a;
}

ArgumentVector ArgumentVector::from_logs(std::vector<double> y) {
    ArgumentVector a;
    a.u.reserve(y.size());
    for (double v : y) {
        if (!std::isfinite(v))
            throw std::invalid_argument("ArgumentVector: log coordinates must be finite");
        a.u.push_back(std::exp(v));
    }
    a.y = std::move(y);
    return a;
}

namespace {

void validate_exponent_matrix(const IntegerMatrix& A) {
    if (A.rows() > 0 && A.cols() == 0)
        throw std::invalid_argument("build_gkz_data: exponent matrix has no columns");
    if (rank(A) != A.rows())
        throw std::invalid_argument("build_gkz_data: exponent matrix must have full row rank");
    if (!is_generating(A))
        throw std::invalid_argument(
            "build_gkz_data: columns of the exponent matrix must generate the full integer lattice");
}

} // namespace

GkzData build_gkz_data(const IntegerMatrix& A) {
    validate_exponent_matrix(A);
    return GkzData{A, integer_kernel_basis(A)};
}

GkzData build_gkz_data(const IntegerMatrix& A, const IntegerMatrix& M) {
    validate_exponent_matrix(A);
    if (M.cols() != A.cols())
        throw std::invalid_argument("build_gkz_data: lattice basis column count mismatch");
    if (!check_orthogonality(A, M))
        throw std::invalid_argument("build_gkz_data: lattice basis not orthogonal to exponent rows");
    IntegerMatrix kernel = integer_kernel_basis(A);
    if (M.rows() != kernel.rows() || !same_row_lattice(M, kernel))
        throw std::invalid_argument(
            "build_gkz_data: lattice basis must span the full relation lattice (primitive basis)");
    return GkzData{A, M};
}

SpectralAffineSolution solve_spectral_affine(const IntegerMatrix& A,
                                             const std::vector<Complex>& c) {
    if (c.size() != A.rows())
        throw std::invalid_argument("solve_spectral_affine: constraint length mismatch");
    if (rank(A) != A.rows())
        throw std::invalid_argument("solve_spectral_affine: exponent matrix must have full row rank");

    const std::size_t m = A.rows(), n = A.cols();
    Eigen::MatrixXd a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = to_double(A(i, j));

    // Minimum-norm solution gamma0 = A^T (A A^T)^{-1} (-c), computed for the
    // real and imaginary parts separately since A is real.
    Eigen::MatrixXd gram = a * a.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd cr(m), ci(m);
    for (std::size_t i = 0; i < m; ++i) {
        cr(i) = -c[i].real();
        ci(i) = -c[i].imag();
    }
    Eigen::VectorXd gr = a.transpose() * ldlt.solve(cr);
    Eigen::VectorXd gi = a.transpose() * ldlt.solve(ci);

    SpectralAffineSolution sol;
    sol.gamma0.gamma.resize(n);
    for (std::size_t j = 0; j < n; ++j) sol.gamma0.gamma[j] = Complex(gr(j), gi(j));
    sol.directions = integer_kernel_basis(A);

    // The constraint is always consistent for full-row-rank A; verify the
    // floating solve stayed well conditioned.
    double resid = m == 0 ? 0.0
                          : ((a * gr) - cr).cwiseAbs().maxCoeff() +
                                ((a * gi) - ci).cwiseAbs().maxCoeff();
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(c[i]));
    if (!(resid <= 1e-12 * scale + 1e-12))
        throw std::domain_error("solve_spectral_affine: ill-conditioned constraint solve");
    return sol;
}

SpectralVector gauge_shift(const GkzData& data, const SpectralVector& gamma,
                           const std::vector<Complex>& xi) {
    if (gamma.size() != data.num_variables())
        throw std::invalid_argument("gauge_shift: spectral vector length mismatch");
    if (xi.size() != data.M.rows())
        throw std::invalid_argument("gauge_shift: shift coefficient length mismatch");
    SpectralVector out = gamma;
    for (std::size_t a = 0; a < data.M.rows(); ++a)
        for (std::size_t j = 0; j < data.M.cols(); ++j)
            out.gamma[j] += xi[a] * to_double(data.M(a, j));
    return out;
}

GkzData change_lattice_basis(const GkzData& data, const IntegerMatrix& g) {
    if (g.rows() != data.M.rows() || g.cols() != data.M.rows())
        throw std::invalid_argument("change_lattice_basis: transform shape mismatch");
    Int d = determinant(g);
    if (d != 1 && d != -1)
        throw std::invalid_argument("change_lattice_basis: transform must be unimodular");
    return GkzData{data.A, g * data.M};
}

} // namespace gkz
