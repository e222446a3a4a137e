#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gkz/exact.hpp"

namespace gkz {

/// Dense matrix over arbitrary-precision integers, row-major storage.
/// Sizes stay small (tens of rows/columns), so no effort is spent on
/// sparsity; correctness of the exact reductions is the point.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    /// Build from nested initializer-style data; all rows must have equal length.
    static IntegerMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    bool row_is_zero(std::size_t i) const;

    IntegerMatrix transposed() const;
    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    bool operator==(const IntegerMatrix& rhs) const = default;

    /// Matrix-vector product A*v (v has cols() entries).
    std::vector<Int> apply(const std::vector<Int>& v) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

/// Row-style Hermite normal form.
///
/// Returns H obtained from A by unimodular row operations: pivots strictly
/// to the right as the row index grows, pivot entries positive, entries
/// above a pivot reduced into [0, pivot), zero rows collected at the bottom.
/// If `transform` is non-null it receives a unimodular U with U*A = H.
IntegerMatrix hermite_normal_form(const IntegerMatrix& A, IntegerMatrix* transform = nullptr);

/// Basis of the integer kernel {l : A*l = 0} as rows of a matrix in Hermite
/// normal form.  The basis spans the full (saturated) kernel lattice, so no
/// kernel vector is a proper multiple of a lattice element outside the span.
/// Result has A.cols() columns and A.cols() - rank(A) rows.
IntegerMatrix integer_kernel_basis(const IntegerMatrix& A);

/// True when every row of M is orthogonal to every row of A under the
/// standard pairing, i.e. A * M^T = 0 exactly.
bool check_orthogonality(const IntegerMatrix& A, const IntegerMatrix& M);

/// True when the columns of A generate all of Z^rows(A) over the integers
/// (equivalently, the Hermite form of A^T starts with an identity block).
bool is_generating(const IntegerMatrix& A);

/// Deterministic pseudo-random unimodular n x n matrix (|det| = 1), built as
/// a product of elementary row operations drawn from a seeded generator.
IntegerMatrix random_unimodular(std::size_t n, std::uint64_t seed);

/// Exact determinant (Bareiss fraction-free elimination); A must be square.
Int determinant(const IntegerMatrix& A);

/// Rank over Q (equals rank over Z for free modules).
std::size_t rank(const IntegerMatrix& A);

/// Membership test: is v in the row lattice spanned by basis?  The basis may
/// be in any form; it is brought to Hermite form internally.
bool lattice_contains(const IntegerMatrix& basis, const std::vector<Int>& v);

/// True when the two row lattices coincide (Hermite forms match after
/// dropping zero rows).
bool same_row_lattice(const IntegerMatrix& B1, const IntegerMatrix& B2);

} // namespace gkz
