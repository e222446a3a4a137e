#include "gkz/integer_matrix.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gkz {

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    IntegerMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.a_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
        if (r.size() != m.cols_)
            throw std::invalid_argument("IntegerMatrix: ragged row lengths");
        m.a_.insert(m.a_.end(), r.begin(), r.end());
    }
    return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Int> IntegerMatrix::row(std::size_t i) const {
    return std::vector<Int>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

bool IntegerMatrix::row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) return false;
    return true;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntegerMatrix: product shape mismatch");
    IntegerMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = (*this)(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += aik * rhs(k, j);
        }
    return p;
}

std::vector<Int> IntegerMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("IntegerMatrix: apply length mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void negate_row(IntegerMatrix& m, std::size_t i) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
}

// row_i -= q * row_j
void add_multiple(IntegerMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) -= q * m(j, c);
}

// Floor division, needed so reduction lands entries in [0, pivot).
Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

IntegerMatrix hermite_normal_form(const IntegerMatrix& A, IntegerMatrix* transform) {
    IntegerMatrix h = A;
    IntegerMatrix u = IntegerMatrix::identity(A.rows());
    const std::size_t rows = h.rows(), cols = h.cols();

    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // Gcd-eliminate column `col` below row r by repeatedly reducing with
        // the smallest-magnitude nonzero entry.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h(i, col) == 0) continue;
                if (best == rows || abs(h(i, col)) < abs(h(best, col))) best = i;
            }
            if (best == rows) break; // column clear below r
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, col) == 0) continue;
                Int q = h(i, col) / h(r, col); // truncating is fine mid-loop
                add_multiple(h, i, r, q);
                add_multiple(u, i, r, q);
                if (h(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, col) == 0) continue; // no pivot in this column
        if (h(r, col) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, col), h(r, col));
            add_multiple(h, i, r, q);
            add_multiple(u, i, r, q);
        }
        ++r;
    }
    if (transform) *transform = std::move(u);
    return h;
}

IntegerMatrix integer_kernel_basis(const IntegerMatrix& A) {
    // Rows u of the unimodular transform with u * A^T = 0 span the kernel
    // lattice of A; that lattice is saturated because it is the exact kernel
    // of an integer-linear map.
    IntegerMatrix u;
    IntegerMatrix h = hermite_normal_form(A.transposed(), &u);
    std::vector<std::vector<Int>> ker;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (h.row_is_zero(i)) ker.push_back(u.row(i));
    if (ker.empty()) return IntegerMatrix(0, A.cols());
    return hermite_normal_form(IntegerMatrix::from_rows(ker));
}

bool check_orthogonality(const IntegerMatrix& A, const IntegerMatrix& M) {
    if (A.cols() != M.cols()) return false;
    IntegerMatrix p = A * M.transposed();
    for (std::size_t i = 0; i < p.rows(); ++i)
        if (!p.row_is_zero(i)) return false;
    return true;
}

bool is_generating(const IntegerMatrix& A) {
    IntegerMatrix h = hermite_normal_form(A.transposed());
    // Columns of A generate Z^m exactly when the Hermite form of A^T has an
    // m x m identity block on top.
    const std::size_t m = A.rows();
    if (h.rows() < m) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (h(i, j) != Int(i == j ? 1 : 0)) return false;
    return true;
}

IntegerMatrix random_unimodular(std::size_t n, std::uint64_t seed) {
    IntegerMatrix m = IntegerMatrix::identity(n);
    if (n <= 1) return m;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_row(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> pick_coef(-2, 2);
    std::uniform_int_distribution<int> pick_kind(0, 3);
    const std::size_t ops = 3 * n;
    for (std::size_t k = 0; k < ops; ++k) {
        int i = pick_row(rng), j = pick_row(rng);
        switch (pick_kind(rng)) {
            case 0:
                swap_rows(m, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                break;
            case 1:
                negate_row(m, static_cast<std::size_t>(i));
                break;
            default: {
                int c = pick_coef(rng);
                if (i != j && c != 0)
                    add_multiple(m, static_cast<std::size_t>(i), static_cast<std::size_t>(j), Int(-c));
                break;
            }
        }
    }
    return m;
}

Int determinant(const IntegerMatrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; all divisions are exact.
    IntegerMatrix m = A;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::size_t rank(const IntegerMatrix& A) {
    IntegerMatrix h = hermite_normal_form(A);
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!h.row_is_zero(i)) ++r;
    return r;
}

bool lattice_contains(const IntegerMatrix& basis, const std::vector<Int>& v) {
    if (v.size() != basis.cols())
        throw std::invalid_argument("lattice_contains: length mismatch");
    IntegerMatrix h = hermite_normal_form(basis);
    std::vector<Int> w = v;
    // Echelon pivots determine the candidate coefficients greedily; v is in
    // the lattice iff every division is exact and the remainder vanishes.
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (h.row_is_zero(i)) break;
        std::size_t pc = 0;
        while (h(i, pc) == 0) ++pc;
        if (w[pc] % h(i, pc) != 0) return false;
        Int q = w[pc] / h(i, pc);
        if (q != 0)
            for (std::size_t j = pc; j < h.cols(); ++j) w[j] -= q * h(i, j);
    }
    for (const Int& x : w)
        if (x != 0) return false;
    return true;
}

bool same_row_lattice(const IntegerMatrix& B1, const IntegerMatrix& B2) {
    if (B1.cols() != B2.cols()) return false;
    IntegerMatrix h1 = hermite_normal_form(B1);
    IntegerMatrix h2 = hermite_normal_form(B2);
    std::vector<std::vector<Int>> r1, r2;
    for (std::size_t i = 0; i < h1.rows(); ++i)
        if (!h1.row_is_zero(i)) r1.push_back(h1.row(i));
    for (std::size_t i = 0; i < h2.rows(); ++i)
        if (!h2.row_is_zero(i)) r2.push_back(h2.row(i));
    if (r1.size() != r2.size()) return false;
    for (std::size_t i = 0; i < r1.size(); ++i)
        if (r1[i] != r2[i]) return false;
    return true;
}

} // namespace gkz
