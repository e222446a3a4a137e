#include "gkz/reduce.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkz {

std::vector<double> ReducedIntegral::offsets_for(const std::vector<double>& y) const {
    const std::size_t n = num_vars();
    if (y.size() != n)
        throw std::invalid_argument("ReducedIntegral: offset vector length mismatch");
    std::vector<double> d(n, 0.0);
    for (std::size_t p : pivots) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += D_dbl[p * n + j] * y[j];
        d[p] = acc;
    }
    return d;
}

namespace {

// Greedy pivot-column selection: walk the candidate columns, keep a column
// when it is independent of the ones already kept (exact rational test).
std::vector<std::size_t> select_pivots(const IntegerMatrix& M,
                                       const std::vector<std::size_t>& candidates) {
    const std::size_t rho = M.rows(), n = M.cols();
    std::vector<std::vector<Rat>> w(rho, std::vector<Rat>(n));
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(M(i, j));

    std::vector<bool> row_used(rho, false);
    std::vector<std::size_t> chosen;
    for (std::size_t c : candidates) {
        if (chosen.size() == rho) break;
        std::size_t r = rho;
        for (std::size_t i = 0; i < rho; ++i)
            if (!row_used[i] && w[i][c] != 0) { r = i; break; }
        if (r == rho) continue;
        row_used[r] = true;
        chosen.push_back(c);
        // Clear column c from every other row.
        for (std::size_t i = 0; i < rho; ++i) {
            if (i == r || w[i][c] == 0) continue;
            Rat q = w[i][c] / w[r][c];
            for (std::size_t j = 0; j < n; ++j) w[i][j] -= q * w[r][j];
        }
    }
    if (chosen.size() != rho)
        throw std::invalid_argument("resolve_deltas: lattice basis is not full row rank");
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Solve M_J X = M by Gauss-Jordan over the rationals; M_J is invertible by
// construction of the pivot set.
std::vector<std::vector<Rat>> solve_pivot_block(const IntegerMatrix& M,
                                                const std::vector<std::size_t>& pivots) {
    const std::size_t rho = M.rows(), n = M.cols();
    // augmented system [M_J | M]
    std::vector<std::vector<Rat>> aug(rho, std::vector<Rat>(rho + n));
    for (std::size_t i = 0; i < rho; ++i) {
        for (std::size_t k = 0; k < rho; ++k) aug[i][k] = Rat(M(i, pivots[k]));
        for (std::size_t j = 0; j < n; ++j) aug[i][rho + j] = Rat(M(i, j));
    }
    for (std::size_t k = 0; k < rho; ++k) {
        std::size_t r = k;
        while (r < rho && aug[r][k] == 0) ++r;
        if (r == rho)
            throw std::logic_error("resolve_deltas: pivot block unexpectedly singular");
        std::swap(aug[k], aug[r]);
        Rat p = aug[k][k];
        for (std::size_t j = k; j < rho + n; ++j) aug[k][j] /= p;
        for (std::size_t i = 0; i < rho; ++i) {
            if (i == k || aug[i][k] == 0) continue;
            Rat q = aug[i][k];
            for (std::size_t j = k; j < rho + n; ++j) aug[i][j] -= q * aug[k][j];
        }
    }
    std::vector<std::vector<Rat>> s(rho, std::vector<Rat>(n));
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = aug[i][rho + j];
    return s;
}

} // namespace

ReducedIntegral resolve_deltas(const GkzData& data, const std::vector<std::size_t>& preferred) {
    const std::size_t n = data.num_variables();
    const std::size_t rho = data.M.rows();
    if (data.M.cols() != n && rho > 0)
        throw std::invalid_argument("resolve_deltas: lattice basis column count mismatch");

    // Candidate order: preferred columns first, then the rest ascending.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> candidates;
    candidates.reserve(n);
    for (std::size_t c : preferred) {
        if (c >= n)
            throw std::invalid_argument("resolve_deltas: preferred pivot index out of range");
        if (!seen[c]) {
            seen[c] = true;
            candidates.push_back(c);
        }
    }
    for (std::size_t c = 0; c < n; ++c)
        if (!seen[c]) candidates.push_back(c);

    ReducedIntegral red;
    red.pivots = rho == 0 ? std::vector<std::size_t>{} : select_pivots(data.M, candidates);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : red.pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) red.frees.push_back(j);

    const std::size_t mfree = red.frees.size();
    red.E.assign(n, std::vector<Rat>(mfree, Rat(0)));
    red.D.assign(n, std::vector<Rat>(n, Rat(0)));

    if (rho > 0) {
        std::vector<std::vector<Rat>> s = solve_pivot_block(data.M, red.pivots); // rho x n
        for (std::size_t k = 0; k < rho; ++k) {
            const std::size_t p = red.pivots[k];
            for (std::size_t j = 0; j < n; ++j) red.D[p][j] = s[k][j];
            for (std::size_t jf = 0; jf < mfree; ++jf) red.E[p][jf] = -s[k][red.frees[jf]];
        }
        IntegerMatrix mj(rho, rho);
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t k = 0; k < rho; ++k) mj(i, k) = data.M(i, red.pivots[k]);
        Int det = determinant(mj);
        red.jacobian_factor = Rat(1) / Rat(abs(det));
    }
    for (std::size_t jf = 0; jf < mfree; ++jf) red.E[red.frees[jf]][jf] = Rat(1);

    // Structural identities that certify the elimination: M*E = 0, M*D = M.
    for (std::size_t a = 0; a < rho; ++a) {
        for (std::size_t jf = 0; jf < mfree; ++jf) {
            Rat acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc += Rat(data.M(a, i)) * red.E[i][jf];
            if (acc != 0) throw std::logic_error("resolve_deltas: M*E != 0");
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rat acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc += Rat(data.M(a, i)) * red.D[i][j];
            if (acc != Rat(data.M(a, j))) throw std::logic_error("resolve_deltas: M*D != M");
        }
    }

    red.E_dbl.resize(n * mfree);
    red.D_dbl.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jf = 0; jf < mfree; ++jf) red.E_dbl[i * mfree + jf] = to_double(red.E[i][jf]);
        for (std::size_t j = 0; j < n; ++j) red.D_dbl[i * n + j] = to_double(red.D[i][j]);
    }
    red.factor_dbl = to_double(red.jacobian_factor);
    return red;
}

ReducedIntegral resolve_deltas(const GkzData& data, const ArgumentVector& u,
                               const std::vector<std::size_t>& preferred) {
    if (u.size() != data.num_variables())
        throw std::invalid_argument("resolve_deltas: argument vector length mismatch");
    return resolve_deltas(data, preferred);
}

} // namespace gkz
