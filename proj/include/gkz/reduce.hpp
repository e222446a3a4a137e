#pragma once

#include <cstddef>
#include <vector>

#include "gkz/exact.hpp"
#include "gkz/gkz_data.hpp"

namespace gkz {

/// Delta-resolved form of the constrained exponential integral.
///
/// In log coordinates T = log t the delta constraints read M*T = b (with
/// b = M*y when the deltas compare monomials in t against monomials in u,
/// and b = 0 for the homogeneous normalization).  Picking pivot columns J
/// with M_J invertible pins T_J as an exact affine function of the free
/// coordinates s, leaving an unconstrained integral over the free block:
///
///   T = E*s + D*y,     weight: jacobian_factor = 1 / |det M_J|.
///
/// E and D are exact rationals so structural identities (M*E = 0, M*D = M)
/// hold on the nose; dense double mirrors are kept for the numerics.
struct ReducedIntegral {
    std::vector<std::size_t> pivots;  // delta-pinned variable indices, ascending
    std::vector<std::size_t> frees;   // remaining variable indices, ascending
    std::vector<std::vector<Rat>> E;  // N x num_free()
    std::vector<std::vector<Rat>> D;  // N x N, nonzero only in pivot rows
    Rat jacobian_factor = 1;

    std::vector<double> E_dbl;        // row-major N x num_free()
    std::vector<double> D_dbl;        // row-major N x N
    double factor_dbl = 1.0;

    std::size_t num_vars() const { return E.size(); }
    std::size_t num_free() const { return frees.size(); }

    /// Offset vector d = D*y for deltas centered at log-arguments y.
    std::vector<double> offsets_for(const std::vector<double>& y) const;
};

/// Choose an invertible pivot block of the lattice basis and build the
/// affine elimination map.  Columns listed in `preferred` are tried first
/// (in the given order), then the remaining columns in natural order; the
/// selection is greedy, so the result is deterministic for a fixed input.
ReducedIntegral resolve_deltas(const GkzData& data,
                               const std::vector<std::size_t>& preferred = {});

/// Overload for call sites that carry the evaluation point; the reduction
/// itself does not depend on u (only offsets_for does).
ReducedIntegral resolve_deltas(const GkzData& data, const ArgumentVector& u,
                               const std::vector<std::size_t>& preferred = {});

} // namespace gkz
