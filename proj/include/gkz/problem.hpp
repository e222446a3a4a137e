#pragma once

#include <string>

#include <json.hpp>

#include "gkz/evaluate.hpp"
#include "gkz/gkz_data.hpp"

namespace gkz {

/// Parsed and validated problem description.
///
/// Schema (unknown keys rejected at every level):
///   {
///     "A": [[int, ...], ...],           // exponent matrix, may be []
///     "lattice": [[int, ...], ...],     // optional explicit relation basis
///     "gamma": [[re, im], ...],         // exactly one of "gamma" / "c"
///     "c": [[re, im], ...],             // affine constraint; gamma is the
///                                       // minimum-norm solution
///     "u": [positive number, ...],
///     "quadrature": {                   // optional, defaults otherwise
///       "points_per_dim": int, "tail_tolerance": num,
///       "max_halfwidth": num, "refinement": int
///     }
///   }
struct ProblemFile {
    GkzData data;
    SpectralVector gamma;
    ArgumentVector u;
    QuadratureConfig quadrature;
    bool gamma_from_constraint = false;
};

/// Throws std::invalid_argument on any schema or consistency violation.
ProblemFile parse_problem_json(const nlohmann::json& j);

/// Reads and parses a file; I/O and JSON syntax problems also surface as
/// std::invalid_argument.
ProblemFile load_problem_file(const std::string& path);

} // namespace gkz
