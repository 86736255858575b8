#pragma once

#include <cstdint>

#include "brcsmud/linsys.hpp"

namespace brcsmud {

/// Result of reducing an augmented system to a square triangular search
/// problem: the augmented residual splits as ||y' - T' x||^2 =
/// ||y_tilde - R x||^2 + residual_const for every candidate x.
struct TriangularizedSystem {
    Matrix r;              // K x K upper triangular, positive diagonal
    Vector y_tilde;        // Q^T y'
    double residual_const; // part of the residual orthogonal to the column span
    double theta;
    PenaltyMode penalty_mode;
};

struct DetectionResult {
    SymbolVector x_hat;
    double objective_value;       // residual-plus-support-penalty of x_hat
    std::uint64_t nodes_visited;  // metric evaluations spent by the search
};

/// Skinny QR of the augmented matrix. The identity block guarantees full
/// column rank, so a non-positive diagonal is an internal error.
TriangularizedSystem factorize(const AugmentedSystem& aug);

/// Depth-first best-first tree search for the exact minimizer over A0^K.
///
/// Levels run from the last unknown down to the first, following the
/// triangular structure. At each level the candidate symbols are visited in
/// ascending order of their metric increment (squared residual term plus the
/// per-symbol penalty), the radius starts unbounded and shrinks to each new
/// incumbent, and a branch is cut as soon as its partial metric exceeds the
/// incumbent. Exact metric ties are resolved toward the candidate that is
/// lexicographically smallest in the alphabet's enumeration order, matching
/// exhaustive_detect.
///
/// The reported objective_value is recomputed from the original system, not
/// from the search-space metric.
DetectionResult sphere_detect(const TriangularizedSystem& tri, const AugmentedAlphabet& alphabet,
                              double lambda, const LinearSystem& system);

/// Testing oracle: enumerate every candidate in lexicographic enumeration
/// order and keep the first one attaining the minimum objective. Guarded to
/// small |A0|^K.
DetectionResult exhaustive_detect(const LinearSystem& system, const DetectionParams& params);

/// The full pipeline: augment, factorize, sphere search.
DetectionResult detect(const LinearSystem& system, const DetectionParams& params);

}  // namespace brcsmud
