#pragma once

#include <cstddef>

#include "brcsmud/linalg.hpp"
#include "brcsmud/model.hpp"

namespace brcsmud {

/// The linear observation model y = T x + w. Under-determined systems
/// (rows < cols) are allowed; that is the case the detector is built for.
class LinearSystem {
public:
    LinearSystem(Matrix matrix, Vector observation);

    const Matrix& matrix() const { return matrix_; }
    const Vector& observation() const { return observation_; }
    std::size_t observations() const { return matrix_.rows(); }  // M
    std::size_t unknowns() const { return matrix_.cols(); }      // K

private:
    Matrix matrix_;
    Vector observation_;
};

/// Which symbols carry the nonnegative search penalty after augmentation.
/// PenalizeNonzero taxes active symbols by theta; PenalizeZero (used when
/// theta is negative) taxes zeros by |theta| instead, which shifts every
/// candidate's objective by the same constant and keeps the per-level metric
/// increments nonnegative for the tree search.
enum class PenaltyMode { PenalizeNonzero, PenalizeZero };

/// The over-determined rewrite of an arbitrary system: the matrix gains an
/// identity block, the observation gains K zeros, and the support penalty
/// becomes theta = lambda - 1. For unit-modulus alphabets the augmented
/// residual-plus-penalty equals the original objective exactly.
class AugmentedSystem {
public:
    const Matrix& matrix() const { return matrix_aug_; }        // [T; I_K]
    const Vector& observation() const { return observation_aug_; }  // [y; 0_K]
    double theta() const { return theta_; }
    PenaltyMode penalty_mode() const { return mode_; }

    std::size_t unknowns() const { return matrix_aug_.cols(); }

    double per_symbol_penalty(double symbol) const;

    friend AugmentedSystem augment(const LinearSystem& system, const DetectionParams& params);

private:
    AugmentedSystem(Matrix matrix_aug, Vector observation_aug, double theta);

    Matrix matrix_aug_;
    Vector observation_aug_;
    double theta_;
    PenaltyMode mode_;
};

/// Number of nonzero entries.
std::size_t l0_norm(std::span<const double> x);

/// ||y - T x||^2 + lambda * ||x||_0
double objective(const LinearSystem& system, const SymbolVector& x, double lambda);

AugmentedSystem augment(const LinearSystem& system, const DetectionParams& params);

/// The nonnegative per-symbol search penalty in the given mode. Summed over
/// a candidate it reproduces the augmented support penalty up to a constant
/// that does not depend on the candidate.
double per_symbol_penalty(PenaltyMode mode, double theta, double symbol);

}  // namespace brcsmud
