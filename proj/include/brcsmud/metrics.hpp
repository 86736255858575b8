#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "brcsmud/model.hpp"

namespace brcsmud {

/// Per-symbol activity detection outcomes. Mergeable by addition.
struct ConfusionCounts {
    std::uint64_t true_active = 0;
    std::uint64_t false_active = 0;
    std::uint64_t false_inactive = 0;
    std::uint64_t true_inactive = 0;

    std::uint64_t total() const {
        return true_active + false_active + false_inactive + true_inactive;
    }
    ConfusionCounts& operator+=(const ConfusionCounts& other);
};

/// What one detected frame contributes to a sweep point.
struct TrialScore {
    ConfusionCounts confusion;
    std::uint64_t symbol_errors = 0;  // mismatches over the augmented alphabet
    std::uint64_t symbols = 0;        // symbols scored in this trial
    std::uint64_t nodes_visited = 0;  // search effort, zero for solvers without one
};

/// Pooled rates for one sweep cell. tar and far are empty when their
/// denominator is zero (no truly active, resp. truly inactive, symbols were
/// pooled) rather than being reported as a fabricated zero.
struct RatePoint {
    double snr_db = 0.0;
    double omega = 0.0;
    std::optional<double> tar;  // TA / (TA + FI)
    std::optional<double> far;  // FA / (FA + TI)
    double gse = 0.0;           // pooled symbol error fraction
    std::uint64_t trials = 0;
    ConfusionCounts confusion;
    double mean_nodes_visited = 0.0;
};

/// Classify each position by activity only; the symbol value is ignored
/// beyond zero versus nonzero.
ConfusionCounts score_confusion(const SymbolVector& x_true, const SymbolVector& x_hat);

/// Fraction of positions where the detected symbol differs from the true
/// one over the augmented alphabet, so activity and data errors both count.
double gse(const SymbolVector& x_true, const SymbolVector& x_hat);

/// Pool trial scores: counts are summed first, rates formed from the sums.
RatePoint aggregate(std::span<const TrialScore> trials, double snr_db, double omega);

}  // namespace brcsmud
