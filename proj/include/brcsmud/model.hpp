#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "brcsmud/linalg.hpp"

namespace brcsmud {

/// The symbol set used by the detector: a finite modulation alphabet A plus
/// the zero symbol that models an inactive source. All data symbols must be
/// unit modulus, which for a real alphabet means they come from {-1, +1}.
///
/// Candidate enumeration order is fixed: zero first, then A ascending. This
/// order defines the deterministic tie-break used by the detectors.
class AugmentedAlphabet {
public:
    /// data_symbols = A. Must be nonempty, distinct, nonzero and unit modulus.
    explicit AugmentedAlphabet(std::vector<double> data_symbols);

    static AugmentedAlphabet bpsk() { return AugmentedAlphabet({-1.0, +1.0}); }

    /// A, ascending.
    std::span<const double> data_symbols() const {
        return std::span<const double>(enumeration_).subspan(1);
    }
    /// A0 in enumeration order: [0, A ascending].
    std::span<const double> enumeration() const { return enumeration_; }

    /// |A|
    std::size_t size() const { return enumeration_.size() - 1; }

    bool contains_data(double symbol) const;       // symbol in A
    bool contains_augmented(double symbol) const;  // symbol in A0

    /// Position of a symbol in the enumeration order; throws if absent.
    std::size_t rank(double symbol) const;

private:
    std::vector<double> enumeration_;  // [0, A ascending]
};

/// A length-K vector whose entries were checked against A0 at construction.
class SymbolVector {
public:
    SymbolVector() = default;
    SymbolVector(const AugmentedAlphabet& alphabet, Vector values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    bool operator==(const SymbolVector&) const = default;

private:
    Vector values_;
};

/// Everything the detector needs to know a priori: the activity probability,
/// the noise variance, the false-active/false-inactive cost ratio, and the
/// alphabet. Immutable after construction.
class DetectionParams {
public:
    /// activity_prob in (0,1); noise_var >= 0 (zero means the noiseless
    /// limit, where the support penalty vanishes); bayes_factor > 0.
    DetectionParams(double activity_prob, double noise_var, double bayes_factor,
                    AugmentedAlphabet alphabet);

    double activity_prob() const { return activity_prob_; }
    double noise_var() const { return noise_var_; }
    double bayes_factor() const { return bayes_factor_; }
    const AugmentedAlphabet& alphabet() const { return alphabet_; }

private:
    double activity_prob_;
    double noise_var_;
    double bayes_factor_;
    AugmentedAlphabet alphabet_;
};

/// Cost attached to estimating symbol x_k: c_fi for a data symbol, c_fa for
/// the zero symbol. Only the ratio c_fa/c_fi ever reaches the detector; this
/// exists so the cost structure is testable on its own.
double cost_weight(const AugmentedAlphabet& alphabet, double x_k, double c_fa, double c_fi);

/// Support penalty: 2 * noise_var * ln(bayes_factor * (1 - p_a) * |A| / p_a).
/// May be negative (a liberal detector rewards active symbols).
double penalty_lambda(const DetectionParams& params);

/// penalty_lambda - 1; its sign selects the penalty form used after system
/// augmentation.
double penalty_theta(const DetectionParams& params);

}  // namespace brcsmud
