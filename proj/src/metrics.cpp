#include "brcsmud/metrics.hpp"

#include <stdexcept>

namespace brcsmud {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
    true_active += other.true_active;
    false_active += other.false_active;
    false_inactive += other.false_inactive;
    true_inactive += other.true_inactive;
    return *this;
}

ConfusionCounts score_confusion(const SymbolVector& x_true, const SymbolVector& x_hat) {
    if (x_true.size() != x_hat.size()) {
        throw std::invalid_argument("score_confusion: length mismatch");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < x_true.size(); ++i) {
        const bool truly_active = x_true[i] != 0.0;
        const bool detected_active = x_hat[i] != 0.0;
        if (truly_active) {
            detected_active ? ++c.true_active : ++c.false_inactive;
        } else {
            detected_active ? ++c.false_active : ++c.true_inactive;
        }
    }
    return c;
}

double gse(const SymbolVector& x_true, const SymbolVector& x_hat) {
    if (x_true.size() != x_hat.size()) {
        throw std::invalid_argument("gse: length mismatch");
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < x_true.size(); ++i) {
        if (x_true[i] != x_hat[i]) {
            ++errors;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(x_true.size());
}

RatePoint aggregate(std::span<const TrialScore> trials, double snr_db, double omega) {
    if (trials.empty()) {
        throw std::invalid_argument("aggregate: need at least one trial");
    }
    RatePoint p;
    p.snr_db = snr_db;
    p.omega = omega;
    p.trials = trials.size();

    std::uint64_t errors = 0;
    std::uint64_t symbols = 0;
    double nodes = 0.0;
    for (const TrialScore& t : trials) {
        p.confusion += t.confusion;
        errors += t.symbol_errors;
        symbols += t.symbols;
        nodes += static_cast<double>(t.nodes_visited);
    }

    const std::uint64_t active = p.confusion.true_active + p.confusion.false_inactive;
    const std::uint64_t inactive = p.confusion.false_active + p.confusion.true_inactive;
    if (active > 0) {
        p.tar = static_cast<double>(p.confusion.true_active) / static_cast<double>(active);
    }
    if (inactive > 0) {
        p.far = static_cast<double>(p.confusion.false_active) / static_cast<double>(inactive);
    }
    p.gse = symbols > 0 ? static_cast<double>(errors) / static_cast<double>(symbols) : 0.0;
    p.mean_nodes_visited = nodes / static_cast<double>(trials.size());
    return p;
}

}  // namespace brcsmud
