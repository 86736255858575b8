#include "brcsmud/linsys.hpp"

#include <cmath>
#include <stdexcept>

namespace brcsmud {

LinearSystem::LinearSystem(Matrix matrix, Vector observation)
    : matrix_(std::move(matrix)), observation_(std::move(observation)) {
    if (matrix_.rows() == 0 || matrix_.cols() == 0) {
        throw std::invalid_argument("linear system: matrix must be nonempty");
    }
    if (observation_.size() != matrix_.rows()) {
        throw std::invalid_argument("linear system: observation length must match row count");
    }
}

AugmentedSystem::AugmentedSystem(Matrix matrix_aug, Vector observation_aug, double theta)
    : matrix_aug_(std::move(matrix_aug)),
      observation_aug_(std::move(observation_aug)),
      theta_(theta),
      mode_(theta >= 0.0 ? PenaltyMode::PenalizeNonzero : PenaltyMode::PenalizeZero) {}

double AugmentedSystem::per_symbol_penalty(double symbol) const {
    return brcsmud::per_symbol_penalty(mode_, theta_, symbol);
}

std::size_t l0_norm(std::span<const double> x) {
    std::size_t n = 0;
    for (double v : x) {
        if (v != 0.0) {
            ++n;
        }
    }
    return n;
}

double objective(const LinearSystem& system, const SymbolVector& x, double lambda) {
    if (x.size() != system.unknowns()) {
        throw std::invalid_argument("objective: candidate length must match column count");
    }
    double residual = 0.0;
    for (std::size_t r = 0; r < system.observations(); ++r) {
        const double e = system.observation()[r] - dot(system.matrix().row(r), x.values());
        residual += e * e;
    }
    return residual + lambda * static_cast<double>(l0_norm(x.values()));
}

AugmentedSystem augment(const LinearSystem& system, const DetectionParams& params) {
    const std::size_t m = system.observations();
    const std::size_t k = system.unknowns();

    Matrix t_aug(m + k, k, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            t_aug(r, c) = system.matrix()(r, c);
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        t_aug(m + c, c) = 1.0;
    }

    Vector y_aug(m + k, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        y_aug[r] = system.observation()[r];
    }

    return AugmentedSystem(std::move(t_aug), std::move(y_aug), penalty_theta(params));
}

double per_symbol_penalty(PenaltyMode mode, double theta, double symbol) {
    if (mode == PenaltyMode::PenalizeNonzero) {
        return symbol != 0.0 ? theta : 0.0;
    }
    return symbol == 0.0 ? std::abs(theta) : 0.0;
}

}  // namespace brcsmud
