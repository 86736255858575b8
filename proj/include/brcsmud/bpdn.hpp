#pragma once

#include "brcsmud/linsys.hpp"

namespace brcsmud {

/// Settings for the l1-relaxed comparison solver.
struct BpdnConfig {
    double reg_weight;              // l1 weight, > 0
    int max_iters = 500;
    double rel_tol = 1e-6;          // stop on relative iterate change
    double quant_threshold = 0.5;   // |x| at or below this maps to zero
};

/// sign(v) * max(|v| - t, 0)
double soft_threshold(double v, double t);

/// Approximate minimizer of 0.5 ||y - T x||^2 + reg_weight ||x||_1 over R^K
/// by accelerated proximal gradient. The step size comes from a power
/// iteration bound on the spectral norm of T^T T, and the momentum restarts
/// whenever a step would raise the objective, so the objective sequence is
/// nonincreasing from the all-zero start. When objective_trace is non-null
/// it receives the objective value of every accepted iterate.
Vector bpdn_solve(const LinearSystem& system, const BpdnConfig& config,
                  std::vector<double>* objective_trace = nullptr);

/// Map a continuous solution onto the augmented alphabet: zero inside the
/// threshold, otherwise the nearest data symbol (ties toward the symbol
/// earlier in enumeration order).
SymbolVector quantize(std::span<const double> x, const AugmentedAlphabet& alphabet,
                      double threshold);

}  // namespace brcsmud
