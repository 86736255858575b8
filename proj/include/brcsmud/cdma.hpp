#pragma once

#include <cstddef>
#include <random>

#include "brcsmud/linsys.hpp"

namespace brcsmud::cdma {

/// Scenario parameters for one Monte Carlo frame of the overloaded CDMA
/// uplink: K nodes spread by factor N, a length-L_h fading channel per node,
/// sporadic activity with probability p_a, and a per-symbol SNR in dB.
struct CdmaConfig {
    std::size_t num_nodes;      // K
    std::size_t spreading_gain; // N
    std::size_t channel_taps;   // L_h
    double activity_prob;       // p_a
    double snr_db;              // +infinity disables the noise entirely
    AugmentedAlphabet alphabet = AugmentedAlphabet::bpsk();

    /// Observation dimension M = N + L_h - 1.
    std::size_t observations() const { return spreading_gain + channel_taps - 1; }

    void validate() const;
};

/// One generated frame: the composite system, the transmitted source vector,
/// and the noise variance that produced the observation.
struct Frame {
    LinearSystem system;
    SymbolVector x_true;
    double noise_var;
};

/// N x K chip matrix, entries i.i.d. uniform over {-1/sqrt(N), +1/sqrt(N)},
/// so every column has unit energy.
Matrix draw_spreading(std::mt19937_64& rng, std::size_t gain, std::size_t nodes);

/// L_h x K tap matrix, entries i.i.d. zero-mean Gaussian with variance
/// 1/L_h, so the expected channel energy per node is one.
Matrix draw_channel(std::mt19937_64& rng, std::size_t taps, std::size_t nodes);

/// Composite system matrix: column k is the full linear convolution of
/// spreading column k with channel column k, length N + L_h - 1.
Matrix build_t(const Matrix& spreading, const Matrix& channel);

/// Draw a fresh frame: new spreading, new channel, sporadic source vector,
/// white Gaussian noise at variance 10^(-snr_db/10). Consumption order of
/// the random stream is spreading, channel, activity, noise.
Frame draw_frame(std::mt19937_64& rng, const CdmaConfig& config);

}  // namespace brcsmud::cdma
