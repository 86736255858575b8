#include "brcsmud/cdma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace brcsmud::cdma {

void CdmaConfig::validate() const {
    if (num_nodes == 0 || spreading_gain == 0 || channel_taps == 0) {
        throw std::invalid_argument("cdma: num_nodes, spreading_gain and channel_taps must be >= 1");
    }
    if (!(activity_prob > 0.0 && activity_prob < 1.0)) {
        throw std::invalid_argument("cdma: activity_prob must lie strictly in (0,1)");
    }
}

Matrix draw_spreading(std::mt19937_64& rng, std::size_t gain, std::size_t nodes) {
    const double chip = 1.0 / std::sqrt(static_cast<double>(gain));
    std::uniform_int_distribution<int> coin(0, 1);
    Matrix s(gain, nodes);
    for (std::size_t r = 0; r < gain; ++r) {
        for (std::size_t c = 0; c < nodes; ++c) {
            s(r, c) = coin(rng) ? chip : -chip;
        }
    }
    return s;
}

Matrix draw_channel(std::mt19937_64& rng, std::size_t taps, std::size_t nodes) {
    std::normal_distribution<double> tap(0.0, std::sqrt(1.0 / static_cast<double>(taps)));
    Matrix h(taps, nodes);
    for (std::size_t r = 0; r < taps; ++r) {
        for (std::size_t c = 0; c < nodes; ++c) {
            h(r, c) = tap(rng);
        }
    }
    return h;
}

Matrix build_t(const Matrix& spreading, const Matrix& channel) {
    if (spreading.cols() != channel.cols()) {
        throw std::invalid_argument("build_t: node counts do not match");
    }
    const std::size_t n = spreading.rows();
    const std::size_t taps = channel.rows();
    const std::size_t nodes = spreading.cols();
    Matrix t(n + taps - 1, nodes, 0.0);
    for (std::size_t k = 0; k < nodes; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < taps; ++j) {
                t(i + j, k) += spreading(i, k) * channel(j, k);
            }
        }
    }
    return t;
}

Frame draw_frame(std::mt19937_64& rng, const CdmaConfig& config) {
    config.validate();
    const std::size_t k = config.num_nodes;

    const Matrix spreading = draw_spreading(rng, config.spreading_gain, k);
    const Matrix channel = draw_channel(rng, config.channel_taps, k);
    Matrix t = build_t(spreading, channel);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, config.alphabet.size() - 1);
    Vector x(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        if (unit(rng) < config.activity_prob) {
            x[i] = config.alphabet.data_symbols()[pick(rng)];
        }
    }

    Vector y = matvec(t, x);
    double noise_var = 0.0;
    if (config.snr_db != std::numeric_limits<double>::infinity()) {
        noise_var = std::pow(10.0, -config.snr_db / 10.0);
        std::normal_distribution<double> noise(0.0, std::sqrt(noise_var));
        for (double& v : y) {
            v += noise(rng);
        }
    }

    return {LinearSystem(std::move(t), std::move(y)),
            SymbolVector(config.alphabet, std::move(x)), noise_var};
}

}  // namespace brcsmud::cdma
