#include "brcsmud/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace brcsmud {

AugmentedAlphabet::AugmentedAlphabet(std::vector<double> data_symbols) {
    if (data_symbols.empty()) {
        throw std::invalid_argument("alphabet: data symbol set is empty");
    }
    std::sort(data_symbols.begin(), data_symbols.end());
    for (std::size_t i = 0; i < data_symbols.size(); ++i) {
        const double a = data_symbols[i];
        if (a == 0.0) {
            throw std::invalid_argument("alphabet: zero is reserved for inactivity");
        }
        if (std::abs(a) != 1.0) {
            throw std::invalid_argument("alphabet: symbols must be unit modulus, got " +
                                        std::to_string(a));
        }
        if (i > 0 && data_symbols[i - 1] == a) {
            throw std::invalid_argument("alphabet: duplicate symbol " + std::to_string(a));
        }
    }
    enumeration_.reserve(data_symbols.size() + 1);
    enumeration_.push_back(0.0);
    enumeration_.insert(enumeration_.end(), data_symbols.begin(), data_symbols.end());
}

bool AugmentedAlphabet::contains_data(double symbol) const {
    for (double a : data_symbols()) {
        if (a == symbol) {
            return true;
        }
    }
    return false;
}

bool AugmentedAlphabet::contains_augmented(double symbol) const {
    return symbol == 0.0 || contains_data(symbol);
}

std::size_t AugmentedAlphabet::rank(double symbol) const {
    for (std::size_t i = 0; i < enumeration_.size(); ++i) {
        if (enumeration_[i] == symbol) {
            return i;
        }
    }
    throw std::invalid_argument("alphabet: symbol " + std::to_string(symbol) +
                                " not in augmented alphabet");
}

SymbolVector::SymbolVector(const AugmentedAlphabet& alphabet, Vector values)
    : values_(std::move(values)) {
    for (double v : values_) {
        if (!alphabet.contains_augmented(v)) {
            throw std::invalid_argument("symbol vector: entry " + std::to_string(v) +
                                        " not in augmented alphabet");
        }
    }
}

DetectionParams::DetectionParams(double activity_prob, double noise_var, double bayes_factor,
                                 AugmentedAlphabet alphabet)
    : activity_prob_(activity_prob),
      noise_var_(noise_var),
      bayes_factor_(bayes_factor),
      alphabet_(std::move(alphabet)) {
    if (!(activity_prob > 0.0 && activity_prob < 1.0)) {
        throw std::invalid_argument("params: activity_prob must lie strictly in (0,1)");
    }
    if (!(noise_var >= 0.0)) {
        throw std::invalid_argument("params: noise_var must be nonnegative");
    }
    if (!(bayes_factor > 0.0)) {
        throw std::invalid_argument("params: bayes_factor must be positive");
    }
}

double cost_weight(const AugmentedAlphabet& alphabet, double x_k, double c_fa, double c_fi) {
    if (!(c_fa > 0.0) || !(c_fi > 0.0)) {
        throw std::invalid_argument("cost_weight: costs must be positive");
    }
    if (x_k == 0.0) {
        return c_fa;
    }
    if (alphabet.contains_data(x_k)) {
        return c_fi;
    }
    throw std::invalid_argument("cost_weight: symbol not in augmented alphabet");
}

double penalty_lambda(const DetectionParams& params) {
    const double p = params.activity_prob();
    const double m = static_cast<double>(params.alphabet().size());
    return 2.0 * params.noise_var() * std::log(params.bayes_factor() * (1.0 - p) * m / p);
}

double penalty_theta(const DetectionParams& params) {
    return penalty_lambda(params) - 1.0;
}

}  // namespace brcsmud
