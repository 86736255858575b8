#include "brcsmud/detector.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brcsmud/error.hpp"

namespace brcsmud {

TriangularizedSystem factorize(const AugmentedSystem& aug) {
    auto [q, r] = skinny_qr(aug.matrix());

    for (std::size_t j = 0; j < r.cols(); ++j) {
        // the identity block bounds the smallest singular value by 1
        if (!(r(j, j) > 1e-8)) {
            throw InternalError("factorize: rank loss in augmented system");
        }
    }

    Vector y_tilde = matvec_transpose(q, aug.observation());
    const double residual_const =
        std::max(0.0, norm_sq(aug.observation()) - norm_sq(y_tilde));

    return {std::move(r), std::move(y_tilde), residual_const, aug.theta(), aug.penalty_mode()};
}

namespace {

/// Candidate ordering for ties: smaller enumeration rank at the first
/// differing position, most significant unknown first.
bool lex_less(const AugmentedAlphabet& alphabet, const Vector& a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t ra = alphabet.rank(a[i]);
        const std::size_t rb = alphabet.rank(b[i]);
        if (ra != rb) {
            return ra < rb;
        }
    }
    return false;
}

struct Child {
    double increment;
    std::size_t rank;
    double symbol;
};

struct Search {
    const TriangularizedSystem& tri;
    const AugmentedAlphabet& alphabet;
    Vector x;
    Vector best;
    double best_metric = std::numeric_limits<double>::infinity();
    bool have_best = false;
    std::uint64_t nodes = 0;
    std::vector<std::vector<Child>> children;  // scratch, one buffer per level

    Search(const TriangularizedSystem& t, const AugmentedAlphabet& a)
        : tri(t),
          alphabet(a),
          x(t.r.rows(), 0.0),
          best(t.r.rows(), 0.0),
          children(t.r.rows()) {}

    void descend(std::size_t level, double partial) {
        const Matrix& r = tri.r;
        const std::size_t k = r.rows();

        double b = tri.y_tilde[level];
        for (std::size_t j = level + 1; j < k; ++j) {
            b -= r(level, j) * x[j];
        }

        auto& kids = children[level];
        kids.clear();
        const auto symbols = alphabet.enumeration();
        for (std::size_t idx = 0; idx < symbols.size(); ++idx) {
            const double a = symbols[idx];
            const double e = b - r(level, level) * a;
            const double inc = e * e + per_symbol_penalty(tri.penalty_mode, tri.theta, a);
            assert(inc >= 0.0);
            kids.push_back({inc, idx, a});
        }
        nodes += symbols.size();
        std::sort(kids.begin(), kids.end(), [](const Child& lhs, const Child& rhs) {
            if (lhs.increment != rhs.increment) {
                return lhs.increment < rhs.increment;
            }
            return lhs.rank < rhs.rank;
        });

        for (const Child& c : kids) {
            const double metric = partial + c.increment;
            // strict cut so exact ties survive down to the leaf tie-break
            if (have_best && metric > best_metric) {
                break;
            }
            x[level] = c.symbol;
            if (level == 0) {
                if (!have_best || metric < best_metric ||
                    (metric == best_metric && lex_less(alphabet, x, best))) {
                    best = x;
                    best_metric = metric;
                    have_best = true;
                }
            } else {
                descend(level - 1, metric);
            }
        }
    }
};

}  // namespace

DetectionResult sphere_detect(const TriangularizedSystem& tri, const AugmentedAlphabet& alphabet,
                              double lambda, const LinearSystem& system) {
    if (tri.r.rows() != system.unknowns()) {
        throw std::invalid_argument("sphere_detect: triangular system does not match");
    }

    Search search(tri, alphabet);
    search.descend(tri.r.rows() - 1, 0.0);
    assert(search.have_best);

    SymbolVector x_hat(alphabet, std::move(search.best));
    const double value = objective(system, x_hat, lambda);
    return {std::move(x_hat), value, search.nodes};
}

DetectionResult exhaustive_detect(const LinearSystem& system, const DetectionParams& params) {
    const std::size_t k = system.unknowns();
    const AugmentedAlphabet& alphabet = params.alphabet();
    const std::size_t m0 = alphabet.size() + 1;

    // 3^16 candidates is the ceiling we are willing to enumerate
    double count = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        count *= static_cast<double>(m0);
        if (count > 43046721.0) {
            throw std::invalid_argument("exhaustive_detect: candidate space too large");
        }
    }

    const double lambda = penalty_lambda(params);
    const auto symbols = alphabet.enumeration();

    std::vector<std::size_t> ranks(k, 0);
    Vector x(k, 0.0);
    Vector best;
    double best_value = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;

    while (true) {
        ++visited;
        double residual = 0.0;
        for (std::size_t r = 0; r < system.observations(); ++r) {
            const double e = system.observation()[r] - dot(system.matrix().row(r), x);
            residual += e * e;
        }
        const double value = residual + lambda * static_cast<double>(l0_norm(x));
        // strict comparison keeps the first (lexicographically smallest) minimizer
        if (value < best_value) {
            best_value = value;
            best = x;
        }

        // odometer, last unknown least significant
        bool advanced = false;
        for (std::size_t pos = k; pos-- > 0;) {
            if (++ranks[pos] < m0) {
                x[pos] = symbols[ranks[pos]];
                advanced = true;
                break;
            }
            ranks[pos] = 0;
            x[pos] = symbols[0];
        }
        if (!advanced) {
            break;
        }
    }

    return {SymbolVector(alphabet, std::move(best)), best_value, visited};
}

DetectionResult detect(const LinearSystem& system, const DetectionParams& params) {
    const AugmentedSystem aug = augment(system, params);
    const TriangularizedSystem tri = factorize(aug);
    return sphere_detect(tri, params.alphabet(), penalty_lambda(params), system);
}

}  // namespace brcsmud
