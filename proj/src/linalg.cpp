#include "brcsmud/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace brcsmud {

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm_sq(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) {
        s += v * v;
    }
    return s;
}

Vector matvec(const Matrix& m, std::span<const double> x) {
    if (x.size() != m.cols()) {
        throw std::invalid_argument("matvec: length mismatch");
    }
    Vector out(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out[r] = dot(m.row(r), x);
    }
    return out;
}

Vector matvec_transpose(const Matrix& m, std::span<const double> x) {
    if (x.size() != m.rows()) {
        throw std::invalid_argument("matvec_transpose: length mismatch");
    }
    Vector out(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double xr = x[r];
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[c] += m(r, c) * xr;
        }
    }
    return out;
}

QrFactors skinny_qr(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) {
        throw std::invalid_argument("skinny_qr: matrix must be tall (rows >= cols)");
    }

    Matrix work = a;
    // Householder vectors, one per column; v[j] has length m - j.
    std::vector<Vector> vs(n);
    std::vector<double> betas(n, 0.0);

    for (std::size_t j = 0; j < n; ++j) {
        Vector v(m - j);
        for (std::size_t i = j; i < m; ++i) {
            v[i - j] = work(i, j);
        }
        const double sigma = norm_sq(v);
        const double alpha = (v[0] >= 0.0) ? -std::sqrt(sigma) : std::sqrt(sigma);
        v[0] -= alpha;
        const double vnorm_sq = norm_sq(v);
        if (vnorm_sq > 0.0) {
            const double beta = 2.0 / vnorm_sq;
            // apply H = I - beta v v^T to the trailing block
            for (std::size_t c = j; c < n; ++c) {
                double proj = 0.0;
                for (std::size_t i = j; i < m; ++i) {
                    proj += v[i - j] * work(i, c);
                }
                proj *= beta;
                for (std::size_t i = j; i < m; ++i) {
                    work(i, c) -= proj * v[i - j];
                }
            }
            vs[j] = std::move(v);
            betas[j] = beta;
        }
        work(j, j) = alpha;
        for (std::size_t i = j + 1; i < m; ++i) {
            work(i, j) = 0.0;
        }
    }

    Matrix r(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = i; c < n; ++c) {
            r(i, c) = work(i, c);
        }
    }

    // Q = H_1 ... H_n [I_n; 0], built by applying reflectors in reverse.
    Matrix q(m, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        q(j, j) = 1.0;
    }
    for (std::size_t jj = n; jj-- > 0;) {
        if (betas[jj] == 0.0) {
            continue;
        }
        const Vector& v = vs[jj];
        for (std::size_t c = 0; c < n; ++c) {
            double proj = 0.0;
            for (std::size_t i = jj; i < m; ++i) {
                proj += v[i - jj] * q(i, c);
            }
            proj *= betas[jj];
            for (std::size_t i = jj; i < m; ++i) {
                q(i, c) -= proj * v[i - jj];
            }
        }
    }

    // sign convention: nonnegative diagonal of R
    for (std::size_t j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            for (std::size_t c = j; c < n; ++c) {
                r(j, c) = -r(j, c);
            }
            for (std::size_t i = 0; i < m; ++i) {
                q(i, j) = -q(i, j);
            }
        }
    }

    return {std::move(q), std::move(r)};
}

}  // namespace brcsmud
