#include "dmca/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dmca/errors.hpp"

namespace dmca {

namespace {

constexpr double kJacobiTol = 1e-10;
constexpr std::size_t kJacobiMaxSweeps = 10000;

void require_features(const Matrix& m, const char* who) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidData(std::string(who) + ": empty matrix");
    if (!m.all_finite())
        throw InvalidData(std::string(who) + ": non-finite entry");
}

// One-sided Jacobi on a tall matrix (rows >= cols). On return the columns
// of `a` are mutually orthogonal and `v` accumulates the right rotations.
void jacobi_orthogonalize(Matrix& a, Matrix& v) {
    const std::size_t m = a.rows(), n = a.cols();
    for (std::size_t sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                if (std::abs(apq) <= kJacobiTol * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < m; ++i) {
                    const double ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) return;
    }
    throw NumericalError("svd kernel did not converge within sweep limit");
}

// Fills column `col` of `basis` with a unit vector orthogonal to columns
// [0, col). Used when the requested rank exceeds the numerical rank.
void complete_orthonormal_column(Matrix& basis, std::size_t col) {
    const std::size_t dim = basis.rows();
    std::vector<double> best(dim, 0.0);
    double best_norm = -1.0;
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<double> cand(dim, 0.0);
        cand[k] = 1.0;
        for (std::size_t j = 0; j < col; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dot += basis(i, j) * cand[i];
            for (std::size_t i = 0; i < dim; ++i) cand[i] -= dot * basis(i, j);
        }
        double norm = 0.0;
        for (double x : cand) norm += x * x;
        if (norm > best_norm) {
            best_norm = norm;
            best = cand;
        }
    }
    // Second orthogonalization pass for stability.
    for (std::size_t j = 0; j < col; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += basis(i, j) * best[i];
        for (std::size_t i = 0; i < dim; ++i) best[i] -= dot * basis(i, j);
    }
    double norm = 0.0;
    for (double x : best) norm += x * x;
    if (norm <= 0.0) throw NumericalError("orthonormal completion failed");
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) basis(i, col) = best[i] / norm;
}

}  // namespace

CenterResult center_columns(const Matrix& m) {
    require_features(m, "center_columns");
    CenterResult out;
    out.centered = m;
    out.mean.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) sum += m(r, c);
        const double mean = sum / static_cast<double>(m.cols());
        out.mean[r] = mean;
        for (std::size_t c = 0; c < m.cols(); ++c) out.centered(r, c) = m(r, c) - mean;
    }
    return out;
}

StandardizeResult standardize_rows(const Matrix& m) {
    CenterResult centered = center_columns(m);
    StandardizeResult out;
    out.standardized = std::move(centered.centered);
    out.mean = std::move(centered.mean);
    out.scale.assign(m.rows(), 1.0);
    const double denom = m.cols() > 1 ? static_cast<double>(m.cols() - 1) : 1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double ss = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            ss += out.standardized(r, c) * out.standardized(r, c);
        const double sd = std::sqrt(ss / denom);
        if (sd > 0.0) {
            out.scale[r] = sd;
            for (std::size_t c = 0; c < m.cols(); ++c) out.standardized(r, c) /= sd;
        }
    }
    return out;
}

Matrix cross_covariance(const Matrix& a, const Matrix& b,
                        const PairingMatrix& pairing) {
    if (a.cols() != pairing.n() || b.cols() != pairing.n_prime())
        throw ShapeError("cross_covariance: pairing shape does not match sample counts");
    std::vector<std::size_t> left, right;
    left.reserve(pairing.size());
    right.reserve(pairing.size());
    for (const auto& [i, j] : pairing.pairs()) {
        left.push_back(i);
        right.push_back(j);
    }
    const Matrix ma = gather_columns(a, left);
    const Matrix mb = gather_columns(b, right);
    return matmul(ma, transpose(mb));
}

SvdResult truncated_svd(const Matrix& c, std::size_t q) {
    if (c.rows() == 0 || c.cols() == 0)
        throw InvalidData("truncated_svd: empty matrix");
    if (!c.all_finite()) throw InvalidData("truncated_svd: non-finite entry");
    if (q < 1 || q > std::min(c.rows(), c.cols()))
        throw DimensionError("truncated_svd: q out of range");

    const bool flipped = c.rows() < c.cols();
    Matrix work = flipped ? transpose(c) : c;
    Matrix v = Matrix::identity(work.cols());
    jacobi_orthogonalize(work, v);

    const std::size_t n = work.cols();
    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < work.rows(); ++i) ss += work(i, j) * work(i, j);
        norms[j] = std::sqrt(ss);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return norms[a] > norms[b];
    });

    Matrix tall(work.rows(), q);
    Matrix wide(n, q);
    std::vector<double> sigma(q);
    for (std::size_t k = 0; k < q; ++k) {
        const std::size_t j = order[k];
        sigma[k] = norms[j];
        if (norms[j] > 0.0) {
            for (std::size_t i = 0; i < work.rows(); ++i)
                tall(i, k) = work(i, j) / norms[j];
        } else {
            complete_orthonormal_column(tall, k);
        }
        // Columns of v stay orthonormal even at zero sigma.
        for (std::size_t i = 0; i < n; ++i) wide(i, k) = v(i, j);
    }

    SvdResult out;
    out.sigma = std::move(sigma);
    out.left = flipped ? std::move(wide) : std::move(tall);
    out.right = flipped ? std::move(tall) : std::move(wide);

    // Fix signs: largest-magnitude entry of each left column nonnegative.
    for (std::size_t k = 0; k < q; ++k) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < out.left.rows(); ++i) {
            const double mag = std::abs(out.left(i, k));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (out.left(arg, k) < 0.0) {
            for (std::size_t i = 0; i < out.left.rows(); ++i) out.left(i, k) = -out.left(i, k);
            for (std::size_t i = 0; i < out.right.rows(); ++i) out.right(i, k) = -out.right(i, k);
        }
    }
    return out;
}

Matrix pca_fit(const Matrix& m, std::size_t q) {
    require_features(m, "pca_fit");
    if (q < 1 || m.cols() < 2 || q > std::min(m.rows(), m.cols() - 1))
        throw DimensionError("pca_fit: q out of range");
    CenterResult centered = center_columns(m);
    return truncated_svd(centered.centered, q).left;
}

Matrix project(const Matrix& basis, const Matrix& m,
               const std::vector<double>& mean) {
    if (basis.rows() != m.rows() || mean.size() != m.rows())
        throw ShapeError("project: basis/mean rows do not match feature dimension");
    Matrix out(basis.cols(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t k = 0; k < basis.cols(); ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                acc += basis(i, k) * (m(i, j) - mean[i]);
            out(k, j) = acc;
        }
    }
    return out;
}

}  // namespace dmca
