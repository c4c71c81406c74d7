#include "somkm/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "somkm/error.hpp"

namespace somkm {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                acc += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(acc);
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (double v : a.data()) {
        acc += v * v;
    }
    return std::sqrt(acc);
}

void apply_sign_convention(std::span<double> v) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < v.size(); ++j) {
        if (std::abs(v[j]) > std::abs(v[arg])) {
            arg = j;
        }
    }
    if (v[arg] < 0.0) {
        for (double& x : v) {
            x = -x;
        }
    }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double rel_tol, int max_sweeps) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n) {
        throw Error(Errc::DimensionMismatch, "eigendecomposition needs a square matrix");
    }
    Matrix a = symmetric;
    Matrix v(n, n);  // columns accumulate the rotations
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }

    const double threshold = rel_tol * frobenius_norm(symmetric);
    SymmetricEigen out;
    out.off_diagonal = off_diagonal_norm(a);
    while (out.off_diagonal > threshold && out.sweeps < max_sweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        ++out.sweeps;
        out.off_diagonal = off_diagonal_norm(a);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src = order[r];
        out.values[r] = a(src, src);
        auto row = out.vectors.row(r);
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = v(k, src);
        }
        apply_sign_convention(row);
    }
    return out;
}

std::vector<double> PcaModel::explained_variance_ratio() const {
    std::vector<double> out(eigenvalues.size(), 0.0);
    if (total_variance > 0.0) {
        for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
            out[i] = eigenvalues[i] / total_variance;
        }
    }
    return out;
}

Matrix covariance(const Matrix& matrix, std::vector<double>* means) {
    const std::size_t m = matrix.rows();
    const std::size_t d = matrix.cols();
    std::vector<double> mu(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            mu[j] += matrix(i, j);
        }
    }
    for (double& x : mu) {
        x /= static_cast<double>(m);
    }
    Matrix cov(d, d);
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            centered[j] = matrix(i, j) - mu[j];
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = r; c < d; ++c) {
                cov(r, c) += centered[r] * centered[c];
            }
        }
    }
    const double norm = m > 1 ? 1.0 / static_cast<double>(m - 1) : 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            cov(r, c) *= norm;
            cov(c, r) = cov(r, c);
        }
    }
    if (means != nullptr) {
        *means = std::move(mu);
    }
    return cov;
}

PcaModel fit_pca(const Matrix& matrix, std::size_t q) {
    if (matrix.rows() < 2) {
        throw Error(Errc::TooFewRows, "PCA needs at least 2 rows, got " + std::to_string(matrix.rows()));
    }
    if (q < 1 || q > std::min(matrix.rows(), matrix.cols())) {
        throw Error(Errc::BadComponentCount, "q = " + std::to_string(q) + " outside [1, " +
                                                 std::to_string(std::min(matrix.rows(), matrix.cols())) + "]");
    }
    for (double v : matrix.data()) {
        if (!std::isfinite(v)) {
            throw Error(Errc::NonFiniteValue, "PCA input contains a non-finite value");
        }
    }

    PcaModel model;
    const Matrix cov = covariance(matrix, &model.mean);
    for (std::size_t j = 0; j < cov.rows(); ++j) {
        model.total_variance += cov(j, j);
    }
    const SymmetricEigen eig = jacobi_eigen(cov);

    model.components = Matrix(q, matrix.cols());
    model.eigenvalues.resize(q);
    for (std::size_t r = 0; r < q; ++r) {
        const auto src = eig.vectors.row(r);
        std::copy(src.begin(), src.end(), model.components.row(r).begin());
        model.eigenvalues[r] = std::max(0.0, eig.values[r]);
    }
    return model;
}

Matrix project(const PcaModel& model, const Matrix& matrix) {
    if (matrix.cols() != model.mean.size()) {
        throw Error(Errc::DimensionMismatch, "projecting " + std::to_string(matrix.cols()) +
                                                 "-dimensional rows with a " + std::to_string(model.mean.size()) +
                                                 "-dimensional PCA model");
    }
    const std::size_t q = model.components.rows();
    const std::size_t d = model.mean.size();
    Matrix out(matrix.rows(), q);
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            centered[j] = matrix(i, j) - model.mean[j];
        }
        for (std::size_t c = 0; c < q; ++c) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                acc += centered[j] * model.components(c, j);
            }
            out(i, c) = acc;
        }
    }
    return out;
}

Matrix reconstruct(const PcaModel& model, const Matrix& scores) {
    if (scores.cols() != model.components.rows()) {
        throw Error(Errc::DimensionMismatch, "scores have " + std::to_string(scores.cols()) + " columns, model has " +
                                                 std::to_string(model.components.rows()) + " components");
    }
    const std::size_t d = model.mean.size();
    Matrix out(scores.rows(), d);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double acc = model.mean[j];
            for (std::size_t c = 0; c < scores.cols(); ++c) {
                acc += scores(i, c) * model.components(c, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace somkm
