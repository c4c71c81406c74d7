#ifndef SOMKM_PCA_HPP
#define SOMKM_PCA_HPP

#include <cstddef>
#include <vector>

#include "somkm/matrix.hpp"

namespace somkm {

/// Eigenpairs of a symmetric matrix, sorted by eigenvalue (descending, stable).
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;  ///< row i is the unit eigenvector for values[i]
    int sweeps = 0;
    double off_diagonal = 0.0;  ///< Frobenius norm of the off-diagonal part at exit
};

/**
 * Cyclic Jacobi eigendecomposition.
 *
 * Sweeps over all (p, q) pairs until the off-diagonal Frobenius norm drops
 * to rel_tol * ||A||_F or max_sweeps is reached. Each eigenvector is signed
 * so that its largest-magnitude entry (first one on ties) is positive.
 */
SymmetricEigen jacobi_eigen(const Matrix& symmetric, double rel_tol = 1e-12, int max_sweeps = 100);

struct PcaModel {
    std::vector<double> mean;
    Matrix components;  ///< q x D, orthonormal rows
    std::vector<double> eigenvalues;  ///< q values, descending, clamped at 0
    double total_variance = 0.0;      ///< trace of the sample covariance

    std::size_t n_components() const noexcept { return components.rows(); }
    std::vector<double> explained_variance_ratio() const;

    bool operator==(const PcaModel&) const = default;
};

/// Sample covariance (1 / (m - 1)) of the rows, with the column means.
Matrix covariance(const Matrix& matrix, std::vector<double>* means = nullptr);

PcaModel fit_pca(const Matrix& matrix, std::size_t q);

/// (X - mean) * components^T
Matrix project(const PcaModel& model, const Matrix& matrix);

/// scores * components + mean
Matrix reconstruct(const PcaModel& model, const Matrix& scores);

}  // namespace somkm

#endif
