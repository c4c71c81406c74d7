#include "somkm/preprocess.hpp"

#include <cmath>
#include <string>

#include "somkm/error.hpp"

namespace somkm {

namespace {

void check_columns(const Matrix& matrix, const ScalerParams& params) {
    if (matrix.cols() != params.mins.size() || params.mins.size() != params.maxs.size()) {
        throw Error(Errc::DimensionMismatch, "matrix has " + std::to_string(matrix.cols()) +
                                                 " columns, scaler has " + std::to_string(params.mins.size()));
    }
}

}  // namespace

ScalerParams fit_minmax(const Matrix& matrix) {
    if (matrix.rows() == 0) {
        throw Error(Errc::EmptyMatrix, "cannot fit a scaler on zero rows");
    }
    ScalerParams p;
    p.mins.assign(matrix.row(0).begin(), matrix.row(0).end());
    p.maxs = p.mins;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const double v = matrix(i, j);
            if (!std::isfinite(v)) {
                throw Error(Errc::NonFiniteValue, "non-finite entry at (" + std::to_string(i) + ", " +
                                                      std::to_string(j) + ")");
            }
            if (v < p.mins[j]) p.mins[j] = v;
            if (v > p.maxs[j]) p.maxs[j] = v;
        }
    }
    return p;
}

Matrix apply_minmax(const Matrix& matrix, const ScalerParams& params) {
    check_columns(matrix, params);
    Matrix out(matrix.rows(), matrix.cols());
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        const double lo = params.mins[j];
        const double range = params.maxs[j] - lo;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            out(i, j) = range == 0.0 ? 0.0 : (matrix(i, j) - lo) / range;
        }
    }
    return out;
}

Matrix invert_minmax(const Matrix& matrix, const ScalerParams& params) {
    check_columns(matrix, params);
    Matrix out(matrix.rows(), matrix.cols());
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        const double lo = params.mins[j];
        const double range = params.maxs[j] - lo;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            out(i, j) = range == 0.0 ? lo : matrix(i, j) * range + lo;
        }
    }
    return out;
}

}  // namespace somkm
