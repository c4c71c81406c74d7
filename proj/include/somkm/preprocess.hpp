#ifndef SOMKM_PREPROCESS_HPP
#define SOMKM_PREPROCESS_HPP

#include <vector>

#include "somkm/matrix.hpp"

namespace somkm {

/// Per-column range observed at fit time.
struct ScalerParams {
    std::vector<double> mins;
    std::vector<double> maxs;

    bool operator==(const ScalerParams&) const = default;
};

ScalerParams fit_minmax(const Matrix& matrix);

/// (x - min) / (max - min) per column. Constant columns map to 0; out-of-range values are not clamped.
Matrix apply_minmax(const Matrix& matrix, const ScalerParams& params);

/// y * (max - min) + min per column; constant columns map back to min.
Matrix invert_minmax(const Matrix& matrix, const ScalerParams& params);

}  // namespace somkm

#endif
