#include "somkm/matrix.hpp"

#include "somkm/error.hpp"

namespace somkm {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    for (const auto& r : rows) {
        append_row(std::vector<double>(r));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m;
    for (const auto& r : rows) {
        m.append_row(r);
    }
    return m;
}

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = values.size();
    } else if (values.size() != cols_) {
        throw Error(Errc::DimensionMismatch, "row of length " + std::to_string(values.size()) +
                                                 " appended to matrix with " + std::to_string(cols_) +
                                                 " columns");
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
    std::vector<std::vector<double>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto v = row(r);
        out.emplace_back(v.begin(), v.end());
    }
    return out;
}

}  // namespace somkm
