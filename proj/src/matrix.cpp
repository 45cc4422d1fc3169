#include "pilkit/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace pilkit {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidMatrixError("matrix dimensions must be at least 1x1, got " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    check_dims(rows, cols);
    if (!std::isfinite(fill)) {
        throw InvalidMatrixError("non-finite fill value");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw InvalidMatrixError("ragged initializer: expected " +
                                     std::to_string(cols_) + " columns, got " +
                                     std::to_string(r.size()));
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!is_finite()) {
        throw InvalidMatrixError("non-finite entry in matrix initializer");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_dims(rows, cols);
    if (data_.size() != rows_ * cols_) {
        throw InvalidMatrixError("entry count " + std::to_string(data_.size()) +
                                 " does not match shape " + std::to_string(rows_) +
                                 "x" + std::to_string(cols_));
    }
    if (!is_finite()) {
        throw InvalidMatrixError("non-finite entry in matrix data");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

bool Matrix::is_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatchError("matrix product shape mismatch: " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " * " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols(), 0.0);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            const double* brow = b.row(k).data();
            double* crow = c.row(i).data();
            for (std::size_t j = 0; j < b.cols(); ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

namespace {

Matrix elementwise(const Matrix& a, const Matrix& b, bool subtract) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("elementwise shape mismatch: " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " vs " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
    }
    Matrix c = a;
    auto ce = c.entries();
    auto be = b.entries();
    for (std::size_t i = 0; i < ce.size(); ++i) {
        ce[i] = subtract ? ce[i] - be[i] : ce[i] + be[i];
    }
    return c;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) { return elementwise(a, b, false); }
Matrix operator-(const Matrix& a, const Matrix& b) { return elementwise(a, b, true); }

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& v : c.entries()) {
        v *= s;
    }
    return c;
}

void require_finite(const Matrix& a, const char* what) {
    if (!a.is_finite()) {
        throw InvalidMatrixError(std::string(what) + " contains non-finite entries");
    }
}

}  // namespace pilkit
