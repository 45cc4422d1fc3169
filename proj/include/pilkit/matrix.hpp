#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pilkit/errors.hpp"

namespace pilkit {

/// Dense real matrix, row-major storage. The single data carrier of the
/// library: inputs X, hidden outputs Y, weights V/W, targets T, projectors P.
class Matrix {
public:
    /// rows x cols matrix, every entry set to `fill`. Dimensions must be >= 1.
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Matrix from nested braces; all rows must have equal length and all
    /// entries must be finite.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    /// Matrix from a flat row-major entry vector; entries must be finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<double> entries() noexcept { return data_; }
    std::span<const double> entries() const noexcept { return data_; }

    std::span<double> row(std::size_t i) noexcept {
        return std::span<double>(data_.data() + i * cols_, cols_);
    }
    std::span<const double> row(std::size_t i) const noexcept {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }

    /// True iff no entry is NaN or infinite.
    bool is_finite() const noexcept;

    Matrix transposed() const;

    /// Exact entrywise equality (and equal shape).
    friend bool operator==(const Matrix& a, const Matrix& b) noexcept;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Throws InvalidMatrixError unless `a` is finite. `what` names the operand.
void require_finite(const Matrix& a, const char* what);

}  // namespace pilkit
