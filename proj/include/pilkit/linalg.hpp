#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pilkit/matrix.hpp"

namespace pilkit {

/// Thin SVD A = U * diag(s) * V^T with U m-by-k, V n-by-k, k = min(m, n),
/// singular values sorted descending.
struct SvdResult {
    Matrix u;
    std::vector<double> singular_values;
    Matrix v;
};

/// One-sided Jacobi SVD. Accurate for the small/moderate dense matrices this
/// library works with; cost is O(m n^2) per sweep.
SvdResult svd(const Matrix& a);

/// Default rank tolerance: max(m, n) * sigma_max * machine epsilon.
double default_rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max);

struct RankInfo {
    std::size_t numerical_rank = 0;
    std::vector<double> singular_values;  ///< descending
    double tolerance_used = 0.0;
    /// sigma_max / sigma_min over the retained (above-tolerance) values;
    /// infinity for the zero matrix.
    double condition_estimate = 0.0;
};

/// Rank decision from an explicit SVD, so callers who already factored the
/// matrix don't pay for a second decomposition.
RankInfo rank_info(const SvdResult& s, std::optional<double> tolerance = std::nullopt);

RankInfo rank_info(const Matrix& a, std::optional<double> tolerance = std::nullopt);

std::size_t numerical_rank(const Matrix& a, std::optional<double> tolerance = std::nullopt);

/// Moore-Penrose pseudoinverse via SVD with small singular values (at or
/// below the rank tolerance) zeroed rather than inverted.
Matrix pseudoinverse(const Matrix& a, std::optional<double> tolerance = std::nullopt);

/// Pseudoinverse from an existing factorization (same zeroing rule).
Matrix pseudoinverse(const SvdResult& s, std::optional<double> tolerance = std::nullopt);

double frobenius_norm(const Matrix& a);

/// ||a - b||_F; shapes must match.
double frobenius_error(const Matrix& a, const Matrix& b);

/// || a * a_pinv - I ||_F^2 — the layer-growth stopping functional.
double projector_residual(const Matrix& a, const Matrix& a_pinv);

}  // namespace pilkit
