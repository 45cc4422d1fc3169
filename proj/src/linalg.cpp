#include "pilkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace pilkit {

namespace {

/// Apply the rotation [c -s; s c] to rows p and q of m (columns of the
/// matrix whose transpose m holds). Contiguous row access is the reason the
/// whole solver works on transposed storage.
void rotate_rows(Matrix& m, std::size_t p, std::size_t q, double c, double s) {
    auto rp = m.row(p);
    auto rq = m.row(q);
    for (std::size_t i = 0; i < rp.size(); ++i) {
        const double tp = rp[i];
        rp[i] = c * tp - s * rq[i];
        rq[i] = s * tp + c * rq[i];
    }
}

}  // namespace

SvdResult svd(const Matrix& a) {
    require_finite(a, "svd input");
    if (a.rows() < a.cols()) {
        // Factor the transpose (tall case) and swap the orthogonal factors.
        SvdResult t = svd(a.transposed());
        return SvdResult{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
    }

    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    // One-sided Jacobi on B = A: orthogonalize column pairs until the Gram
    // matrix is diagonal. bt holds B^T so columns of B are contiguous rows.
    Matrix bt = a.transposed();
    Matrix vt = Matrix::identity(n);  // rows are the columns of V

    const double eps = std::numeric_limits<double>::epsilon();
    constexpr std::size_t max_sweeps = 60;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const auto bp = bt.row(p);
                const auto bq = bt.row(q);
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += bp[i] * bp[i];
                    beta += bq[i] * bq[i];
                    gamma += bp[i] * bq[i];
                }
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
                    continue;  // already orthogonal to working precision
                }
                rotated = true;
                // Smaller root of t^2 + 2*zeta*t - 1 = 0 zeroes the pair's
                // off-diagonal Gram entry with the smallest rotation angle.
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_rows(bt, p, q, c, s);
                rotate_rows(vt, p, q, c, s);
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<double> sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto bj = bt.row(j);
        double sq = 0.0;
        for (double v : bj) {
            sq += v * v;
        }
        sigma[j] = std::sqrt(sq);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    SvdResult out{Matrix(m, n, 0.0), std::vector<double>(n, 0.0), Matrix(n, n, 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = sigma[src];
        const auto bj = bt.row(src);
        if (sigma[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) {
                out.u(i, j) = bj[i] / sigma[src];
            }
        }  // exact-zero singular value: leave the U column zero
        const auto vj = vt.row(src);
        for (std::size_t i = 0; i < n; ++i) {
            out.v(i, j) = vj[i];
        }
    }
    return out;
}

double default_rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * sigma_max *
           std::numeric_limits<double>::epsilon();
}

RankInfo rank_info(const SvdResult& s, std::optional<double> tolerance) {
    RankInfo info;
    info.singular_values = s.singular_values;
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    info.tolerance_used =
        tolerance.value_or(default_rank_tolerance(s.u.rows(), s.v.rows(), sigma_max));
    for (double sv : s.singular_values) {
        if (sv > info.tolerance_used) {
            ++info.numerical_rank;
        }
    }
    if (info.numerical_rank == 0) {
        info.condition_estimate = std::numeric_limits<double>::infinity();
    } else {
        info.condition_estimate = sigma_max / s.singular_values[info.numerical_rank - 1];
    }
    return info;
}

RankInfo rank_info(const Matrix& a, std::optional<double> tolerance) {
    return rank_info(svd(a), tolerance);
}

std::size_t numerical_rank(const Matrix& a, std::optional<double> tolerance) {
    return rank_info(a, tolerance).numerical_rank;
}

Matrix pseudoinverse(const Matrix& a, std::optional<double> tolerance) {
    return pseudoinverse(svd(a), tolerance);
}

Matrix pseudoinverse(const SvdResult& s, std::optional<double> tolerance) {
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    const double tol =
        tolerance.value_or(default_rank_tolerance(s.u.rows(), s.v.rows(), sigma_max));

    // A+ = V * diag(sigma+) * U^T with below-tolerance values dropped, not
    // inverted — inverting them would amplify pure noise.
    Matrix scaled_v = s.v;
    for (std::size_t j = 0; j < s.singular_values.size(); ++j) {
        const double inv = s.singular_values[j] > tol ? 1.0 / s.singular_values[j] : 0.0;
        for (std::size_t i = 0; i < scaled_v.rows(); ++i) {
            scaled_v(i, j) *= inv;
        }
    }
    return scaled_v * s.u.transposed();
}

double frobenius_norm(const Matrix& a) {
    double sq = 0.0;
    for (double v : a.entries()) {
        sq += v * v;
    }
    return std::sqrt(sq);
}

double frobenius_error(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("frobenius_error shape mismatch");
    }
    double sq = 0.0;
    const auto ae = a.entries();
    const auto be = b.entries();
    for (std::size_t i = 0; i < ae.size(); ++i) {
        const double d = ae[i] - be[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double projector_residual(const Matrix& a, const Matrix& a_pinv) {
    const Matrix p = a * a_pinv;
    double sq = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const double d = p(i, j) - (i == j ? 1.0 : 0.0);
            sq += d * d;
        }
    }
    return sq;
}

}  // namespace pilkit
