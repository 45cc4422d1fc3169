#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "pilkit/linalg.hpp"
#include "pilkit/matrix.hpp"

using pilkit::Matrix;

namespace {

Matrix reconstruct(const pilkit::SvdResult& s) {
    Matrix us = s.u;
    for (std::size_t i = 0; i < us.rows(); ++i) {
        for (std::size_t j = 0; j < us.cols(); ++j) {
            us(i, j) *= s.singular_values[j];
        }
    }
    return us * s.v.transposed();
}

double orthonormality_defect(const Matrix& q) {
    const Matrix g = q.transposed() * q;
    return pilkit::frobenius_error(g, Matrix::identity(q.cols()));
}

/// Largest |A A+ A - A| relative to sigma_max, the natural scale for the
/// defining Moore-Penrose identities.
double mp_defect(const Matrix& a, const Matrix& p) {
    const double scale = std::max(1.0, pilkit::frobenius_norm(a));
    double d = pilkit::frobenius_error(a * p * a, a) / scale;
    d = std::max(d, pilkit::frobenius_error(p * a * p, p) /
                        std::max(1.0, pilkit::frobenius_norm(p)));
    const Matrix ap = a * p;
    const Matrix pa = p * a;
    d = std::max(d, pilkit::frobenius_error(ap, ap.transposed()));
    d = std::max(d, pilkit::frobenius_error(pa, pa.transposed()));
    return d;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("svd factors random matrices of every aspect ratio") {
    std::mt19937_64 rng(11);
    const std::size_t shapes[][2] = {{1, 1}, {1, 7},  {7, 1},  {5, 5},
                                     {9, 4}, {4, 9},  {20, 20}, {31, 8},
                                     {8, 31}, {40, 40}};
    for (const auto& sh : shapes) {
        const Matrix a = random_matrix(rng, sh[0], sh[1], -3.0, 3.0);
        const pilkit::SvdResult s = pilkit::svd(a);
        const std::size_t k = std::min(sh[0], sh[1]);
        REQUIRE(s.singular_values.size() == k);
        CHECK(std::is_sorted(s.singular_values.rbegin(), s.singular_values.rend()));
        CHECK(s.singular_values.back() >= 0.0);
        const double sigma_max = s.singular_values.front();
        CHECK(pilkit::frobenius_error(reconstruct(s), a) <= 1e-12 * std::max(1.0, sigma_max));
        CHECK(orthonormality_defect(s.u) <= 1e-12);
        CHECK(orthonormality_defect(s.v) <= 1e-12);
    }
}

TEST_CASE("singular values agree with the Eigen reference") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng() % 25);
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 25);
        const Matrix a = random_matrix(rng, m, n, -2.0, 2.0);
        const pilkit::SvdResult mine = pilkit::svd(a);
        const Eigen::VectorXd ref =
            Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(a)).singularValues();
        REQUIRE(static_cast<Eigen::Index>(mine.singular_values.size()) == ref.size());
        const double scale = std::max(1.0, ref.size() > 0 ? ref(0) : 0.0);
        for (Eigen::Index i = 0; i < ref.size(); ++i) {
            CHECK(std::abs(mine.singular_values[static_cast<std::size_t>(i)] - ref(i)) <=
                  1e-10 * scale);
        }
    }
}

TEST_CASE("pseudoinverse matches the Eigen reference entrywise") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng() % 14);
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 14);
        const Matrix a = random_matrix(rng, m, n);
        const Matrix mine = pilkit::pseudoinverse(a);
        const Matrix ref = from_eigen(eigen_pinv(to_eigen(a)));
        CHECK(pilkit::frobenius_error(mine, ref) <=
              1e-9 * std::max(1.0, pilkit::frobenius_norm(ref)));
    }
}

TEST_CASE("pseudoinverse satisfies the four Moore-Penrose identities") {
    std::mt19937_64 rng(41);
    SUBCASE("full-rank inputs") {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t m = 1 + static_cast<std::size_t>(rng() % 20);
            const std::size_t n = 1 + static_cast<std::size_t>(rng() % 20);
            const Matrix a = random_matrix(rng, m, n, -4.0, 4.0);
            CHECK(mp_defect(a, pilkit::pseudoinverse(a)) <= 1e-10);
        }
    }
    SUBCASE("rank-deficient inputs") {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t m = 3 + static_cast<std::size_t>(rng() % 15);
            const std::size_t n = 3 + static_cast<std::size_t>(rng() % 15);
            const std::size_t r = 1 + static_cast<std::size_t>(rng() % (std::min(m, n) - 1));
            const Matrix a = rank_deficient(rng, m, n, r);
            CHECK(pilkit::numerical_rank(a) == r);
            CHECK(mp_defect(a, pilkit::pseudoinverse(a)) <= 1e-9);
        }
    }
}

TEST_CASE("pseudoinverse of exact inverses and degenerate cases") {
    CHECK(pilkit::frobenius_error(pilkit::pseudoinverse(Matrix{{2.0}}), Matrix{{0.5}}) == 0.0);
    // diag(2, 4) inverts exactly in floating point
    const Matrix d{{2.0, 0.0}, {0.0, 4.0}};
    CHECK(pilkit::frobenius_error(pilkit::pseudoinverse(d), Matrix{{0.5, 0.0}, {0.0, 0.25}}) <=
          1e-15);
    // zero matrix: pinv is the zero matrix of transposed shape
    const Matrix z(3, 5, 0.0);
    const Matrix zp = pilkit::pseudoinverse(z);
    CHECK(zp.rows() == 5);
    CHECK(zp.cols() == 3);
    CHECK(pilkit::frobenius_norm(zp) == 0.0);
}

TEST_CASE("pseudoinverse solve has minimal Frobenius norm among all fits") {
    // For rank-deficient Y, W* = Y+ B fits Y W = B as well as any other
    // solution and has strictly smaller norm than W* plus a null-space shift.
    std::mt19937_64 rng(53);
    const Matrix y = rank_deficient(rng, 10, 6, 3);
    const Matrix b = random_matrix(rng, 10, 2);
    const Matrix y_pinv = pilkit::pseudoinverse(y);
    const Matrix w_star = y_pinv * b;

    // null-space projector I - Y+ Y
    const Matrix null_proj = Matrix::identity(6) - y_pinv * y;
    const Matrix shift = null_proj * random_matrix(rng, 6, 2);
    REQUIRE(pilkit::frobenius_norm(shift) > 1e-6);  // genuinely nonzero shift
    const Matrix w_alt = w_star + shift;

    // identical fit...
    CHECK(pilkit::frobenius_error(y * w_alt, y * w_star) <= 1e-10);
    // ...but strictly larger norm
    CHECK(pilkit::frobenius_norm(w_alt) > pilkit::frobenius_norm(w_star) + 1e-6);
}

TEST_CASE("rank decisions on matrices of known rank") {
    // outer product has rank 1
    const Matrix outer = Matrix{{1.0}, {2.0}, {3.0}} * Matrix{{4.0, 5.0}};
    CHECK(pilkit::numerical_rank(outer) == 1);

    // a tiny but above-tolerance second singular value counts...
    const Matrix nearly{{1.0, 0.0}, {0.0, 1e-10}};
    CHECK(pilkit::numerical_rank(nearly) == 2);
    // ...an explicitly raised tolerance discards it
    CHECK(pilkit::numerical_rank(nearly, 1e-8) == 1);
    // below the default tolerance (2 * 1 * eps) it never counts
    const Matrix degenerate{{1.0, 0.0}, {0.0, 1e-20}};
    CHECK(pilkit::numerical_rank(degenerate) == 1);

    const pilkit::RankInfo info = pilkit::rank_info(Matrix{{3.0, 0.0}, {0.0, 1.0}});
    CHECK(info.numerical_rank == 2);
    CHECK(info.singular_values[0] == doctest::Approx(3.0));
    CHECK(info.condition_estimate == doctest::Approx(3.0));
    CHECK(info.tolerance_used ==
          pilkit::default_rank_tolerance(2, 2, info.singular_values[0]));

    const pilkit::RankInfo zero = pilkit::rank_info(Matrix(4, 4, 0.0));
    CHECK(zero.numerical_rank == 0);
    CHECK(std::isinf(zero.condition_estimate));
}

TEST_CASE("rank_info from a precomputed factorization matches the matrix overload") {
    std::mt19937_64 rng(59);
    const Matrix a = rank_deficient(rng, 12, 9, 4);
    const pilkit::SvdResult s = pilkit::svd(a);
    const pilkit::RankInfo from_svd = pilkit::rank_info(s);
    const pilkit::RankInfo from_matrix = pilkit::rank_info(a);
    CHECK(from_svd.numerical_rank == from_matrix.numerical_rank);
    CHECK(from_svd.tolerance_used == doctest::Approx(from_matrix.tolerance_used));
}

TEST_CASE("default tolerance follows the max-dimension rule") {
    CHECK(pilkit::default_rank_tolerance(30, 7, 2.0) ==
          30.0 * 2.0 * std::numeric_limits<double>::epsilon());
    CHECK(pilkit::default_rank_tolerance(3, 50, 1.0) ==
          50.0 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("ill-conditioned input still satisfies the first identity") {
    // Hilbert matrix, condition number ~ 1.5e10 at n = 8: the identity can
    // only hold to about cond * eps ~ 3e-6 relative, so 1e-6 is the honest
    // expectation for a backward-stable factorization here.
    const std::size_t n = 8;
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 1.0 / static_cast<double>(i + j + 1);
        }
    }
    const Matrix p = pilkit::pseudoinverse(h);
    CHECK(pilkit::frobenius_error(h * p * h, h) <= 1e-6 * pilkit::frobenius_norm(h));
}

TEST_CASE("projector residual counts the dimension gap exactly") {
    std::mt19937_64 rng(61);
    // wide full-row-rank: Y Y+ = I, residual 0
    const Matrix wide = random_matrix(rng, 4, 9);
    CHECK(pilkit::projector_residual(wide, pilkit::pseudoinverse(wide)) <= 1e-20);

    // tall of rank r: Y Y+ is an orthogonal projector onto an r-dimensional
    // subspace of R^m, so ||Y Y+ - I||_F^2 = m - r
    const Matrix tall = rank_deficient(rng, 10, 6, 4);
    CHECK(pilkit::projector_residual(tall, pilkit::pseudoinverse(tall)) ==
          doctest::Approx(10.0 - 4.0).epsilon(1e-9));
}

TEST_CASE("frobenius norms") {
    CHECK(pilkit::frobenius_norm(Matrix{{3.0, 4.0}}) == doctest::Approx(5.0));
    CHECK(pilkit::frobenius_error(Matrix{{1.0, 1.0}}, Matrix{{1.0, 1.0}}) == 0.0);
    CHECK_THROWS_AS(pilkit::frobenius_error(Matrix(1, 2, 0.0), Matrix(2, 1, 0.0)),
                    pilkit::ShapeMismatchError);
}

}  // TEST_SUITE
