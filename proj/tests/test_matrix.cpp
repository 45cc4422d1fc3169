#include <doctest.h>

#include <cmath>
#include <limits>

#include "pilkit/errors.hpp"
#include "pilkit/matrix.hpp"

using pilkit::Matrix;

TEST_SUITE("matrix") {

TEST_CASE("construction validates dimensions and entries") {
    CHECK_THROWS_AS(Matrix(0, 3), pilkit::InvalidMatrixError);
    CHECK_THROWS_AS(Matrix(3, 0), pilkit::InvalidMatrixError);
    CHECK_THROWS_AS(Matrix({{1.0, std::nan("")}}), pilkit::InvalidMatrixError);
    CHECK_THROWS_AS(Matrix({{std::numeric_limits<double>::infinity()}}),
                    pilkit::InvalidMatrixError);
    CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {3.0}}), pilkit::InvalidMatrixError);
    CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1.0, 2.0, 3.0}),
                    pilkit::InvalidMatrixError);

    const Matrix a(2, 3, 1.5);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a(1, 2) == 1.5);
}

TEST_CASE("product matches a hand-computed example") {
    const Matrix a{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
    const Matrix b{{7.0, 8.0}, {9.0, 10.0}, {11.0, 12.0}};
    const Matrix ab = a * b;
    // row 0: 1*7 + 2*9 + 3*11 = 58, 1*8 + 2*10 + 3*12 = 64
    CHECK(ab == Matrix{{58.0, 64.0}, {139.0, 154.0}});
    CHECK_THROWS_AS(b * Matrix(4, 4, 1.0), pilkit::ShapeMismatchError);
}

TEST_CASE("identity is a two-sided multiplicative unit") {
    const Matrix a{{1.0, -2.5}, {0.25, 4.0}, {3.0, 0.0}};
    CHECK(a * Matrix::identity(2) == a);
    CHECK(Matrix::identity(3) * a == a);
}

TEST_CASE("transpose swaps indices and is an involution") {
    const Matrix a{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
    const Matrix at = a.transposed();
    CHECK(at.rows() == 3);
    CHECK(at.cols() == 2);
    CHECK(at(2, 1) == 6.0);
    CHECK(at.transposed() == a);
}

TEST_CASE("elementwise sum, difference and scaling") {
    const Matrix a{{1.0, 2.0}, {3.0, 4.0}};
    const Matrix b{{0.5, -1.0}, {2.0, 0.0}};
    CHECK(a + b == Matrix{{1.5, 1.0}, {5.0, 4.0}});
    CHECK(a - b == Matrix{{0.5, 3.0}, {1.0, 4.0}});
    CHECK(2.0 * a == Matrix{{2.0, 4.0}, {6.0, 8.0}});
    CHECK_THROWS_AS(a + Matrix(1, 2, 0.0), pilkit::ShapeMismatchError);
}

TEST_CASE("require_finite names the offending operand") {
    Matrix a(2, 2, 1.0);
    a(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(a.is_finite());
    CHECK_THROWS_WITH_AS(pilkit::require_finite(a, "hidden output"),
                         doctest::Contains("hidden output"), pilkit::InvalidMatrixError);
    a(0, 1) = 0.0;
    CHECK_NOTHROW(pilkit::require_finite(a, "hidden output"));
}

}  // TEST_SUITE
