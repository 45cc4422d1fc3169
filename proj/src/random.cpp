#include "pilkit/random.hpp"

#include <cmath>
#include <numbers>

namespace pilkit {

double Rng::gaussian(double stddev) {
    // unit() can return exactly 0, which log() rejects; nudge into (0, 1).
    double u1 = unit();
    double u2 = unit();
    if (u1 <= 0.0) {
        u1 = 0x1.0p-53;
    }
    const double r = std::sqrt(-2.0 * std::log(u1));
    return stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix Rng::uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi) {
    Matrix m(rows, cols, 0.0);
    for (double& v : m.entries()) {
        v = uniform(lo, hi);
    }
    return m;
}

Matrix Rng::gaussian_matrix(std::size_t rows, std::size_t cols, double stddev) {
    Matrix m(rows, cols, 0.0);
    for (double& v : m.entries()) {
        v = gaussian(stddev);
    }
    return m;
}

}  // namespace pilkit
