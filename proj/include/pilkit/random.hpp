#pragma once

#include <cstdint>
#include <random>

#include "pilkit/matrix.hpp"

namespace pilkit {

/// Deterministic random source. All draws go through hand-rolled transforms
/// over mt19937_64 raw output so identical seeds give bitwise-identical
/// streams on every platform; std::uniform_real_distribution makes no such
/// promise across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Zero-mean gaussian via Box-Muller. Always consumes exactly two uniform
    /// draws and uses only the cosine branch, so the stream position after a
    /// call never depends on the values drawn.
    double gaussian(double stddev);

    /// Row-major fill, row by row, left to right.
    Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi);
    Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double stddev);

private:
    std::mt19937_64 engine_;
};

}  // namespace pilkit
