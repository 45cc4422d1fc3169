#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pilkit/activation.hpp"
#include "pilkit/dataset.hpp"
#include "pilkit/linalg.hpp"

namespace pilkit {

/// Saturation/rank-collapse sweep setup. Weights and bias are one matrix
/// drawn from (weight_lo, weight_hi) and rescaled by 1/epsilon, so shrinking
/// epsilon widens the sampling interval exactly as the limit construction
/// prescribes — and makes saturation growth monotone by construction.
struct SaturationProbe {
    Activation activation = Activation::of(ActivationKind::sigmoid);
    double weight_lo = 1.0;  // a, with 0 < a < b
    double weight_hi = 2.0;  // b
    std::vector<double> epsilon_schedule = {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double input_lo = 0.0;
    double input_hi = 1.0;
    std::size_t n_samples = 50;
    std::size_t n_features = 4;  // raw feature count; bias column is added on top
    std::uint64_t seed = 0;
};

struct EpsilonStats {
    double epsilon = 0.0;
    RankInfo rank;                    // of H = act(X W/eps)
    double saturation_fraction = 0.0; // entries within 1e-12 of a codomain bound
    double min_entry = 0.0;
    double max_entry = 0.0;
};

struct RankSweepResult {
    std::vector<EpsilonStats> per_epsilon;  // one row per schedule entry
    bool bounded_activation = true;
    std::string note;  // "theorem inapplicable: unbounded" for linear probes
};

/// Entry counts as saturated when within this distance of a codomain bound.
inline constexpr double kSaturationDelta = 1e-12;

RankSweepResult theorem1_sweep(const SaturationProbe& probe);

/// Equispaced samples of the three-bump benchmark
/// f(x) = 0.2 exp(-(10x-4)^2) + 0.5 exp(-(80x-40)^2) + 0.3 exp(-(80x-20)^2)
/// on [0, 1], returned as a bias-augmented regression dataset.
double fx_value(double x);
Dataset counterexample_fx(std::size_t n_points);

struct FxRankReport {
    std::size_t n_points = 0;
    std::size_t hidden_width = 0;
    std::uint64_t seed = 0;
    RankInfo rank;             // of the random-weight hidden output matrix H
    double condition = 0.0;    // rank.condition_estimate, surfaced for reports
    double achieved_sse = 0.0; // linear-output least-squares fit on H
};

/// Random hidden layer (weights/bias uniform [-1,1]) over counterexample_fx
/// data: measures how deficient rank(H) actually is and what SSE the
/// least-squares output solve reaches on it.
FxRankReport fx_rank_experiment(std::size_t n_points, std::size_t hidden_width,
                                std::uint64_t seed);

/// ||PT - T||_F with P = H H+ for a seeded random hidden matrix of width
/// hidden_width < N: the exact lower bound any output weights can reach on
/// that H. Samples H exactly as train_pil0 does for the same seed.
double error_floor(const Dataset& data, std::size_t hidden_width, std::uint64_t seed);

struct FloatRangeReport {
    double max_abs_entry = 0.0;
    std::size_t beyond_single_range = 0;     // |v| > 10^38.53
    std::size_t arctanh_out_of_domain = 0;   // |v| >= 1
    std::size_t arctanh_near_boundary = 0;   // within the inverse clip delta of ±1
};

/// Effective single-precision magnitude limit the range guard checks against.
double single_precision_range();

/// Advisory scan: flags entries beyond the single-precision range and
/// entries that ArcTanh would reject or clip. Never throws.
FloatRangeReport float_range_guard(const Matrix& m);

}  // namespace pilkit
