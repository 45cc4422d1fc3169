#include "pilkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pilkit/errors.hpp"
#include "pilkit/network.hpp"
#include "pilkit/random.hpp"
#include "pilkit/trainers.hpp"

namespace pilkit {

namespace {

void validate_probe(const SaturationProbe& probe) {
    if (probe.n_samples < 2) {
        throw ConfigError("saturation probe needs n_samples >= 2");
    }
    if (probe.n_features < 1) {
        throw ConfigError("saturation probe needs n_features >= 1");
    }
    if (!(0.0 < probe.weight_lo && probe.weight_lo < probe.weight_hi)) {
        throw ConfigError("saturation probe needs 0 < weight_lo < weight_hi");
    }
    if (!(probe.input_lo < probe.input_hi)) {
        throw ConfigError("saturation probe needs input_lo < input_hi");
    }
    if (probe.epsilon_schedule.empty()) {
        throw ConfigError("epsilon schedule is empty");
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double e : probe.epsilon_schedule) {
        if (!(e > 0.0) || !(e < prev)) {
            throw ConfigError("epsilon schedule must be strictly positive and decreasing");
        }
        prev = e;
    }
}

}  // namespace

RankSweepResult theorem1_sweep(const SaturationProbe& probe) {
    validate_probe(probe);

    Rng rng(probe.seed);
    const Matrix x = augment_bias(
        rng.uniform_matrix(probe.n_samples, probe.n_features, probe.input_lo, probe.input_hi));
    // One base draw from (a, b); each epsilon rescales it onto (a/eps, b/eps).
    const Matrix w_base = rng.uniform_matrix(probe.n_features + 1, probe.n_samples,
                                             probe.weight_lo, probe.weight_hi);

    RankSweepResult result;
    const auto bounds = codomain_bounds(probe.activation);
    result.bounded_activation = bounds.has_value();
    if (!result.bounded_activation) {
        result.note = "theorem inapplicable: unbounded activation '" +
                      activation_name(probe.activation.kind) + "'";
    }

    result.per_epsilon.reserve(probe.epsilon_schedule.size());
    for (double eps : probe.epsilon_schedule) {
        const Matrix h = apply(probe.activation, x * ((1.0 / eps) * w_base));
        EpsilonStats stats;
        stats.epsilon = eps;
        stats.rank = rank_info(h);
        double mn = h(0, 0), mx = h(0, 0);
        std::size_t saturated = 0;
        for (double v : h.entries()) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            if (bounds &&
                (v <= bounds->first + kSaturationDelta || v >= bounds->second - kSaturationDelta)) {
                ++saturated;
            }
        }
        stats.saturation_fraction =
            static_cast<double>(saturated) / static_cast<double>(h.size());
        stats.min_entry = mn;
        stats.max_entry = mx;
        result.per_epsilon.push_back(std::move(stats));
    }
    return result;
}

double fx_value(double x) {
    const double u = 10.0 * x - 4.0;
    const double v = 80.0 * x - 40.0;
    const double w = 80.0 * x - 20.0;
    return 0.2 * std::exp(-u * u) + 0.5 * std::exp(-v * v) + 0.3 * std::exp(-w * w);
}

Dataset counterexample_fx(std::size_t n_points) {
    if (n_points < 2) {
        throw ConfigError("counterexample_fx needs n_points >= 2");
    }
    Matrix x_raw(n_points, 1, 0.0);
    Matrix t(n_points, 1, 0.0);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n_points - 1);
        x_raw(i, 0) = x;
        t(i, 0) = fx_value(x);
    }
    return Dataset{augment_bias(x_raw), std::move(t), 1, TargetEncoding{},
                   "fx(" + std::to_string(n_points) + ")"};
}

FxRankReport fx_rank_experiment(std::size_t n_points, std::size_t hidden_width,
                                std::uint64_t seed) {
    if (hidden_width > n_points) {
        throw ConfigError("fx rank experiment needs hidden_width <= n_points");
    }
    const Dataset data = counterexample_fx(n_points);

    TrainConfig cfg;
    cfg.hidden_width = hidden_width;
    cfg.random_seed = seed;
    cfg.weight_lo = -1.0;
    cfg.weight_hi = 1.0;
    cfg.output_activation = Activation::of(ActivationKind::linear);  // W = H+ T
    const TrainResult run = train_pil0(data, cfg);

    FxRankReport report;
    report.n_points = n_points;
    report.hidden_width = hidden_width;
    report.seed = seed;
    report.rank = run.report.per_layer.front().rank;
    report.condition = report.rank.condition_estimate;
    report.achieved_sse = run.report.final_sse;
    return report;
}

double error_floor(const Dataset& data, std::size_t hidden_width, std::uint64_t seed) {
    if (hidden_width >= data.n_samples()) {
        throw ConfigError("error floor argument needs hidden_width < N (got " +
                          std::to_string(hidden_width) + " vs N = " +
                          std::to_string(data.n_samples()) + ")");
    }
    // Same draw order and hidden map as train_pil0 with this seed, so the
    // floor refers to the very H the trainer would build.
    Rng rng(seed);
    const Matrix v = rng.uniform_matrix(data.x.cols(), hidden_width, -1.0, 1.0);
    const Matrix h = apply(Activation::of(ActivationKind::tanh), data.x * v);
    // P T associated as H (H+ T): the same evaluation order the trainer's
    // forward pass uses, so the floor and the achieved residual agree to
    // rounding even when H is badly conditioned.
    const Matrix pt = h * (pseudoinverse(h) * data.t);
    return frobenius_error(pt, data.t);
}

double single_precision_range() {
    return std::pow(10.0, 38.53);
}

FloatRangeReport float_range_guard(const Matrix& m) {
    FloatRangeReport report;
    const double range = single_precision_range();
    for (double v : m.entries()) {
        const double a = std::abs(v);
        report.max_abs_entry = std::max(report.max_abs_entry, a);
        if (a > range) {
            ++report.beyond_single_range;
        }
        if (a >= 1.0) {
            ++report.arctanh_out_of_domain;
        } else if (a > 1.0 - kInverseClipDelta) {
            ++report.arctanh_near_boundary;
        }
    }
    return report;
}

}  // namespace pilkit
