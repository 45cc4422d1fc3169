#include "pilkit/trainers.hpp"

#include <chrono>
#include <utility>

#include "pilkit/errors.hpp"
#include "pilkit/random.hpp"

namespace pilkit {

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::residual_below_e: return "residual_below_E";
        case StopReason::max_depth: return "max_depth";
        case StopReason::single_pass: return "single_pass";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_config(const TrainConfig& cfg) {
    if (!(cfg.stopping_error > 0.0)) {
        throw ConfigError("stopping_error must be > 0");
    }
    if (!(cfg.weight_lo < cfg.weight_hi)) {
        throw ConfigError("weight interval needs lo < hi, got [" +
                          std::to_string(cfg.weight_lo) + ", " + std::to_string(cfg.weight_hi) +
                          "]");
    }
    if (cfg.noise_stddev < 0.0) {
        throw ConfigError("noise_stddev must be >= 0");
    }
    if (cfg.max_depth < 1) {
        throw ConfigError("max_depth must be >= 1");
    }
    if (cfg.hidden_width && *cfg.hidden_width == 0) {
        throw ConfigError("hidden_width must be >= 1");
    }
}

Activation resolve_output(const TrainConfig& cfg, Activation fallback) {
    const Activation out = cfg.output_activation.value_or(fallback);
    if (!is_invertible(out)) {
        throw ConfigError("output activation '" + activation_name(out.kind) +
                          "' has no inverse; targets cannot be encoded through it");
    }
    return out;
}

struct EncodedTargets {
    Matrix b;
    std::size_t clipped = 0;
};

/// B = inverse-activation image of T (B = T for a linear output).
EncodedTargets encode_targets_through(const Activation& out_act, const Matrix& t) {
    if (out_act.kind == ActivationKind::linear) {
        return {t, 0};
    }
    InverseResult inv = apply_inverse(out_act, t);
    return {std::move(inv.values), inv.clipped_count};
}

void warn_duplicate_rows(const Matrix& x, std::vector<std::string>& warnings) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = i + 1; j < x.rows(); ++j) {
            bool same = true;
            for (std::size_t k = 0; k < x.cols() && same; ++k) {
                same = x(i, k) == x(j, k);
            }
            if (same) {
                warnings.push_back("duplicate input rows " + std::to_string(i) + " and " +
                                   std::to_string(j) +
                                   ": exact learning is not achievable on this dataset");
                return;  // one witness is enough
            }
        }
    }
}

/// V is fixed; compute Y = act(XV), solve W = Y+ B, assemble [V, W].
/// Shared by PIL (V = X+) and PIL0 (V random).
TrainResult shln_solve(const Dataset& data, const TrainConfig& cfg, Matrix v,
                       Activation out_act, std::string meta) {
    const auto t0 = Clock::now();
    TrainReport rep;
    warn_duplicate_rows(data.x, rep.warnings);

    Matrix y = apply(cfg.activation, data.x * v);
    if (cfg.hidden_bias) {
        y = append_ones_column(y);
    }
    const SvdResult ysvd = svd(y);
    RankInfo yrank = rank_info(ysvd);
    const Matrix ypinv = pseudoinverse(ysvd);
    const double presid = projector_residual(y, ypinv);

    EncodedTargets enc = encode_targets_through(out_act, data.t);
    Matrix w = ypinv * enc.b;

    const std::size_t n = data.n_samples();
    if (v.cols() >= n && yrank.numerical_rank < n) {
        rep.warnings.push_back("exact learning not achievable: rank(Y) = " +
                               std::to_string(yrank.numerical_rank) + " < N = " +
                               std::to_string(n));
    }

    rep.per_layer.push_back(LayerStats{0, std::move(yrank), presid});
    rep.depth_used = 1;
    rep.stop_reason = StopReason::single_pass;
    rep.clipped_target_count = enc.clipped;

    PilNetwork net{{std::move(v), std::move(w)},
                   cfg.activation,
                   out_act,
                   BiasPolicy{true, cfg.hidden_bias},
                   std::move(meta)};
    const Matrix o = forward(net, data.x);
    require_finite(o, "network output");
    rep.final_sse = sse_value(o, data.t);
    rep.wall_time_seconds = seconds_since(t0);
    return TrainResult{std::move(net), std::move(rep)};
}

/// Layer growth shared by ePIL (stddev = 0) and PIL1 (stddev > 0). The
/// stopping functional always uses the unperturbed pseudoinverse; noise only
/// enters the weights that feed the next layer.
TrainResult grown_solve(const Dataset& data, const TrainConfig& cfg, double stddev,
                        std::string meta) {
    const auto t0 = Clock::now();
    Rng rng(cfg.random_seed);
    TrainReport rep;
    warn_duplicate_rows(data.x, rep.warnings);

    const Activation out_act = resolve_output(cfg, Activation::of(ActivationKind::linear));
    const EncodedTargets enc = encode_targets_through(out_act, data.t);

    std::vector<Matrix> layers;
    Matrix y = data.x;
    Matrix y_pinv = Matrix(1, 1, 0.0);  // overwritten before use
    for (std::size_t depth = 1;; ++depth) {
        const SvdResult ysvd = svd(y);
        RankInfo yrank = rank_info(ysvd);
        Matrix p = pseudoinverse(ysvd);
        const double resid = projector_residual(y, p);
        rep.per_layer.push_back(LayerStats{depth - 1, std::move(yrank), resid});

        if (resid < cfg.stopping_error) {
            rep.stop_reason = StopReason::residual_below_e;
            y_pinv = std::move(p);
            break;
        }
        if (depth == cfg.max_depth) {
            rep.stop_reason = StopReason::max_depth;
            rep.warnings.push_back("projector residual " + std::to_string(resid) +
                                   " still above stopping error at max depth " +
                                   std::to_string(cfg.max_depth));
            y_pinv = std::move(p);
            break;
        }

        // Perturbing a copy (rather than adding a zero matrix when stddev is
        // 0) keeps the zero-noise trajectory bitwise equal to plain growth:
        // x + 0.0 may still flip the sign of a -0.0 entry.
        Matrix w = p;
        if (stddev > 0.0) {
            w = w + rng.gaussian_matrix(w.rows(), w.cols(), stddev);
        }
        y = apply(cfg.activation, y * w);
        if (cfg.hidden_bias) {
            y = append_ones_column(y);
        }
        layers.push_back(std::move(w));
    }

    layers.push_back(y_pinv * enc.b);
    rep.depth_used = rep.per_layer.size();
    rep.clipped_target_count = enc.clipped;

    PilNetwork net{std::move(layers),
                   cfg.activation,
                   out_act,
                   BiasPolicy{true, cfg.hidden_bias},
                   std::move(meta)};
    const Matrix o = forward(net, data.x);
    require_finite(o, "network output");
    rep.final_sse = sse_value(o, data.t);
    rep.wall_time_seconds = seconds_since(t0);
    return TrainResult{std::move(net), std::move(rep)};
}

std::string make_meta(const char* algo, const Dataset& data, const TrainConfig& cfg) {
    return std::string("algo=") + algo + " seed=" + std::to_string(cfg.random_seed) +
           " activation=" + activation_name(cfg.activation.kind) + " source=" + data.source;
}

}  // namespace

TrainResult train_pil(const Dataset& data, const TrainConfig& cfg) {
    validate_config(cfg);
    if (!is_invertible(cfg.activation)) {
        throw ConfigError("PIL needs an invertible activation, got '" +
                          activation_name(cfg.activation.kind) + "'");
    }
    const std::size_t n = data.n_samples();
    const std::size_t l = cfg.hidden_width.value_or(n);
    if (l > n) {
        throw ConfigError("PIL hidden width " + std::to_string(l) +
                          " exceeds sample count " + std::to_string(n) +
                          " (V = X+ has only N columns)");
    }
    const Activation out_act = resolve_output(cfg, cfg.activation);

    Matrix v = pseudoinverse(data.x);  // d x N
    if (l < n) {
        Matrix head(v.rows(), l, 0.0);
        for (std::size_t i = 0; i < v.rows(); ++i) {
            for (std::size_t j = 0; j < l; ++j) {
                head(i, j) = v(i, j);
            }
        }
        v = std::move(head);
    }
    return shln_solve(data, cfg, std::move(v), out_act, make_meta("pil", data, cfg));
}

TrainResult train_pil0(const Dataset& data, const TrainConfig& cfg) {
    validate_config(cfg);
    const std::size_t l = cfg.hidden_width.value_or(data.n_samples());
    const Activation fallback = is_invertible(cfg.activation)
                                    ? cfg.activation
                                    : Activation::of(ActivationKind::linear);
    const Activation out_act = resolve_output(cfg, fallback);

    Rng rng(cfg.random_seed);
    Matrix v = rng.uniform_matrix(data.x.cols(), l, cfg.weight_lo, cfg.weight_hi);
    return shln_solve(data, cfg, std::move(v), out_act, make_meta("pil0", data, cfg));
}

TrainResult train_epil(const Dataset& data, const TrainConfig& cfg) {
    validate_config(cfg);
    return grown_solve(data, cfg, 0.0, make_meta("epil", data, cfg));
}

TrainResult train_pil1(const Dataset& data, const TrainConfig& cfg) {
    validate_config(cfg);
    return grown_solve(data, cfg, cfg.noise_stddev, make_meta("pil1", data, cfg));
}

}  // namespace pilkit
