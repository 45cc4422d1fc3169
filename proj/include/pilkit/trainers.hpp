#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pilkit/activation.hpp"
#include "pilkit/dataset.hpp"
#include "pilkit/linalg.hpp"
#include "pilkit/network.hpp"

namespace pilkit {

/// Shared knob set for all four trainers; each algorithm reads the subset it
/// needs. hidden_width nullopt means auto (l = N, the exact-learning width).
struct TrainConfig {
    std::optional<std::size_t> hidden_width;
    double stopping_error = 1e-8;   // ePIL/PIL1 residual threshold E
    std::size_t max_depth = 16;     // ePIL/PIL1 growth cap
    double noise_stddev = 0.01;     // PIL1 perturbation scale
    std::uint64_t random_seed = 0;  // PIL0 weights, PIL1 noise
    double weight_lo = -1.0;        // PIL0 sampling interval
    double weight_hi = 1.0;
    Activation activation = Activation::of(ActivationKind::tanh);
    /// Output nonlinearity. Unset picks the algorithm's own default: the
    /// hidden activation for PIL (o = Tanh(Tanh(xV)W)), linear for the rest
    /// (W = Y+T). Must be invertible when non-linear (targets pass through
    /// its inverse).
    std::optional<Activation> output_activation;
    bool hidden_bias = false;  // append a ones column to every hidden output
};

enum class StopReason { residual_below_e, max_depth, single_pass };

std::string stop_reason_name(StopReason r);

/// Rank and projector diagnostics of one hidden-output matrix Y^l as it was
/// pseudo-inverted (bias column included when the policy appends one).
struct LayerStats {
    std::size_t layer = 0;
    RankInfo rank;
    double projector_residual = 0.0;  // ||Y Y+ - I||_F^2
};

struct TrainReport {
    double final_sse = 0.0;
    std::vector<LayerStats> per_layer;  // length == depth_used
    std::size_t depth_used = 0;
    StopReason stop_reason = StopReason::single_pass;
    std::size_t clipped_target_count = 0;
    double wall_time_seconds = 0.0;  // excluded from report comparisons
    std::vector<std::string> warnings;
};

struct TrainResult {
    PilNetwork network;
    TrainReport report;
};

/// V = X+ (first l columns when l < N), Y = act(XV), W = Y+ inv_act(T).
/// One pseudoinverse pair, no iteration.
TrainResult train_pil(const Dataset& data, const TrainConfig& cfg);

/// Same solve with V sampled i.i.d. uniform on [weight_lo, weight_hi].
TrainResult train_pil0(const Dataset& data, const TrainConfig& cfg);

/// Layer growth: starting from Y0 = X, add W^l = (Y^l)+ while the projector
/// residual ||Y^l (Y^l)+ - I||_F^2 stays at or above stopping_error, then
/// solve the output layer W^L = (Y^L)+ T.
TrainResult train_epil(const Dataset& data, const TrainConfig& cfg);

/// ePIL with each growth weight perturbed: W^l = (Y^l)+ + G, G i.i.d.
/// Gaussian(0, noise_stddev^2) sampled fresh per layer. The output solve is
/// left unperturbed. noise_stddev = 0 reproduces train_epil bitwise.
TrainResult train_pil1(const Dataset& data, const TrainConfig& cfg);

}  // namespace pilkit
