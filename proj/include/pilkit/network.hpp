#pragma once

#include <string>
#include <vector>

#include "pilkit/activation.hpp"
#include "pilkit/dataset.hpp"
#include "pilkit/matrix.hpp"

namespace pilkit {

/// Which constant-1 columns the forward map expects. Input bias is the
/// dataset-side [1|X] augmentation; hidden bias appends a ones column to
/// every hidden output before the next weight multiplication.
struct BiasPolicy {
    bool input_bias = true;
    bool hidden_bias = false;
};

/// Weight stack [W0, ..., WL] with shared hidden activation and a separate
/// output activation (linear or tanh in practice). Immutable after training;
/// forward evaluation is pure.
struct PilNetwork {
    std::vector<Matrix> layers;
    Activation hidden_activation = Activation::of(ActivationKind::tanh);
    Activation output_activation = Activation::of(ActivationKind::linear);
    BiasPolicy bias_policy;
    std::string meta;  ///< provenance: algorithm, seed, source dataset
};

/// o = act_out( ... act_hidden(act_hidden(x W0) W1) ... WL ). x must already
/// carry the input bias column when bias_policy.input_bias is set. A
/// single-layer stack (layer growth that stopped before adding any hidden
/// mapping) evaluates as o = act_out(x W0).
Matrix forward(const PilNetwork& net, const Matrix& x);

/// [y | 1]: the hidden-side bias column, appended so trained weight shapes
/// and the forward map agree by construction.
Matrix append_ones_column(const Matrix& y);

/// Training objective: sse = ||O - T||_F^2 / (2N).
double sse_value(const Matrix& output, const Matrix& target);
double sse(const PilNetwork& net, const Matrix& x, const Matrix& t);
double sse(const PilNetwork& net, const Dataset& data);

/// Versioned binary model image: magic, format version, activation kinds and
/// params, bias flags, provenance string, then each layer as dims plus
/// little-endian IEEE-754 doubles. Round trip is bit-exact.
std::string serialize(const PilNetwork& net);
PilNetwork deserialize(const std::string& bytes);

void save_pilnet(const PilNetwork& net, const std::string& path);
PilNetwork load_pilnet(const std::string& path);

}  // namespace pilkit
