#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pilkit/errors.hpp"
#include "pilkit/linalg.hpp"
#include "pilkit/trainers.hpp"

using pilkit::Activation;
using pilkit::ActivationKind;
using pilkit::Dataset;
using pilkit::Matrix;
using pilkit::StopReason;
using pilkit::TrainConfig;
using pilkit::TrainResult;

namespace {

Dataset make_dataset(const Matrix& x_raw, Matrix t) {
    return Dataset{pilkit::augment_bias(x_raw), std::move(t), x_raw.cols(),
                   pilkit::TargetEncoding{}, "unit-test"};
}

Dataset xor_dataset() {
    return make_dataset(Matrix{{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}},
                        Matrix{{-0.8}, {0.8}, {0.8}, {-0.8}});
}

/// exact-to-the-bit equality, stricter than operator== (distinguishes -0.0)
bool bitwise_equal(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.entries().data(), b.entries().data(),
                       a.size() * sizeof(double)) == 0;
}

/// N samples, d raw features, targets uniform inside the tanh codomain
Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d_raw,
                       std::size_t t_cols = 1) {
    return make_dataset(random_matrix(rng, n, d_raw, -2.0, 2.0),
                        random_matrix(rng, n, t_cols, -0.8, 0.8));
}

}  // namespace

TEST_SUITE("trainers") {

TEST_CASE("pil learns xor exactly at the auto width") {
    const TrainResult res = pilkit::train_pil(xor_dataset(), TrainConfig{});
    CHECK(res.report.final_sse < 1e-12);
    CHECK(res.report.depth_used == 1);
    CHECK(res.report.stop_reason == StopReason::single_pass);
    CHECK(res.report.warnings.empty());
    REQUIRE(res.report.per_layer.size() == 1);
    // tanh lifts the rank-3 input product to full rank 4
    CHECK(res.report.per_layer[0].rank.numerical_rank == 4);
    REQUIRE(res.network.layers.size() == 2);
    // the report's sse is exactly what the stored network reproduces
    CHECK(pilkit::sse(res.network, xor_dataset()) == res.report.final_sse);
    CHECK(res.network.meta.find("algo=pil ") != std::string::npos);
    CHECK(res.network.meta.find("source=unit-test") != std::string::npos);
}

TEST_CASE("pil drives sse to machine zero on generic full-row-rank data") {
    std::mt19937_64 rng(101);
    const Dataset data = random_dataset(rng, 6, 8, 2);
    const TrainResult res = pilkit::train_pil(data, TrainConfig{});
    CHECK(res.report.final_sse < 1e-10);
    CHECK(res.report.per_layer[0].rank.numerical_rank == 6);
}

TEST_CASE("pil configuration failures") {
    const Dataset data = xor_dataset();
    TrainConfig cfg;
    cfg.hidden_width = 5;  // V = X+ has only N = 4 columns
    CHECK_THROWS_AS(pilkit::train_pil(data, cfg), pilkit::ConfigError);

    TrainConfig step_cfg;
    step_cfg.activation = Activation::of(ActivationKind::step);
    CHECK_THROWS_AS(pilkit::train_pil(data, step_cfg), pilkit::ConfigError);

    // raw 0/1 targets sit on the tanh codomain boundary: no preimage
    const Dataset raw01 = make_dataset(Matrix{{0.0}, {1.0}}, Matrix{{0.0}, {1.0}});
    CHECK_THROWS_AS(pilkit::train_pil(raw01, TrainConfig{}), pilkit::DomainError);
}

TEST_CASE("pil0 reaches exact learning with random hidden weights") {
    std::mt19937_64 rng(103);
    const Dataset data = random_dataset(rng, 8, 2);
    TrainConfig cfg;
    cfg.random_seed = 5;
    const TrainResult res = pilkit::train_pil0(data, cfg);
    CHECK(res.report.final_sse < 1e-8);
    CHECK(res.report.per_layer[0].rank.numerical_rank == 8);
    CHECK(res.report.stop_reason == StopReason::single_pass);
    CHECK(res.network.meta.find("algo=pil0 ") != std::string::npos);
}

TEST_CASE("pil0 reports duplicate rows and the resulting sse floor exactly") {
    // two identical inputs with conflicting targets: the least-squares fit
    // must split the difference, so sse = (dt/2)^2 * 2 / (2N) = 1/32 here
    std::mt19937_64 rng(107);
    Matrix x_raw = random_matrix(rng, 8, 3, -2.0, 2.0);
    for (std::size_t j = 0; j < 3; ++j) {
        x_raw(7, j) = x_raw(6, j);
    }
    Matrix t = random_matrix(rng, 8, 1, -0.5, 0.5);
    t(6, 0) = 0.5;
    t(7, 0) = -0.5;
    const Dataset data = make_dataset(x_raw, t);

    TrainConfig cfg;
    cfg.output_activation = Activation::of(ActivationKind::linear);
    const TrainResult res = pilkit::train_pil0(data, cfg);

    REQUIRE_FALSE(res.report.warnings.empty());
    CHECK(res.report.warnings.front().find("duplicate input rows 6 and 7") !=
          std::string::npos);
    CHECK(res.report.per_layer[0].rank.numerical_rank == 7);
    CHECK(res.report.final_sse == doctest::Approx(0.03125).epsilon(1e-6));
}

TEST_CASE("pil0 is bitwise deterministic in the seed") {
    std::mt19937_64 rng(109);
    const Dataset data = random_dataset(rng, 6, 3);
    TrainConfig cfg;
    cfg.random_seed = 77;
    const TrainResult a = pilkit::train_pil0(data, cfg);
    const TrainResult b = pilkit::train_pil0(data, cfg);
    REQUIRE(a.network.layers.size() == b.network.layers.size());
    for (std::size_t i = 0; i < a.network.layers.size(); ++i) {
        CHECK(bitwise_equal(a.network.layers[i], b.network.layers[i]));
    }
    CHECK(a.report.final_sse == b.report.final_sse);

    cfg.random_seed = 78;
    const TrainResult c = pilkit::train_pil0(data, cfg);
    CHECK_FALSE(bitwise_equal(a.network.layers[0], c.network.layers[0]));
}

TEST_CASE("pil0 with a non-invertible hidden activation solves through a linear output") {
    std::mt19937_64 rng(113);
    const Dataset data = random_dataset(rng, 5, 2);
    TrainConfig cfg;
    cfg.activation = Activation::of(ActivationKind::gaussian);
    const TrainResult res = pilkit::train_pil0(data, cfg);
    CHECK(res.network.output_activation.kind == ActivationKind::linear);
    CHECK(std::isfinite(res.report.final_sse));
}

TEST_CASE("epil stops at depth one when the input has full row rank") {
    std::mt19937_64 rng(127);
    const Dataset data = random_dataset(rng, 5, 4);  // x is 5x5, full rank a.s.
    const TrainResult res = pilkit::train_epil(data, TrainConfig{});
    CHECK(res.report.depth_used == 1);
    CHECK(res.report.stop_reason == StopReason::residual_below_e);
    REQUIRE(res.network.layers.size() == 1);
    CHECK(res.report.per_layer[0].projector_residual < 1e-8);
    CHECK(res.report.final_sse < 1e-10);
    CHECK(res.network.output_activation.kind == ActivationKind::linear);
    CHECK(pilkit::sse(res.network, data) == res.report.final_sse);
}

TEST_CASE("epil grows exactly one hidden layer on rank-deficient input") {
    std::mt19937_64 rng(131);
    const Dataset data = random_dataset(rng, 8, 3);  // x is 8x4: rank 4 < N
    const TrainResult res = pilkit::train_epil(data, TrainConfig{});
    CHECK(res.report.depth_used == 2);
    CHECK(res.report.stop_reason == StopReason::residual_below_e);
    REQUIRE(res.report.per_layer.size() == 2);
    CHECK(res.report.per_layer[0].rank.numerical_rank == 4);
    // ||X X+ - I||_F^2 counts the rank gap: 8 - 4
    CHECK(res.report.per_layer[0].projector_residual == doctest::Approx(4.0).epsilon(1e-9));
    // tanh of the rank-4 projector image is generically full rank
    CHECK(res.report.per_layer[1].rank.numerical_rank == 8);
    CHECK(res.report.per_layer[1].projector_residual < 1e-8);
    CHECK(res.report.final_sse < 1e-8);
    REQUIRE(res.network.layers.size() == 2);
}

TEST_CASE("epil max_depth stop is honest about the unresolved residual") {
    std::mt19937_64 rng(137);
    const Dataset data = random_dataset(rng, 8, 3);
    TrainConfig cfg;
    cfg.max_depth = 1;
    const TrainResult res = pilkit::train_epil(data, cfg);
    CHECK(res.report.depth_used == 1);
    CHECK(res.report.stop_reason == StopReason::max_depth);
    REQUIRE_FALSE(res.report.warnings.empty());
    CHECK(res.report.warnings.back().find("max depth") != std::string::npos);
    // rank-4 hidden image cannot carry 8 generic targets
    CHECK(res.report.final_sse > 1e-6);
}

TEST_CASE("pil1 with zero noise reproduces epil bit for bit") {
    std::mt19937_64 rng(139);
    const Dataset data = random_dataset(rng, 8, 3);
    TrainConfig cfg;
    cfg.noise_stddev = 0.0;
    cfg.random_seed = 9;
    const TrainResult e = pilkit::train_epil(data, cfg);
    const TrainResult p = pilkit::train_pil1(data, cfg);
    REQUIRE(e.network.layers.size() == p.network.layers.size());
    for (std::size_t i = 0; i < e.network.layers.size(); ++i) {
        CHECK(bitwise_equal(e.network.layers[i], p.network.layers[i]));
    }
    CHECK(e.report.final_sse == p.report.final_sse);
    CHECK(e.network.meta.find("algo=epil ") != std::string::npos);
    CHECK(p.network.meta.find("algo=pil1 ") != std::string::npos);
}

TEST_CASE("pil1 noise perturbs the growth weights but never the output solve") {
    std::mt19937_64 rng(149);
    const Dataset data = random_dataset(rng, 8, 3);
    TrainConfig cfg;
    cfg.noise_stddev = 0.05;
    cfg.random_seed = 3;
    const TrainResult noisy = pilkit::train_pil1(data, cfg);
    const TrainResult clean = pilkit::train_epil(data, cfg);
    REQUIRE(noisy.network.layers.size() >= 2);
    CHECK_FALSE(bitwise_equal(noisy.network.layers[0], clean.network.layers[0]));

    // reconstruct the final hidden output the trainer saw and confirm the
    // last layer is the plain least-squares solve on it, noise-free
    Matrix y = data.x;
    for (std::size_t l = 0; l + 1 < noisy.network.layers.size(); ++l) {
        y = pilkit::apply(noisy.network.hidden_activation, y * noisy.network.layers[l]);
    }
    const Matrix expected_w = pilkit::pseudoinverse(y) * data.t;
    CHECK(pilkit::frobenius_error(noisy.network.layers.back(), expected_w) < 1e-12);
}

TEST_CASE("targets just inside the codomain boundary are clipped and counted") {
    const Dataset data = make_dataset(Matrix{{0.25, 0.5}, {0.75, 0.1}},
                                      Matrix{{1.0 - 1e-13}, {0.5}});
    const TrainResult res = pilkit::train_pil(data, TrainConfig{});
    CHECK(res.report.clipped_target_count == 1);
    CHECK(std::isfinite(res.report.final_sse));
}

TEST_CASE("single-sample training is exact") {
    const Dataset data = make_dataset(Matrix{{0.3, 0.7}}, Matrix{{0.5}});
    const TrainResult res = pilkit::train_pil(data, TrainConfig{});
    CHECK(res.report.final_sse < 1e-12);
}

TEST_CASE("hidden bias columns flow through training and evaluation") {
    std::mt19937_64 rng(151);
    const Dataset data = random_dataset(rng, 6, 2);
    TrainConfig cfg;
    cfg.hidden_bias = true;
    const TrainResult res = pilkit::train_pil0(data, cfg);
    CHECK(res.network.bias_policy.hidden_bias);
    // Y gets the extra ones column before the solve: width l + 1 = 7
    CHECK(res.network.layers[1].rows() == 7);
    CHECK(res.report.final_sse < 1e-8);
    CHECK(pilkit::sse(res.network, data) == res.report.final_sse);
}

TEST_CASE("config validation rejects unusable knob values") {
    const Dataset data = xor_dataset();
    TrainConfig cfg;
    cfg.stopping_error = 0.0;
    CHECK_THROWS_AS(pilkit::train_epil(data, cfg), pilkit::ConfigError);
    cfg = TrainConfig{};
    cfg.max_depth = 0;
    CHECK_THROWS_AS(pilkit::train_epil(data, cfg), pilkit::ConfigError);
    cfg = TrainConfig{};
    cfg.weight_lo = 1.0;
    cfg.weight_hi = 1.0;
    CHECK_THROWS_AS(pilkit::train_pil0(data, cfg), pilkit::ConfigError);
    cfg = TrainConfig{};
    cfg.hidden_width = 0;
    CHECK_THROWS_AS(pilkit::train_pil0(data, cfg), pilkit::ConfigError);
    cfg = TrainConfig{};
    cfg.noise_stddev = -0.1;
    CHECK_THROWS_AS(pilkit::train_pil1(data, cfg), pilkit::ConfigError);
    cfg = TrainConfig{};
    cfg.output_activation = Activation::of(ActivationKind::step);
    CHECK_THROWS_AS(pilkit::train_pil0(data, cfg), pilkit::ConfigError);
}

TEST_CASE("stop reason names are stable report vocabulary") {
    CHECK(pilkit::stop_reason_name(StopReason::residual_below_e) == "residual_below_E");
    CHECK(pilkit::stop_reason_name(StopReason::max_depth) == "max_depth");
    CHECK(pilkit::stop_reason_name(StopReason::single_pass) == "single_pass");
}

}  // TEST_SUITE
