#include "pilkit/activation.hpp"

#include <cmath>

#include "pilkit/errors.hpp"

namespace pilkit {

double apply(const Activation& act, double x) {
    switch (act.kind) {
        case ActivationKind::linear:
            return x;
        case ActivationKind::tanh:
            return std::tanh(x);
        case ActivationKind::sigmoid:
            return 1.0 / (1.0 + std::exp(-x));
        case ActivationKind::step:
            return x > act.param ? 1.0 : 0.0;
        case ActivationKind::gaussian: {
            if (act.param == 0.0) {
                throw ConfigError("gaussian activation width must be nonzero");
            }
            const double z = x / act.param;
            return std::exp(-z * z);
        }
    }
    throw ConfigError("unhandled activation kind");
}

Matrix apply(const Activation& act, const Matrix& x) {
    if (act.kind == ActivationKind::gaussian && act.param == 0.0) {
        throw ConfigError("gaussian activation width must be nonzero");
    }
    Matrix out = x;
    for (double& v : out.entries()) {
        v = apply(act, v);
    }
    return out;
}

bool is_invertible(const Activation& act) {
    switch (act.kind) {
        case ActivationKind::linear:
        case ActivationKind::tanh:
        case ActivationKind::sigmoid:
            return true;
        case ActivationKind::step:
        case ActivationKind::gaussian:
            return false;
    }
    return false;
}

namespace {

/// Clip t into (lo, hi) staying kInverseClipDelta away from each bound.
/// Throws if t is already on or beyond a bound.
double clip_open(double t, double lo, double hi, const char* name, std::size_t& clipped) {
    if (t <= lo || t >= hi) {
        throw DomainError(std::string(name) + " inverse domain violated: value " +
                          std::to_string(t) + " outside open interval");
    }
    if (t > hi - kInverseClipDelta) {
        ++clipped;
        return hi - kInverseClipDelta;
    }
    if (t < lo + kInverseClipDelta) {
        ++clipped;
        return lo + kInverseClipDelta;
    }
    return t;
}

}  // namespace

InverseResult apply_inverse(const Activation& act, const Matrix& t) {
    if (!is_invertible(act)) {
        throw DomainError(activation_name(act.kind) + " activation has no inverse");
    }
    InverseResult res{t, 0};
    switch (act.kind) {
        case ActivationKind::linear:
            return res;
        case ActivationKind::tanh:
            for (double& v : res.values.entries()) {
                const double c = clip_open(v, -1.0, 1.0, "tanh", res.clipped_count);
                v = 0.5 * std::log((1.0 + c) / (1.0 - c));
            }
            return res;
        case ActivationKind::sigmoid:
            for (double& v : res.values.entries()) {
                const double c = clip_open(v, 0.0, 1.0, "sigmoid", res.clipped_count);
                v = std::log(c / (1.0 - c));
            }
            return res;
        default:
            throw DomainError("activation has no inverse");
    }
}

std::optional<std::pair<double, double>> codomain_bounds(const Activation& act) {
    switch (act.kind) {
        case ActivationKind::tanh:
            return std::pair{-1.0, 1.0};
        case ActivationKind::sigmoid:
        case ActivationKind::step:
        case ActivationKind::gaussian:
            return std::pair{0.0, 1.0};
        case ActivationKind::linear:
            return std::nullopt;
    }
    return std::nullopt;
}

ActivationKind parse_activation_kind(std::string_view name) {
    if (name == "linear") return ActivationKind::linear;
    if (name == "tanh") return ActivationKind::tanh;
    if (name == "sigmoid") return ActivationKind::sigmoid;
    if (name == "step") return ActivationKind::step;
    if (name == "gaussian") return ActivationKind::gaussian;
    throw ConfigError("unknown activation '" + std::string(name) +
                      "' (expected linear, tanh, sigmoid, step or gaussian)");
}

std::string activation_name(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::linear: return "linear";
        case ActivationKind::tanh: return "tanh";
        case ActivationKind::sigmoid: return "sigmoid";
        case ActivationKind::step: return "step";
        case ActivationKind::gaussian: return "gaussian";
    }
    return "unknown";
}

}  // namespace pilkit
