#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pilkit/matrix.hpp"

namespace pilkit {

enum class ActivationKind { linear, tanh, sigmoid, step, gaussian };

/// Scalar nonlinearity applied elementwise to layer outputs. `param` is the
/// gaussian kernel width (exp(-x^2/w^2)) or the step threshold; it is unused
/// by the other kinds.
struct Activation {
    ActivationKind kind = ActivationKind::tanh;
    double param = default_param(ActivationKind::tanh);

    static double default_param(ActivationKind k) {
        return k == ActivationKind::gaussian ? 1.0 : 0.0;
    }

    static Activation of(ActivationKind k) { return Activation{k, default_param(k)}; }
};

double apply(const Activation& act, double x);
Matrix apply(const Activation& act, const Matrix& x);

/// linear, tanh and sigmoid have closed-form inverses; step and gaussian do
/// not (gaussian is not injective).
bool is_invertible(const Activation& act);

struct InverseResult {
    Matrix values;
    std::size_t clipped_count = 0;  ///< entries nudged off the codomain boundary
};

/// Elementwise inverse. Entries on or beyond the open codomain boundary are
/// rejected with DomainError (they cannot come from the activation and almost
/// always mean mis-encoded targets); entries within delta = 1e-12 of the
/// boundary are clipped to the boundary minus delta and counted.
InverseResult apply_inverse(const Activation& act, const Matrix& t);

/// Distance from the open codomain boundary below which apply_inverse clips.
inline constexpr double kInverseClipDelta = 1e-12;

/// Closed codomain bounds, used for saturation detection: tanh [-1,1],
/// sigmoid/step/gaussian [0,1]; nullopt for linear (unbounded).
std::optional<std::pair<double, double>> codomain_bounds(const Activation& act);

/// Name <-> kind mapping for the CLI and reports. parse throws ConfigError on
/// an unknown name.
ActivationKind parse_activation_kind(std::string_view name);
std::string activation_name(ActivationKind kind);

}  // namespace pilkit
