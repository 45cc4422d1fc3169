#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pilkit/matrix.hpp"

namespace pilkit {

/// How raw target cells become the training target matrix T. Scaled modes
/// keep every entry in [low, high] strictly inside (-1, 1) so ArcTanh(T)
/// stays finite.
struct TargetEncoding {
    enum class Mode { regression_raw, regression_scaled, one_hot_scaled };

    Mode mode = Mode::regression_raw;
    double low = -0.8;
    double high = 0.8;
    std::vector<std::string> class_labels;  // one_hot_scaled only
};

TargetEncoding::Mode parse_encoding_mode(std::string_view name);
std::string encoding_mode_name(TargetEncoding::Mode mode);

/// Training pair (X, T). x is bias-augmented: column 0 is all ones, the raw
/// features follow, so d = n_raw_features + 1.
struct Dataset {
    Matrix x;
    Matrix t;
    std::size_t n_raw_features = 0;
    TargetEncoding encoding;
    std::string source;

    std::size_t n_samples() const { return x.rows(); }
};

/// Column selection for CSV loading. Indices are 0-based positions in the
/// file; ranges parse from strings like "0-3" or "0,2,5".
struct ColumnSpec {
    std::vector<std::size_t> features;
    std::vector<std::size_t> targets;
    bool header = false;
};

/// Parse "2", "0-3", "0,2,5-7" into an index list. Throws ConfigError on
/// malformed input or an empty result.
std::vector<std::size_t> parse_column_list(std::string_view text);

/// Cell count of the file's first non-empty row — lets callers default a
/// column spec to "last column is the target" without loading everything.
std::size_t csv_column_count(const std::string& path);

/// Read a CSV file into a bias-augmented Dataset. Feature cells must parse
/// as reals; target cells are reals for regression modes and labels for
/// one_hot_scaled (labels not listed in enc.class_labels get the file's
/// distinct labels in order of first appearance when the list is empty).
Dataset load_csv(const std::string& path, const ColumnSpec& spec, const TargetEncoding& enc);

/// Write raw features (bias column dropped) followed by target columns,
/// shortest-round-trip formatted so load(save(d)) reproduces the matrices
/// bitwise under regression_raw.
void save_csv(const Dataset& data, const std::string& path);

/// [1 | x_raw]: prepend the constant bias column. Never idempotent — callers
/// own the single-augmentation discipline.
Matrix augment_bias(const Matrix& x_raw);

/// One-hot rows: `high` at the class index, `low` elsewhere. Label order
/// follows enc.class_labels. Throws UnknownClassError for labels outside it.
Matrix encode_targets(const std::vector<std::string>& labels, const TargetEncoding& enc);

/// Affine map of raw targets onto [low, high] (global min/max over the
/// matrix; a constant matrix maps to the interval midpoint).
Matrix scale_targets(const Matrix& raw, double low, double high);

/// Index of the row's largest entry (first on ties) — argmax decoding for
/// one-hot outputs.
std::size_t argmax_in_row(const Matrix& m, std::size_t row);

/// Column-wise min-max rescale of x into [lo, hi]; constant columns map to
/// the interval midpoint. Used to put probe inputs in a controlled range.
Matrix minmax_scale(const Matrix& x, double lo, double hi);

}  // namespace pilkit
