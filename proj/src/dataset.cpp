#include "pilkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "pilkit/errors.hpp"

namespace pilkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// Split one CSV record into cells. Quoted fields may contain commas and
/// doubled quotes ("" -> literal quote).
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"' && cell.empty()) {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

double parse_cell(const std::string& cell, std::size_t file_row, std::size_t file_col) {
    const std::string_view body = trim(cell);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc{} || end != body.data() + body.size() || body.empty()) {
        throw ParseError("cannot parse '" + cell + "' as a number (row " +
                             std::to_string(file_row) + ", column " + std::to_string(file_col) +
                             ")",
                         file_row, file_col);
    }
    return value;
}

void format_cell(std::string& out, double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

void check_scaled_bounds(const TargetEncoding& enc) {
    if (!(-1.0 < enc.low && enc.low < enc.high && enc.high < 1.0)) {
        throw ConfigError("target encoding bounds must satisfy -1 < low < high < 1, got [" +
                          std::to_string(enc.low) + ", " + std::to_string(enc.high) + "]");
    }
}

}  // namespace

TargetEncoding::Mode parse_encoding_mode(std::string_view name) {
    if (name == "regression-raw") return TargetEncoding::Mode::regression_raw;
    if (name == "regression-scaled") return TargetEncoding::Mode::regression_scaled;
    if (name == "one-hot-scaled") return TargetEncoding::Mode::one_hot_scaled;
    throw ConfigError("unknown target encoding '" + std::string(name) +
                      "' (expected regression-raw, regression-scaled or one-hot-scaled)");
}

std::string encoding_mode_name(TargetEncoding::Mode mode) {
    switch (mode) {
        case TargetEncoding::Mode::regression_raw: return "regression-raw";
        case TargetEncoding::Mode::regression_scaled: return "regression-scaled";
        case TargetEncoding::Mode::one_hot_scaled: return "one-hot-scaled";
    }
    return "unknown";
}

std::vector<std::size_t> parse_column_list(std::string_view text) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    auto parse_index = [&](std::string_view token) -> std::size_t {
        std::size_t v = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || end != token.data() + token.size() || token.empty()) {
            throw ConfigError("bad column index '" + std::string(token) + "' in '" +
                              std::string(text) + "'");
        }
        return v;
    };
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view token = trim(text.substr(pos, comma - pos));
        const std::size_t dash = token.find('-');
        if (dash == std::string_view::npos) {
            out.push_back(parse_index(token));
        } else {
            const std::size_t lo = parse_index(token.substr(0, dash));
            const std::size_t hi = parse_index(token.substr(dash + 1));
            if (hi < lo) {
                throw ConfigError("descending column range '" + std::string(token) + "'");
            }
            for (std::size_t i = lo; i <= hi; ++i) {
                out.push_back(i);
            }
        }
        pos = comma + 1;
        if (comma == text.size()) {
            break;
        }
    }
    if (out.empty()) {
        throw ConfigError("empty column list '" + std::string(text) + "'");
    }
    return out;
}

std::size_t csv_column_count(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open dataset file: " + path);
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!trim(line).empty()) {
            return split_csv_line(line).size();
        }
    }
    throw EmptyDatasetError("no data rows in " + path);
}

Dataset load_csv(const std::string& path, const ColumnSpec& spec, const TargetEncoding& enc) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open dataset file: " + path);
    }
    if (spec.features.empty() || spec.targets.empty()) {
        throw ConfigError("column spec must name at least one feature and one target column");
    }

    std::vector<double> xv;
    std::vector<double> tv;                // regression modes
    std::vector<std::string> label_cells;  // one-hot mode
    const bool one_hot = enc.mode == TargetEncoding::Mode::one_hot_scaled;
    if (one_hot && spec.targets.size() != 1) {
        throw ConfigError("one-hot-scaled encoding takes exactly one target column, got " +
                          std::to_string(spec.targets.size()));
    }

    std::size_t n_rows = 0;
    std::size_t file_row = 0;
    bool header_pending = spec.header;
    std::string line;
    while (std::getline(in, line)) {
        ++file_row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        auto cell_at = [&](std::size_t col) -> const std::string& {
            if (col >= cells.size()) {
                throw ParseError("row " + std::to_string(file_row) + " has " +
                                     std::to_string(cells.size()) +
                                     " cells, column " + std::to_string(col + 1) + " requested",
                                 file_row, col + 1);
            }
            return cells[col];
        };
        for (std::size_t col : spec.features) {
            xv.push_back(parse_cell(cell_at(col), file_row, col + 1));
        }
        if (one_hot) {
            label_cells.emplace_back(trim(cell_at(spec.targets.front())));
        } else {
            for (std::size_t col : spec.targets) {
                tv.push_back(parse_cell(cell_at(col), file_row, col + 1));
            }
        }
        ++n_rows;
    }
    if (n_rows == 0) {
        throw EmptyDatasetError("no data rows in " + path);
    }

    Matrix x_raw(n_rows, spec.features.size(), std::move(xv));
    TargetEncoding used = enc;
    Matrix t = [&]() -> Matrix {
        switch (enc.mode) {
            case TargetEncoding::Mode::regression_raw:
                return Matrix(n_rows, spec.targets.size(), std::move(tv));
            case TargetEncoding::Mode::regression_scaled:
                check_scaled_bounds(enc);
                return scale_targets(Matrix(n_rows, spec.targets.size(), std::move(tv)),
                                     enc.low, enc.high);
            case TargetEncoding::Mode::one_hot_scaled: {
                if (used.class_labels.empty()) {
                    // Derive the class list in order of first appearance.
                    for (const std::string& l : label_cells) {
                        if (std::find(used.class_labels.begin(), used.class_labels.end(), l) ==
                            used.class_labels.end()) {
                            used.class_labels.push_back(l);
                        }
                    }
                }
                return encode_targets(label_cells, used);
            }
        }
        throw ConfigError("unhandled target encoding mode");
    }();

    return Dataset{augment_bias(x_raw), std::move(t), spec.features.size(), std::move(used),
                   path};
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write dataset file: " + path);
    }
    std::string line;
    for (std::size_t i = 0; i < data.x.rows(); ++i) {
        line.clear();
        for (std::size_t j = 1; j < data.x.cols(); ++j) {  // column 0 is the bias
            if (j > 1) line += ',';
            format_cell(line, data.x(i, j));
        }
        for (std::size_t j = 0; j < data.t.cols(); ++j) {
            line += ',';
            format_cell(line, data.t(i, j));
        }
        line += '\n';
        out << line;
    }
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

Matrix augment_bias(const Matrix& x_raw) {
    require_finite(x_raw, "augment_bias input");
    Matrix x(x_raw.rows(), x_raw.cols() + 1, 0.0);
    for (std::size_t i = 0; i < x_raw.rows(); ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 0; j < x_raw.cols(); ++j) {
            x(i, j + 1) = x_raw(i, j);
        }
    }
    return x;
}

Matrix encode_targets(const std::vector<std::string>& labels, const TargetEncoding& enc) {
    check_scaled_bounds(enc);
    if (enc.class_labels.empty()) {
        throw ConfigError("one-hot encoding needs a class label list");
    }
    if (labels.empty()) {
        throw EmptyDatasetError("no labels to encode");
    }
    Matrix t(labels.size(), enc.class_labels.size(), enc.low);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::find(enc.class_labels.begin(), enc.class_labels.end(), labels[i]);
        if (it == enc.class_labels.end()) {
            throw UnknownClassError("label '" + labels[i] + "' not in class list");
        }
        t(i, static_cast<std::size_t>(it - enc.class_labels.begin())) = enc.high;
    }
    return t;
}

Matrix scale_targets(const Matrix& raw, double low, double high) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : raw.entries()) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    Matrix out = raw;
    if (mx == mn) {
        for (double& v : out.entries()) {
            v = 0.5 * (low + high);
        }
        return out;
    }
    const double scale = (high - low) / (mx - mn);
    for (double& v : out.entries()) {
        v = low + (v - mn) * scale;
    }
    return out;
}

std::size_t argmax_in_row(const Matrix& m, std::size_t row) {
    const auto r = m.row(row);
    return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

Matrix minmax_scale(const Matrix& x, double lo, double hi) {
    if (hi <= lo) {
        throw ConfigError("minmax_scale needs lo < hi");
    }
    Matrix out = x;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double mn = x(0, j), mx = x(0, j);
        for (std::size_t i = 1; i < x.rows(); ++i) {
            mn = std::min(mn, x(i, j));
            mx = std::max(mx, x(i, j));
        }
        for (std::size_t i = 0; i < x.rows(); ++i) {
            out(i, j) = mx == mn ? 0.5 * (lo + hi) : lo + (x(i, j) - mn) * (hi - lo) / (mx - mn);
        }
    }
    return out;
}

}  // namespace pilkit
