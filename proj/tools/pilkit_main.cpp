// pilkit: batch front end for the pseudoinverse-learning toolkit.
// Subcommands: train (fit a model, write .pilnet + JSON report), eval
// (SSE/accuracy of a saved model on a dataset), diagnose (rank/saturation
// experiments). Exit codes: 0 ok, 2 bad configuration, 3 bad input data,
// 4 numerical failure.

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pilkit/dataset.hpp"
#include "pilkit/diagnostics.hpp"
#include "pilkit/errors.hpp"
#include "pilkit/network.hpp"
#include "pilkit/report_json.hpp"
#include "pilkit/trainers.hpp"

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Flat key=value config files. CLI11 only applies config files on the root
// app, so the per-subcommand handling lives here: every option is bound to a
// config key, and values apply only when the flag (or its env var) did not
// already set the option — flags override config, config overrides defaults.
// ---------------------------------------------------------------------------

class FlatConfig {
public:
    void bind(CLI::Option* opt, std::string key, std::function<void(const std::string&)> set) {
        entries_.emplace(std::move(key), Entry{opt, std::move(set)});
    }

    void apply(const std::string& path) const {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw pilkit::ConfigError("cannot open config file: " + path);
        }
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            const std::string body = trim(line);
            if (body.empty() || body.front() == '#') {
                continue;
            }
            const std::size_t eq = body.find('=');
            if (eq == std::string::npos) {
                throw pilkit::ConfigError("config line " + std::to_string(line_no) +
                                          " is not key=value: '" + body + "'");
            }
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            const auto it = entries_.find(key);
            if (it == entries_.end()) {
                throw pilkit::ConfigError("unknown config key '" + key + "' (line " +
                                          std::to_string(line_no) + ")");
            }
            if (it->second.opt->count() > 0) {
                continue;  // already set on the command line (or via env)
            }
            it->second.set(value);
        }
    }

private:
    struct Entry {
        CLI::Option* opt;
        std::function<void(const std::string&)> set;
    };

    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
        while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
        return s.substr(b, e - b);
    }

    std::map<std::string, Entry> entries_;
};

template <typename T>
T parse_number_value(const std::string& key, const std::string& value) {
    T v{};
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size() || value.empty()) {
        throw pilkit::ConfigError("config key '" + key + "': cannot parse '" + value + "'");
    }
    return v;
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw pilkit::ConfigError("config key '" + key + "': expected true/false, got '" + value +
                              "'");
}

std::vector<double> parse_interval_value(const std::string& key, const std::string& value) {
    const std::size_t comma = value.find(',');
    if (comma == std::string::npos) {
        throw pilkit::ConfigError("config key '" + key + "': expected 'lo,hi', got '" + value +
                                  "'");
    }
    return {parse_number_value<double>(key, value.substr(0, comma)),
            parse_number_value<double>(key, value.substr(comma + 1))};
}

// ---------------------------------------------------------------------------
// Flag bundles
// ---------------------------------------------------------------------------

struct DataFlags {
    std::string path;
    std::string features;  // column list, empty = all but last
    std::string target;    // column list, empty = last column
    std::string encoding = "regression-raw";
    bool header = false;
};

struct TrainFlags {
    std::string algo = "pil";
    std::string hidden_width = "auto";
    double stopping_error = 1e-8;
    std::size_t max_depth = 16;
    double noise_stddev = 0.01;
    std::uint64_t seed = 0;
    std::vector<double> weight_interval = {-1.0, 1.0};
    std::string activation = "tanh";
    std::string output_activation;  // empty = algorithm default
    bool hidden_bias = false;
};

struct OutputFlags {
    std::string report_path;      // empty = stdout
    std::string format = "json";  // diagnose only: json or csv
};

void add_data_flags(CLI::App* cmd, DataFlags& f, FlatConfig& cfg, bool data_required) {
    CLI::Option* o = cmd->add_option("--data", f.path, "dataset CSV path");
    if (data_required) {
        o->required();
    }
    cfg.bind(o, "data", [&f](const std::string& v) { f.path = v; });
    o = cmd->add_option("--features", f.features,
                        "feature column list, e.g. \"0-3\" (default: all but last)");
    cfg.bind(o, "features", [&f](const std::string& v) { f.features = v; });
    o = cmd->add_option("--target", f.target, "target column list (default: last column)");
    cfg.bind(o, "target", [&f](const std::string& v) { f.target = v; });
    o = cmd->add_option("--encoding", f.encoding,
                        "target encoding: regression-raw, regression-scaled, one-hot-scaled");
    cfg.bind(o, "encoding", [&f](const std::string& v) { f.encoding = v; });
    o = cmd->add_flag("--header", f.header, "first CSV row is a header");
    cfg.bind(o, "header", [&f](const std::string& v) { f.header = parse_bool_value("header", v); });
}

void add_train_flags(CLI::App* cmd, TrainFlags& f, FlatConfig& cfg) {
    CLI::Option* o = cmd->add_option("--algo", f.algo, "training algorithm")
                         ->check(CLI::IsMember({"pil", "pil0", "epil", "pil1"}));
    cfg.bind(o, "algo", [&f](const std::string& v) { f.algo = v; });
    o = cmd->add_option("--hidden-width", f.hidden_width,
                        "hidden width l, or 'auto' for l = N");
    cfg.bind(o, "hidden-width", [&f](const std::string& v) { f.hidden_width = v; });
    o = cmd->add_option("--stopping-error", f.stopping_error, "layer-growth threshold E");
    cfg.bind(o, "stopping-error", [&f](const std::string& v) {
        f.stopping_error = parse_number_value<double>("stopping-error", v);
    });
    o = cmd->add_option("--max-depth", f.max_depth, "layer-growth cap");
    cfg.bind(o, "max-depth", [&f](const std::string& v) {
        f.max_depth = parse_number_value<std::size_t>("max-depth", v);
    });
    o = cmd->add_option("--noise-stddev", f.noise_stddev, "PIL1 perturbation scale");
    cfg.bind(o, "noise-stddev", [&f](const std::string& v) {
        f.noise_stddev = parse_number_value<double>("noise-stddev", v);
    });
    o = cmd->add_option("--seed", f.seed, "random seed")->envname("PILKIT_SEED");
    cfg.bind(o, "seed", [&f](const std::string& v) {
        f.seed = parse_number_value<std::uint64_t>("seed", v);
    });
    o = cmd->add_option("--weight-interval", f.weight_interval,
                        "PIL0 sampling interval, e.g. -1,1")
            ->delimiter(',')
            ->expected(2);
    cfg.bind(o, "weight-interval", [&f](const std::string& v) {
        f.weight_interval = parse_interval_value("weight-interval", v);
    });
    o = cmd->add_option("--activation", f.activation,
                        "hidden activation: tanh, sigmoid, linear, step, gaussian");
    cfg.bind(o, "activation", [&f](const std::string& v) { f.activation = v; });
    o = cmd->add_option("--output-activation", f.output_activation,
                        "output activation override (default: per-algorithm)");
    cfg.bind(o, "output-activation", [&f](const std::string& v) { f.output_activation = v; });
    o = cmd->add_flag("--hidden-bias", f.hidden_bias,
                      "append a bias column to hidden outputs");
    cfg.bind(o, "hidden-bias",
             [&f](const std::string& v) { f.hidden_bias = parse_bool_value("hidden-bias", v); });
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

std::optional<std::size_t> parse_hidden_width(const std::string& text) {
    if (text == "auto") {
        return std::nullopt;
    }
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw pilkit::ConfigError("--hidden-width must be a count or 'auto', got '" + text +
                                  "'");
    }
    return v;
}

pilkit::ColumnSpec make_column_spec(const DataFlags& f) {
    pilkit::ColumnSpec spec;
    spec.header = f.header;
    if (f.features.empty() || f.target.empty()) {
        const std::size_t n_cols = pilkit::csv_column_count(f.path);
        if (n_cols < 2) {
            throw pilkit::ConfigError(
                "dataset has a single column; pass --features and --target explicitly");
        }
        for (std::size_t i = 0; i + 1 < n_cols; ++i) {
            spec.features.push_back(i);
        }
        spec.targets.push_back(n_cols - 1);
    }
    if (!f.features.empty()) {
        spec.features = pilkit::parse_column_list(f.features);
    }
    if (!f.target.empty()) {
        spec.targets = pilkit::parse_column_list(f.target);
    }
    return spec;
}

pilkit::Dataset load_dataset(const DataFlags& f) {
    if (f.path.empty()) {
        throw pilkit::ConfigError("--data is required");
    }
    pilkit::TargetEncoding enc;
    enc.mode = pilkit::parse_encoding_mode(f.encoding);
    return pilkit::load_csv(f.path, make_column_spec(f), enc);
}

pilkit::TrainConfig make_train_config(const TrainFlags& f) {
    pilkit::TrainConfig cfg;
    cfg.hidden_width = parse_hidden_width(f.hidden_width);
    cfg.stopping_error = f.stopping_error;
    cfg.max_depth = f.max_depth;
    cfg.noise_stddev = f.noise_stddev;
    cfg.random_seed = f.seed;
    cfg.weight_lo = f.weight_interval.at(0);
    cfg.weight_hi = f.weight_interval.at(1);
    cfg.activation = pilkit::Activation::of(pilkit::parse_activation_kind(f.activation));
    if (!f.output_activation.empty()) {
        cfg.output_activation =
            pilkit::Activation::of(pilkit::parse_activation_kind(f.output_activation));
    }
    cfg.hidden_bias = f.hidden_bias;
    return cfg;
}

json echo_data_flags(const DataFlags& f) {
    json j;
    j["data"] = f.path;
    j["features"] = f.features.empty() ? "auto" : f.features;
    j["target"] = f.target.empty() ? "auto" : f.target;
    j["encoding"] = f.encoding;
    j["header"] = f.header;
    return j;
}

json echo_train_flags(const TrainFlags& f) {
    json j;
    j["algo"] = f.algo;
    j["hidden_width"] = f.hidden_width;
    j["stopping_error"] = f.stopping_error;
    j["max_depth"] = f.max_depth;
    j["noise_stddev"] = f.noise_stddev;
    j["seed"] = f.seed;
    j["weight_interval"] = f.weight_interval;
    j["activation"] = f.activation;
    j["output_activation"] =
        f.output_activation.empty() ? json(nullptr) : json(f.output_activation);
    j["hidden_bias"] = f.hidden_bias;
    return j;
}

void emit_text(const std::string& text, const std::string& report_path) {
    if (report_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
        throw pilkit::IoError("cannot write report file: " + report_path);
    }
    out << text;
    if (!out) {
        throw pilkit::IoError("write failed: " + report_path);
    }
}

void emit_report(const std::string& command, const json& config, const json& result,
                 double wall_seconds, const std::string& report_path) {
    json envelope;
    envelope["schema_version"] = kSchemaVersion;
    envelope["command"] = command;
    envelope["config"] = config;
    envelope["result"] = result;
    envelope["timing"] = json{{"wall_time_seconds", wall_seconds}};
    emit_text(envelope.dump(2) + "\n", report_path);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_train(const DataFlags& df, const TrainFlags& tf, const std::string& model_out,
              const OutputFlags& of) {
    const auto t0 = Clock::now();
    const pilkit::Dataset data = load_dataset(df);
    const pilkit::TrainConfig cfg = make_train_config(tf);

    pilkit::TrainResult run = [&] {
        if (tf.algo == "pil") return pilkit::train_pil(data, cfg);
        if (tf.algo == "pil0") return pilkit::train_pil0(data, cfg);
        if (tf.algo == "epil") return pilkit::train_epil(data, cfg);
        if (tf.algo == "pil1") return pilkit::train_pil1(data, cfg);
        throw pilkit::ConfigError("unknown algorithm '" + tf.algo +
                                  "' (expected pil, pil0, epil or pil1)");
    }();

    print_warnings(run.report.warnings);
    pilkit::save_pilnet(run.network, model_out);

    json config = echo_train_flags(tf);
    config.update(echo_data_flags(df));
    config["out"] = model_out;
    json result = pilkit::to_json(run.report);
    result["model_path"] = model_out;

    const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    emit_report("train", config, result, wall, of.report_path);
    return 0;
}

int cmd_eval(const DataFlags& df, const std::string& model_path, const OutputFlags& of) {
    const auto t0 = Clock::now();
    if (model_path.empty()) {
        throw pilkit::ConfigError("--model is required");
    }
    const pilkit::PilNetwork net = pilkit::load_pilnet(model_path);
    const pilkit::Dataset data = load_dataset(df);

    const std::size_t expected = net.layers.front().rows();
    if (data.x.cols() != expected) {
        throw pilkit::ShapeMismatchError("model expects input width " +
                                         std::to_string(expected) + ", dataset provides " +
                                         std::to_string(data.x.cols()));
    }
    const pilkit::Matrix output = pilkit::forward(net, data.x);
    pilkit::require_finite(output, "network output");

    json result;
    result["sse"] = pilkit::sse_value(output, data.t);
    if (data.encoding.mode == pilkit::TargetEncoding::Mode::one_hot_scaled) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < data.n_samples(); ++i) {
            if (pilkit::argmax_in_row(output, i) == pilkit::argmax_in_row(data.t, i)) {
                ++hits;
            }
        }
        result["accuracy"] = static_cast<double>(hits) / static_cast<double>(data.n_samples());
    }

    json config = echo_data_flags(df);
    config["model"] = model_path;

    const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    emit_report("eval", config, result, wall, of.report_path);
    return 0;
}

struct DiagnoseFlags {
    std::string experiment;
    std::string activation = "sigmoid";
    std::uint64_t seed = 0;
    std::size_t points = 100;
    std::string hidden_width = "auto";
    std::vector<double> weight_interval = {1.0, 2.0};
};

int cmd_diagnose(const DiagnoseFlags& f, const DataFlags& df, const OutputFlags& of,
                 bool data_given) {
    const auto t0 = Clock::now();
    if (of.format != "json" && of.format != "csv") {
        throw pilkit::ConfigError("report format must be json or csv, got '" + of.format + "'");
    }
    json config;
    config["experiment"] = f.experiment;
    config["seed"] = f.seed;

    json result;
    std::string csv_text;
    if (f.experiment == "theorem1") {
        pilkit::SaturationProbe probe;
        probe.activation =
            pilkit::Activation::of(pilkit::parse_activation_kind(f.activation));
        probe.weight_lo = f.weight_interval.at(0);
        probe.weight_hi = f.weight_interval.at(1);
        probe.seed = f.seed;
        const pilkit::RankSweepResult sweep = pilkit::theorem1_sweep(probe);
        result = pilkit::to_json(sweep);
        csv_text = pilkit::sweep_csv(sweep);
        config["activation"] = f.activation;
        config["weight_interval"] = f.weight_interval;
    } else if (f.experiment == "fx-rank") {
        const std::size_t width = parse_hidden_width(f.hidden_width).value_or(f.points);
        const pilkit::FxRankReport report =
            pilkit::fx_rank_experiment(f.points, width, f.seed);
        result = pilkit::to_json(report);
        csv_text = pilkit::fx_csv(pilkit::counterexample_fx(f.points));
        config["points"] = f.points;
        config["hidden_width"] = width;
    } else {  // error-floor
        if (!data_given) {
            throw pilkit::ConfigError("error-floor needs --data");
        }
        const pilkit::Dataset data = load_dataset(df);
        const std::size_t width =
            parse_hidden_width(f.hidden_width)
                .value_or(std::max<std::size_t>(1, data.n_samples() / 2));
        const double floor = pilkit::error_floor(data, width, f.seed);
        result["error_floor"] = floor;
        result["hidden_width"] = width;
        result["n_samples"] = data.n_samples();
        csv_text = "error_floor\n" + json(floor).dump() + "\n";
        config.update(echo_data_flags(df));
        config["hidden_width"] = f.hidden_width;
    }

    const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    if (of.format == "csv") {
        emit_text(csv_text, of.report_path);
    } else {
        emit_report("diagnose", config, result, wall, of.report_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pilkit: pseudoinverse learning for feedforward networks"};
    app.require_subcommand(1);

    DataFlags train_data, eval_data, diag_data;
    TrainFlags train_flags;
    OutputFlags train_out, eval_out, diag_out;
    FlatConfig train_cfg, eval_cfg, diag_cfg;
    std::string train_cfg_path, eval_cfg_path, diag_cfg_path;
    std::string model_out = "model.pilnet";
    std::string eval_model;
    DiagnoseFlags diag_flags;

    CLI::App* train = app.add_subcommand("train", "fit a network, write model + report");
    add_data_flags(train, train_data, train_cfg, /*data_required=*/false);
    add_train_flags(train, train_flags, train_cfg);
    CLI::Option* o = train->add_option("--out", model_out, "model output path (.pilnet)");
    train_cfg.bind(o, "out", [&](const std::string& v) { model_out = v; });
    o = train->add_option("--report", train_out.report_path, "report file (default: stdout)");
    train_cfg.bind(o, "report", [&](const std::string& v) { train_out.report_path = v; });
    train->add_option("--config", train_cfg_path, "flat key=value config file");

    CLI::App* eval = app.add_subcommand("eval", "evaluate a saved model on a dataset");
    add_data_flags(eval, eval_data, eval_cfg, /*data_required=*/false);
    o = eval->add_option("--model", eval_model, "trained .pilnet file");
    eval_cfg.bind(o, "model", [&](const std::string& v) { eval_model = v; });
    o = eval->add_option("--report", eval_out.report_path, "report file (default: stdout)");
    eval_cfg.bind(o, "report", [&](const std::string& v) { eval_out.report_path = v; });
    eval->add_option("--config", eval_cfg_path, "flat key=value config file");

    CLI::App* diag = app.add_subcommand("diagnose", "rank/saturation experiments");
    diag->add_option("experiment", diag_flags.experiment, "which experiment to run")
        ->required()
        ->check(CLI::IsMember({"theorem1", "fx-rank", "error-floor"}));
    o = diag->add_option("--activation", diag_flags.activation, "probe activation (theorem1)");
    diag_cfg.bind(o, "activation", [&](const std::string& v) { diag_flags.activation = v; });
    o = diag->add_option("--seed", diag_flags.seed, "random seed")->envname("PILKIT_SEED");
    diag_cfg.bind(o, "seed", [&](const std::string& v) {
        diag_flags.seed = parse_number_value<std::uint64_t>("seed", v);
    });
    o = diag->add_option("--points", diag_flags.points, "sample count (fx-rank)");
    diag_cfg.bind(o, "points", [&](const std::string& v) {
        diag_flags.points = parse_number_value<std::size_t>("points", v);
    });
    o = diag->add_option("--hidden-width", diag_flags.hidden_width,
                         "hidden width (fx-rank, error-floor)");
    diag_cfg.bind(o, "hidden-width", [&](const std::string& v) { diag_flags.hidden_width = v; });
    o = diag->add_option("--weight-interval", diag_flags.weight_interval,
                         "probe base interval (a, b) (theorem1)")
            ->delimiter(',')
            ->expected(2);
    diag_cfg.bind(o, "weight-interval", [&](const std::string& v) {
        diag_flags.weight_interval = parse_interval_value("weight-interval", v);
    });
    CLI::Option* diag_data_opt =
        diag->add_option("--data", diag_data.path, "dataset CSV path (error-floor)");
    diag_cfg.bind(diag_data_opt, "data", [&](const std::string& v) { diag_data.path = v; });
    o = diag->add_option("--features", diag_data.features, "feature column list");
    diag_cfg.bind(o, "features", [&](const std::string& v) { diag_data.features = v; });
    o = diag->add_option("--target", diag_data.target, "target column list");
    diag_cfg.bind(o, "target", [&](const std::string& v) { diag_data.target = v; });
    o = diag->add_option("--encoding", diag_data.encoding, "target encoding");
    diag_cfg.bind(o, "encoding", [&](const std::string& v) { diag_data.encoding = v; });
    o = diag->add_flag("--header", diag_data.header, "first CSV row is a header");
    diag_cfg.bind(o, "header",
                  [&](const std::string& v) { diag_data.header = parse_bool_value("header", v); });
    o = diag->add_option("--report", diag_out.report_path, "report file (default: stdout)");
    diag_cfg.bind(o, "report", [&](const std::string& v) { diag_out.report_path = v; });
    o = diag->add_option("--format", diag_out.format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
    diag_cfg.bind(o, "format", [&](const std::string& v) { diag_out.format = v; });
    diag->add_option("--config", diag_cfg_path, "flat key=value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (train->parsed()) {
            if (!train_cfg_path.empty()) {
                train_cfg.apply(train_cfg_path);
            }
            return cmd_train(train_data, train_flags, model_out, train_out);
        }
        if (eval->parsed()) {
            if (!eval_cfg_path.empty()) {
                eval_cfg.apply(eval_cfg_path);
            }
            return cmd_eval(eval_data, eval_model, eval_out);
        }
        if (!diag_cfg_path.empty()) {
            diag_cfg.apply(diag_cfg_path);
        }
        return cmd_diagnose(diag_flags, diag_data, diag_out,
                            diag_data_opt->count() > 0 || !diag_data.path.empty());
    } catch (const pilkit::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pilkit::InvalidMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const pilkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
