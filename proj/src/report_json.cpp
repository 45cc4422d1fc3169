#include "pilkit/report_json.hpp"

#include <charconv>
#include <cmath>

namespace pilkit {

namespace {

using nlohmann::json;

/// dump() would render inf/nan as "null" anyway; doing it explicitly keeps
/// the intent visible.
json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

void append_number(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

}  // namespace

json to_json(const RankInfo& info) {
    json j;
    j["numerical_rank"] = info.numerical_rank;
    j["tolerance_used"] = info.tolerance_used;
    j["condition_estimate"] = finite_or_null(info.condition_estimate);
    j["singular_values"] = info.singular_values;
    return j;
}

json to_json(const TrainReport& report) {
    json j;
    j["final_sse"] = report.final_sse;
    j["depth_used"] = report.depth_used;
    j["stop_reason"] = stop_reason_name(report.stop_reason);
    j["clipped_target_count"] = report.clipped_target_count;
    j["warnings"] = report.warnings;
    json layers = json::array();
    for (const LayerStats& ls : report.per_layer) {
        json lj;
        lj["layer"] = ls.layer;
        lj["rank"] = to_json(ls.rank);
        lj["projector_residual"] = ls.projector_residual;
        layers.push_back(std::move(lj));
    }
    j["per_layer"] = std::move(layers);
    return j;
}

json to_json(const RankSweepResult& sweep) {
    json j;
    j["bounded_activation"] = sweep.bounded_activation;
    if (!sweep.note.empty()) {
        j["note"] = sweep.note;
    }
    json rows = json::array();
    for (const EpsilonStats& s : sweep.per_epsilon) {
        json rj;
        rj["epsilon"] = s.epsilon;
        rj["rank"] = to_json(s.rank);
        rj["saturation_fraction"] = s.saturation_fraction;
        rj["min_entry"] = s.min_entry;
        rj["max_entry"] = s.max_entry;
        rows.push_back(std::move(rj));
    }
    j["per_epsilon"] = std::move(rows);
    return j;
}

json to_json(const FxRankReport& report) {
    json j;
    j["n_points"] = report.n_points;
    j["hidden_width"] = report.hidden_width;
    j["seed"] = report.seed;
    j["rank"] = to_json(report.rank);
    j["condition"] = finite_or_null(report.condition);
    j["achieved_sse"] = report.achieved_sse;
    return j;
}

json to_json(const FloatRangeReport& report) {
    json j;
    j["max_abs_entry"] = report.max_abs_entry;
    j["beyond_single_range"] = report.beyond_single_range;
    j["arctanh_out_of_domain"] = report.arctanh_out_of_domain;
    j["arctanh_near_boundary"] = report.arctanh_near_boundary;
    return j;
}

std::string sweep_csv(const RankSweepResult& sweep) {
    std::string out = "epsilon,numerical_rank,saturation_fraction\n";
    for (const EpsilonStats& s : sweep.per_epsilon) {
        append_number(out, s.epsilon);
        out += ',';
        out += std::to_string(s.rank.numerical_rank);
        out += ',';
        append_number(out, s.saturation_fraction);
        out += '\n';
    }
    return out;
}

std::string fx_csv(const Dataset& fx_data) {
    std::string out = "x,fx\n";
    for (std::size_t i = 0; i < fx_data.n_samples(); ++i) {
        append_number(out, fx_data.x(i, 1));  // column 0 is the bias
        out += ',';
        append_number(out, fx_data.t(i, 0));
        out += '\n';
    }
    return out;
}

}  // namespace pilkit
