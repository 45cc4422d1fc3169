#pragma once

#include <string>

#include <json.hpp>

#include "pilkit/diagnostics.hpp"
#include "pilkit/linalg.hpp"
#include "pilkit/trainers.hpp"

namespace pilkit {

/// JSON views of the report types. Every emitter here is deterministic:
/// object keys are sorted, doubles print shortest-round-trip, and nothing
/// time-dependent is included — wall time lives in the envelope's dedicated
/// "timing" field so report comparisons can drop it wholesale.
nlohmann::json to_json(const RankInfo& info);
nlohmann::json to_json(const TrainReport& report);  // excludes wall_time_seconds
nlohmann::json to_json(const RankSweepResult& sweep);
nlohmann::json to_json(const FxRankReport& report);
nlohmann::json to_json(const FloatRangeReport& report);

/// (epsilon, rank, saturation) triples for external plotting.
std::string sweep_csv(const RankSweepResult& sweep);

/// (x, f(x)) sample rows.
std::string fx_csv(const Dataset& fx_data);

}  // namespace pilkit
