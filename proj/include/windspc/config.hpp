#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windspc/ingest.hpp"
#include "windspc/model_io.hpp"
#include "windspc/regress.hpp"
#include "windspc/simulate.hpp"
#include "windspc/spc.hpp"
#include "windspc/time.hpp"

namespace windspc::cfg {

struct InputSpec {
    std::string path;
    Schema schema;
    int reorder_buffer = 0;
};

struct SimulateSpec {
    sim::ScenarioConfig scenario;
    std::vector<sim::FaultSpec> faults;
};

struct BaselineSpec {
    std::string var_a = "nacelle_temp";
    std::string var_b = "env_temp";
    std::size_t min_points = 100;
    std::optional<Timestamp> upper_bound;
    // The running correlation is computed on the native cadence by default;
    // set to true to compute it on fit-cadence subsampled data instead.
    bool use_fit_cadence = false;
};

struct ModelSpec {
    std::string response;
    std::vector<regress::ModelTerm> terms;       // fixed fit (select == false)
    std::vector<regress::ModelTerm> candidates;  // pool for best_subset (select == true)
    bool select = false;
};

struct ChartSpec {
    std::int64_t fit_interval_s = 14400;   // limits estimated on 4-hour data
    std::int64_t monitor_interval_s = 0;   // 0 = monitor on the native cadence
    std::size_t min_baseline = 30;
};

struct PipelineConfig {
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool locale_comma = false;   // render percentages with ',' instead of '.'
    bool filter_running = true;  // model/monitor only records in state Run
    std::optional<InputSpec> input;
    std::optional<SimulateSpec> simulate;
    std::optional<std::string> events_path;  // CSV (timestamp,label)
    BaselineSpec baseline;
    std::vector<ModelSpec> models;
    ChartSpec chart;
    std::map<std::string, spc::FixedThresholds> thresholds;  // raw-channel field -> thresholds

    // Pushes one master seed into the scenario and fault specs.
    void apply_seed(std::uint64_t s);
    // Throws InvalidConfig on any structural problem (missing input, unknown
    // fields, bad thresholds, ...).
    void validate() const;
};

PipelineConfig parse_config(const io::ordered_json& j);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace windspc::cfg
