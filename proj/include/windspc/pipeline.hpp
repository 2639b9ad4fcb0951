#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windspc/baseline.hpp"
#include "windspc/config.hpp"
#include "windspc/ingest.hpp"
#include "windspc/model_io.hpp"
#include "windspc/regress.hpp"
#include "windspc/spc.hpp"

namespace windspc::pipeline {

struct Event {
    Timestamp t = 0;
    std::string label;
};

// Fraction rendered as a percentage with two decimals, e.g. 0.070121 -> "7.01%".
std::string format_percent(double fraction, bool comma_decimal = false);

// CSV event log (timestamp,label), sorted by time.
std::vector<Event> load_events(const std::filesystem::path& path);

// Runs the monitoring pipeline stages against one config. Stages write their
// artifacts into the output directory and load upstream artifacts from it
// when present, so `baseline; fit; monitor` in separate processes produces
// exactly the same files as one combined `report` run.
class Pipeline {
  public:
    explicit Pipeline(cfg::PipelineConfig config, bool verbose = false);

    const cfg::PipelineConfig& config() const { return config_; }
    const std::filesystem::path& out_dir() const { return out_dir_; }

    Dataset run_simulate();   // simulated.csv + ground_truth.json
    ParseStats run_ingest();  // ingested.csv + ingest_stats.json
    baseline::BaselineWindow run_baseline();  // baseline.json + rho_profile.csv
    std::vector<regress::RegressionModel> run_fit();  // model_<response>.json
    io::ordered_json run_monitor();  // alarms_<response>.csv, zones_<field>.csv, summary.json
    io::ordered_json run_report();   // all of the above + report.json

    // Raw dataset: loaded from the input CSV or simulated (faults applied).
    const Dataset& data();
    // Dataset used for modeling/monitoring: running-filtered when configured
    // and the data carries operating states.
    const Dataset& modeling_data();

  private:
    baseline::BaselineWindow window();                 // load-or-compute
    std::vector<regress::RegressionModel> models();    // load-or-compute
    std::filesystem::path model_path(std::string_view response) const;
    void note(const std::string& line) const;          // verbose logging

    cfg::PipelineConfig config_;
    bool verbose_ = false;
    std::filesystem::path out_dir_;
    std::optional<Dataset> data_;
    std::optional<Dataset> modeling_;
    std::optional<baseline::BaselineWindow> window_;
    std::optional<std::vector<regress::RegressionModel>> models_;
    ParseStats stats_;
};

}  // namespace windspc::pipeline
