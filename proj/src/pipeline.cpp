#include "windspc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "windspc/csv.hpp"
#include "windspc/error.hpp"
#include "windspc/simulate.hpp"

namespace windspc::pipeline {

namespace {

std::string sanitize(std::string_view field) {
    std::string s(field);
    std::replace(s.begin(), s.end(), '.', '_');
    return s;
}

Dataset slice(const Dataset& d, Timestamp start, Timestamp end) {
    Dataset out;
    out.provenance = d.provenance;
    for (const auto& rec : d.records) {
        if (rec.timestamp >= start && rec.timestamp <= end) out.records.push_back(rec);
    }
    out.refresh_cadence();
    return out;
}

// Subsample when the requested interval is coarser than the data; 0 means
// "native cadence" (pass-through).
Dataset at_cadence(const Dataset& d, std::int64_t interval_s) {
    if (interval_s <= 0 || interval_s == d.cadence_s) return d;
    return subsample(d, interval_s);
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open '" + p.string() + "' for writing");
    return out;
}

std::string day_of(Timestamp t) {
    return format_iso8601(t - ((t % 86400) + 86400) % 86400).substr(0, 10);
}

}  // namespace

std::string format_percent(double fraction, bool comma_decimal) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    std::string s(buf);
    if (comma_decimal) {
        if (auto pos = s.find('.'); pos != std::string::npos) s[pos] = ',';
    }
    return s + "%";
}

std::vector<Event> load_events(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open events file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) fail(Errc::EmptyInput, "events file has no header");
    std::vector<Event> events;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split_line(line);
        const auto t = parse_iso8601(csv::trim(cells[0]));
        if (!t) {
            fail(Errc::IoError, "events file line " + std::to_string(lineno) +
                                    ": bad timestamp '" + cells[0] + "'");
        }
        events.push_back({*t, cells.size() > 1 ? cells[1] : std::string{}});
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    return events;
}

Pipeline::Pipeline(cfg::PipelineConfig config, bool verbose)
    : config_(std::move(config)), verbose_(verbose), out_dir_(config_.output_dir) {
    config_.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir_, ec);
    if (ec) {
        fail(Errc::IoError, "cannot create output directory '" + out_dir_.string() +
                                "': " + ec.message());
    }
}

void Pipeline::note(const std::string& line) const {
    if (verbose_) std::cerr << "windspc: " << line << '\n';
}

std::filesystem::path Pipeline::model_path(std::string_view response) const {
    return out_dir_ / ("model_" + sanitize(response) + ".json");
}

const Dataset& Pipeline::data() {
    if (data_) return *data_;
    if (config_.input) {
        ParseOptions opts;
        opts.reorder_buffer = config_.input->reorder_buffer;
        data_ = load_scada_csv(config_.input->path, config_.input->schema, opts, &stats_);
        note("loaded " + std::to_string(data_->records.size()) + " records from " +
             config_.input->path);
    } else {
        Dataset d = sim::generate_scenario(config_.simulate->scenario);
        for (const auto& f : config_.simulate->faults) d = sim::inject_fault(d, f);
        stats_.total_rows = stats_.parsed_rows = d.records.size();
        note("simulated " + std::to_string(d.records.size()) + " records");
        data_ = std::move(d);
    }
    return *data_;
}

const Dataset& Pipeline::modeling_data() {
    if (modeling_) return *modeling_;
    const Dataset& raw = data();
    const bool has_states = std::any_of(raw.records.begin(), raw.records.end(),
                                        [](const ScadaRecord& r) { return r.operating_state.has_value(); });
    if (config_.filter_running && has_states) {
        modeling_ = filter_running(raw);
        note("running filter kept " + std::to_string(modeling_->records.size()) + " of " +
             std::to_string(raw.records.size()) + " records");
    } else {
        modeling_ = raw;
    }
    return *modeling_;
}

Dataset Pipeline::run_simulate() {
    if (!config_.simulate) {
        fail(Errc::InvalidConfig, "the simulate command needs a 'simulate' section");
    }
    const Dataset& d = data();

    // Schema limited to the fields the scenario actually produces.
    Schema schema;
    schema.columns.emplace_back("timestamp", "timestamp");
    schema.columns.emplace_back("operating_state", "operating_state");
    for (const char* name : {"env_temp", "wind_speed", "rotor_speed", "generator_speed"}) {
        schema.columns.emplace_back(name, name);
    }
    for (const auto& link : config_.simulate->scenario.links) {
        if (!schema.has(link.response)) {
            schema.columns.emplace_back(link.response, link.response);
        }
    }

    save_scada_csv(d, schema, out_dir_ / "simulated.csv");
    io::write_json_file(out_dir_ / "ground_truth.json",
                        io::links_to_json(config_.simulate->scenario.links));
    note("wrote simulated.csv and ground_truth.json");
    return d;
}

ParseStats Pipeline::run_ingest() {
    if (!config_.input) {
        fail(Errc::InvalidConfig, "the ingest command needs an 'input' section");
    }
    const Dataset& d = data();
    save_scada_csv(d, config_.input->schema, out_dir_ / "ingested.csv");

    io::ordered_json j;
    j["format"] = io::kFormat;
    j["kind"] = "ingest_stats";
    j["total_rows"] = stats_.total_rows;
    j["parsed_rows"] = stats_.parsed_rows;
    j["rejected_bad_timestamp"] = stats_.rejected_bad_timestamp;
    j["rejected_duplicate"] = stats_.rejected_duplicate;
    j["ignored_columns"] = stats_.ignored_columns;
    j["missing_cells"] = stats_.missing_cells;
    j["cadence_s"] = d.cadence_s;
    if (!d.records.empty()) {
        j["start"] = format_iso8601(d.start_time());
        j["end"] = format_iso8601(d.end_time());
    }
    io::write_json_file(out_dir_ / "ingest_stats.json", j);
    return stats_;
}

baseline::BaselineWindow Pipeline::run_baseline() {
    const Dataset& source = modeling_data();
    const Dataset profiled = config_.baseline.use_fit_cadence
                                 ? at_cadence(source, config_.chart.fit_interval_s)
                                 : source;

    std::optional<Timestamp> upper = config_.baseline.upper_bound;
    if (!upper && config_.events_path) {
        const auto events = load_events(*config_.events_path);
        if (!events.empty()) {
            upper = events.front().t;
            note("baseline upper bound from first event: " + format_iso8601(*upper));
        }
    }

    auto w = baseline::detect_baseline(profiled, config_.baseline.var_a, config_.baseline.var_b,
                                       config_.baseline.min_points, upper);

    io::write_json_file(out_dir_ / "baseline.json", io::window_to_json(w));
    auto out = open_out(out_dir_ / "rho_profile.csv");
    csv::write_row(out, {"timestamp", "rho"});
    for (const auto& p : w.profile) {
        csv::write_row(out, {format_iso8601(p.t), csv::format_double(p.rho)});
    }
    note("baseline [" + format_iso8601(w.start) + ", " + format_iso8601(w.end) +
         "], rho_max=" + csv::format_double(w.rho_max));
    window_ = w;
    return w;
}

baseline::BaselineWindow Pipeline::window() {
    if (window_) return *window_;
    const auto path = out_dir_ / "baseline.json";
    if (std::filesystem::exists(path)) {
        window_ = io::window_from_json(io::read_json_file(path));
        note("loaded baseline window from baseline.json");
        return *window_;
    }
    return run_baseline();
}

std::vector<regress::RegressionModel> Pipeline::run_fit() {
    const auto w = window();
    const Dataset base = at_cadence(slice(modeling_data(), w.start, w.end),
                                    config_.chart.fit_interval_s);

    std::vector<regress::RegressionModel> models;
    for (const auto& spec : config_.models) {
        regress::RegressionModel m;
        if (spec.select) {
            auto sel = regress::best_subset(base, spec.response, spec.candidates);
            m = std::move(sel.best);
            note("model " + spec.response + ": selected " + std::to_string(m.terms.size()) +
                 " of " + std::to_string(spec.candidates.size()) + " candidate terms (" +
                 std::to_string(sel.enumerated.size()) + " subsets scored)");
        } else {
            m = regress::ols_fit(base, spec.response, spec.terms);
        }
        io::write_json_file(model_path(spec.response), io::model_to_json(m));
        models.push_back(std::move(m));
    }
    models_ = models;
    return models;
}

std::vector<regress::RegressionModel> Pipeline::models() {
    if (models_) return *models_;
    bool all_present = !config_.models.empty();
    for (const auto& spec : config_.models) {
        if (!std::filesystem::exists(model_path(spec.response))) {
            all_present = false;
            break;
        }
    }
    if (all_present) {
        std::vector<regress::RegressionModel> loaded;
        for (const auto& spec : config_.models) {
            loaded.push_back(io::model_from_json(io::read_json_file(model_path(spec.response))));
        }
        note("loaded " + std::to_string(loaded.size()) + " fitted model(s)");
        models_ = loaded;
        return loaded;
    }
    return run_fit();
}

io::ordered_json Pipeline::run_monitor() {
    const auto w = window();
    const auto fitted = models();
    const Dataset fit_data =
        at_cadence(slice(modeling_data(), w.start, w.end), config_.chart.fit_interval_s);
    const Dataset monitor_data = at_cadence(modeling_data(), config_.chart.monitor_interval_s);

    io::ordered_json summary;
    summary["format"] = io::kFormat;
    summary["kind"] = "monitor_summary";
    summary["baseline"] = {{"start", format_iso8601(w.start)}, {"end", format_iso8601(w.end)}};

    io::ordered_json variables = io::ordered_json::array();
    for (const auto& m : fitted) {
        const auto base_residuals = regress::residual_series(m, fit_data);
        std::vector<double> base_values;
        base_values.reserve(base_residuals.points.size());
        for (const auto& p : base_residuals.points) base_values.push_back(p.value);
        const auto chart = spc::fit_chart(base_values, config_.chart.min_baseline);

        const auto residuals = regress::residual_series(m, monitor_data);
        const auto report = spc::monitor(chart, residuals.points, w.end);

        const auto alarm_path = out_dir_ / ("alarms_" + sanitize(m.response) + ".csv");
        auto out = open_out(alarm_path);
        csv::write_row(out, {"timestamp", "residual", "lcl", "ucl", "status"});
        const std::string lcl = csv::format_double(chart.lcl);
        const std::string ucl = csv::format_double(chart.ucl);
        std::map<std::string, std::size_t> daily_out;
        for (const auto& p : report.points) {
            csv::write_row(out, {format_iso8601(p.t), csv::format_double(p.residual), lcl, ucl,
                                 std::string(spc::to_string(p.status))});
            if (p.status != spc::PointStatus::InControl) ++daily_out[day_of(p.t)];
        }

        io::ordered_json vj;
        vj["response"] = m.response;
        vj["chart"] = io::chart_to_json(chart);
        vj["out_count"] = report.out_count;
        vj["total"] = report.total;
        vj["fraction_out"] = report.fraction_out;
        vj["percent_out"] = format_percent(report.fraction_out, config_.locale_comma);
        if (report.baseline_fraction_out) {
            vj["baseline_fraction_out"] = *report.baseline_fraction_out;
        }
        vj["residuals_skipped"] = residuals.skipped;
        // Descriptive alarm clustering: the worst day by out-of-control count.
        std::size_t worst = 0;
        std::string worst_day;
        for (const auto& [day, count] : daily_out) {
            if (count > worst) {
                worst = count;
                worst_day = day;
            }
        }
        vj["max_daily_out"] = worst;
        if (worst > 0) vj["max_daily_out_date"] = worst_day;
        variables.push_back(std::move(vj));
    }
    summary["variables"] = std::move(variables);

    io::ordered_json fixed = io::ordered_json::array();
    for (const auto& [field, th] : config_.thresholds) {
        std::vector<regress::SeriesPoint> series;
        for (const auto& rec : monitor_data.records) {
            if (const auto v = field_value(rec, field)) series.push_back({rec.timestamp, *v});
        }
        const auto zr = spc::compare_fixed(series, th);
        auto out = open_out(out_dir_ / ("zones_" + sanitize(field) + ".csv"));
        csv::write_row(out, {"timestamp", "value", "zone"});
        for (const auto& p : zr.points) {
            csv::write_row(out, {format_iso8601(p.t), csv::format_double(p.value),
                                 std::string(spc::to_string(p.zone))});
        }
        io::ordered_json tj;
        tj["field"] = field;
        tj["warning"] = th.warning;
        tj["alarm"] = th.alarm;
        tj["normal_count"] = zr.normal_count;
        tj["warning_count"] = zr.warning_count;
        tj["alarm_count"] = zr.alarm_count;
        tj["total"] = zr.points.size();
        fixed.push_back(std::move(tj));
    }
    summary["thresholds"] = std::move(fixed);

    io::write_json_file(out_dir_ / "summary.json", summary);
    return summary;
}

io::ordered_json Pipeline::run_report() {
    const auto w = window();
    const auto fitted = models();
    const auto summary = run_monitor();

    io::ordered_json report;
    report["format"] = io::kFormat;
    report["kind"] = "report";
    report["baseline"] = io::window_to_json(w);
    io::ordered_json mj = io::ordered_json::array();
    for (const auto& m : fitted) mj.push_back(io::model_to_json(m));
    report["models"] = std::move(mj);
    report["monitor"] = summary;
    if (config_.events_path) {
        io::ordered_json ev = io::ordered_json::array();
        for (const auto& e : load_events(*config_.events_path)) {
            ev.push_back({{"timestamp", format_iso8601(e.t)}, {"label", e.label}});
        }
        report["events"] = std::move(ev);
    }
    io::write_json_file(out_dir_ / "report.json", report);
    return report;
}

}  // namespace windspc::pipeline
