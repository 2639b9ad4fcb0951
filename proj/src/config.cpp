#include "windspc/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>

#include "windspc/error.hpp"

namespace windspc::cfg {

namespace {

using io::ordered_json;

void check_keys(const ordered_json& j, std::initializer_list<std::string_view> allowed,
                const std::string& ctx) {
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(Errc::InvalidConfig, "unknown key '" + key + "' in " + ctx);
        }
    }
}

const ordered_json& require(const ordered_json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) fail(Errc::InvalidConfig, ctx + " requires '" + key + "'");
    return *it;
}

Timestamp parse_ts(const ordered_json& v, const std::string& ctx) {
    if (!v.is_string()) fail(Errc::InvalidConfig, ctx + " must be an ISO-8601 string");
    const auto t = parse_iso8601(v.get<std::string>());
    if (!t) {
        fail(Errc::InvalidConfig,
             ctx + ": cannot parse timestamp '" + v.get<std::string>() + "'");
    }
    return *t;
}

std::vector<regress::ModelTerm> parse_terms(const ordered_json& arr, const std::string& ctx) {
    if (!arr.is_array()) fail(Errc::InvalidConfig, ctx + " must be an array of terms");
    std::vector<regress::ModelTerm> terms;
    for (const auto& tj : arr) {
        check_keys(tj, {"variable", "power"}, ctx);
        regress::ModelTerm t;
        t.variable = require(tj, "variable", ctx).get<std::string>();
        t.power = tj.value("power", 1);
        terms.push_back(std::move(t));
    }
    return terms;
}

InputSpec parse_input(const ordered_json& j) {
    check_keys(j, {"path", "schema", "reorder_buffer"}, "input");
    InputSpec in;
    in.path = require(j, "path", "input").get<std::string>();
    const auto& schema = require(j, "schema", "input");
    if (!schema.is_object()) fail(Errc::InvalidConfig, "input.schema must be an object");
    for (const auto& [logical, column] : schema.items()) {
        if (!column.is_string()) {
            fail(Errc::InvalidConfig, "input.schema values must be column names");
        }
        in.schema.columns.emplace_back(logical, column.get<std::string>());
    }
    in.reorder_buffer = j.value("reorder_buffer", 0);
    if (in.reorder_buffer < 0) fail(Errc::InvalidConfig, "input.reorder_buffer must be >= 0");
    return in;
}

sim::LinearLink parse_link(const ordered_json& j) {
    check_keys(j, {"response", "intercept", "noise_sigma", "terms"}, "simulate.links[]");
    sim::LinearLink link;
    link.response = require(j, "response", "link").get<std::string>();
    link.intercept = j.value("intercept", 0.0);
    link.noise_sigma = j.value("noise_sigma", 0.0);
    if (auto it = j.find("terms"); it != j.end()) {
        for (const auto& tj : *it) {
            check_keys(tj, {"variable", "power", "coef"}, "link term");
            sim::LinkTerm t;
            t.variable = require(tj, "variable", "link term").get<std::string>();
            t.power = tj.value("power", 1);
            t.coef = require(tj, "coef", "link term").get<double>();
            link.terms.push_back(std::move(t));
        }
    }
    return link;
}

SimulateSpec parse_simulate(const ordered_json& j) {
    check_keys(j, {"duration_days", "cadence_s", "start", "env", "wind", "duty", "links", "faults"},
               "simulate");
    SimulateSpec s;
    s.scenario = sim::default_scenario();
    auto& sc = s.scenario;
    sc.duration_days = j.value("duration_days", sc.duration_days);
    sc.cadence_s = j.value("cadence_s", sc.cadence_s);
    if (auto it = j.find("start"); it != j.end()) sc.start = parse_ts(*it, "simulate.start");
    if (auto it = j.find("env"); it != j.end()) {
        check_keys(*it,
                   {"mean", "seasonal_amplitude", "seasonal_period_days", "daily_amplitude",
                    "noise_sigma"},
                   "simulate.env");
        sc.env.mean = it->value("mean", sc.env.mean);
        sc.env.seasonal_amplitude = it->value("seasonal_amplitude", sc.env.seasonal_amplitude);
        sc.env.seasonal_period_days = it->value("seasonal_period_days", sc.env.seasonal_period_days);
        sc.env.daily_amplitude = it->value("daily_amplitude", sc.env.daily_amplitude);
        sc.env.noise_sigma = it->value("noise_sigma", sc.env.noise_sigma);
    }
    if (auto it = j.find("wind"); it != j.end()) {
        check_keys(*it, {"mean", "persistence", "noise_sigma"}, "simulate.wind");
        sc.wind.mean = it->value("mean", sc.wind.mean);
        sc.wind.persistence = it->value("persistence", sc.wind.persistence);
        sc.wind.noise_sigma = it->value("noise_sigma", sc.wind.noise_sigma);
    }
    if (auto it = j.find("duty"); it != j.end()) {
        sc.duty.clear();
        for (const auto& rj : *it) {
            check_keys(rj, {"probability", "rotor_speed", "generator_speed", "state"},
                       "simulate.duty[]");
            sim::DutyRegime r;
            r.probability = require(rj, "probability", "duty regime").get<double>();
            r.rotor_speed = rj.value("rotor_speed", 0.0);
            r.generator_speed = rj.value("generator_speed", 0.0);
            const auto state = operating_state_from_int(rj.value("state", 3));
            if (!state) {
                fail(Errc::InvalidConfig,
                     "duty regime state must be 0 (emergency) .. 3 (run)");
            }
            r.state = *state;
            sc.duty.push_back(r);
        }
    }
    if (auto it = j.find("links"); it != j.end()) {
        sc.links.clear();
        for (const auto& lj : *it) sc.links.push_back(parse_link(lj));
    }
    if (auto it = j.find("faults"); it != j.end()) {
        for (const auto& fj : *it) {
            check_keys(fj, {"kind", "target", "onset", "magnitude"}, "simulate.faults[]");
            sim::FaultSpec f;
            f.kind =
                sim::fault_kind_from_string(require(fj, "kind", "fault").get<std::string>());
            f.target = require(fj, "target", "fault").get<std::string>();
            f.onset = parse_ts(require(fj, "onset", "fault"), "fault.onset");
            f.magnitude = require(fj, "magnitude", "fault").get<double>();
            s.faults.push_back(std::move(f));
        }
    }
    return s;
}

BaselineSpec parse_baseline(const ordered_json& j) {
    check_keys(j, {"pair", "min_points", "upper_bound", "use_fit_cadence"}, "baseline");
    BaselineSpec b;
    if (auto it = j.find("pair"); it != j.end()) {
        if (!it->is_array() || it->size() != 2) {
            fail(Errc::InvalidConfig, "baseline.pair must be a two-element array");
        }
        b.var_a = (*it)[0].get<std::string>();
        b.var_b = (*it)[1].get<std::string>();
    }
    b.min_points = j.value("min_points", b.min_points);
    if (auto it = j.find("upper_bound"); it != j.end()) {
        b.upper_bound = parse_ts(*it, "baseline.upper_bound");
    }
    b.use_fit_cadence = j.value("use_fit_cadence", b.use_fit_cadence);
    return b;
}

std::vector<std::string> available_fields(const PipelineConfig& c) {
    std::vector<std::string> fields;
    if (c.input) {
        for (const auto& [logical, column] : c.input->schema.columns) {
            if (logical != "timestamp" && logical != "operating_state") {
                fields.push_back(logical);
            }
        }
    }
    if (c.simulate) {
        fields = {"env_temp", "wind_speed", "rotor_speed", "generator_speed"};
        for (const auto& link : c.simulate->scenario.links) fields.push_back(link.response);
    }
    return fields;
}

}  // namespace

void PipelineConfig::apply_seed(std::uint64_t s) {
    seed = s;
    if (simulate) {
        simulate->scenario.seed = s;
        for (auto& f : simulate->faults) f.seed = s;
    }
}

void PipelineConfig::validate() const {
    if (!input && !simulate) {
        fail(Errc::InvalidConfig, "config needs either 'input' or 'simulate'");
    }
    if (input && simulate) {
        fail(Errc::InvalidConfig, "config cannot have both 'input' and 'simulate'");
    }
    if (input && !input->schema.has("timestamp")) {
        fail(Errc::InvalidConfig, "input.schema must map 'timestamp'");
    }
    if (simulate) {
        simulate->scenario.validate();
        for (const auto& f : simulate->faults) f.validate();
    }

    const auto fields = available_fields(*this);
    auto known = [&](const std::string& name) {
        return std::find(fields.begin(), fields.end(), name) != fields.end();
    };
    auto require_known = [&](const std::string& name, const std::string& where) {
        if (!is_known_field(name)) {
            fail(Errc::InvalidConfig, where + ": '" + name + "' is not a recognized field");
        }
        if (!known(name)) {
            fail(Errc::InvalidConfig,
                 where + ": field '" + name + "' is not provided by the configured input");
        }
    };

    require_known(baseline.var_a, "baseline.pair");
    require_known(baseline.var_b, "baseline.pair");
    if (baseline.min_points < 3) fail(Errc::InvalidConfig, "baseline.min_points must be >= 3");

    std::vector<std::string> seen;
    for (const auto& m : models) {
        require_known(m.response, "models[].response");
        if (std::find(seen.begin(), seen.end(), m.response) != seen.end()) {
            fail(Errc::InvalidConfig, "duplicate model for response '" + m.response + "'");
        }
        seen.push_back(m.response);
        const auto& used = m.select ? m.candidates : m.terms;
        if (used.empty()) {
            fail(Errc::InvalidConfig, "model '" + m.response + "' needs " +
                                          (m.select ? std::string("candidates") : std::string("terms")));
        }
        for (const auto& t : used) {
            require_known(t.variable, "model '" + m.response + "'");
            if (t.power < 1) {
                fail(Errc::InvalidConfig, "model '" + m.response + "': term power must be >= 1");
            }
        }
    }

    if (chart.fit_interval_s <= 0) fail(Errc::InvalidConfig, "chart.fit_interval_s must be > 0");
    if (chart.monitor_interval_s < 0) {
        fail(Errc::InvalidConfig, "chart.monitor_interval_s must be >= 0");
    }
    if (chart.min_baseline < 2) fail(Errc::InvalidConfig, "chart.min_baseline must be >= 2");

    for (const auto& [field, th] : thresholds) {
        require_known(field, "thresholds");
        try {
            th.validate();
        } catch (const Error&) {
            fail(Errc::InvalidConfig,
                 "thresholds for '" + field + "' require 0 < warning < alarm");
        }
    }
}

PipelineConfig parse_config(const io::ordered_json& j) {
    if (!j.is_object()) fail(Errc::InvalidConfig, "config root must be an object");
    check_keys(j,
               {"seed", "output_dir", "locale_comma", "filter_running", "input", "simulate",
                "events", "baseline", "models", "chart", "thresholds"},
               "config");
    PipelineConfig c;
    try {
        c.seed = j.value("seed", c.seed);
        c.output_dir = j.value("output_dir", c.output_dir);
        c.locale_comma = j.value("locale_comma", c.locale_comma);
        c.filter_running = j.value("filter_running", c.filter_running);
        if (auto it = j.find("input"); it != j.end()) c.input = parse_input(*it);
        if (auto it = j.find("simulate"); it != j.end()) c.simulate = parse_simulate(*it);
        if (auto it = j.find("events"); it != j.end()) c.events_path = it->get<std::string>();
        if (auto it = j.find("baseline"); it != j.end()) c.baseline = parse_baseline(*it);
        if (auto it = j.find("models"); it != j.end()) {
            for (const auto& mj : *it) {
                check_keys(mj, {"response", "terms", "candidates", "select"}, "models[]");
                ModelSpec m;
                m.response = require(mj, "response", "model").get<std::string>();
                m.select = mj.value("select", false);
                if (auto t = mj.find("terms"); t != mj.end()) {
                    m.terms = parse_terms(*t, "model '" + m.response + "' terms");
                }
                if (auto t = mj.find("candidates"); t != mj.end()) {
                    m.candidates = parse_terms(*t, "model '" + m.response + "' candidates");
                }
                c.models.push_back(std::move(m));
            }
        }
        if (auto it = j.find("chart"); it != j.end()) {
            check_keys(*it, {"fit_interval_s", "monitor_interval_s", "min_baseline"}, "chart");
            c.chart.fit_interval_s = it->value("fit_interval_s", c.chart.fit_interval_s);
            c.chart.monitor_interval_s = it->value("monitor_interval_s", c.chart.monitor_interval_s);
            c.chart.min_baseline = it->value("min_baseline", c.chart.min_baseline);
        }
        if (auto it = j.find("thresholds"); it != j.end()) {
            for (const auto& [field, tj] : it->items()) {
                check_keys(tj, {"warning", "alarm"}, "thresholds['" + field + "']");
                spc::FixedThresholds th;
                th.warning = require(tj, "warning", "thresholds").get<double>();
                th.alarm = require(tj, "alarm", "thresholds").get<double>();
                c.thresholds[field] = th;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::InvalidConfig, std::string("malformed config value: ") + e.what());
    }
    c.apply_seed(c.seed);
    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open config '" + path.string() + "'");
    io::ordered_json j;
    try {
        j = io::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::InvalidConfig, "config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

}  // namespace windspc::cfg
