#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "windspc/baseline.hpp"
#include "windspc/cli.hpp"
#include "windspc/error.hpp"
#include "windspc/pipeline.hpp"
#include "windspc/regress.hpp"
#include "windspc/simulate.hpp"
#include "windspc/spc.hpp"
#include "windspc/time.hpp"
#include "windspc/turbine.hpp"

namespace py = pybind11;
using namespace windspc;

namespace {

std::vector<regress::SeriesPoint> zip_series(const std::vector<Timestamp>& times,
                                             const std::vector<double>& values) {
    if (times.size() != values.size()) {
        fail(Errc::LengthMismatch, "times and values must have the same length");
    }
    std::vector<regress::SeriesPoint> points(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) points[i] = {times[i], values[i]};
    return points;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Regression-adjusted control charting for wind turbine SCADA data";

    py::register_exception<Error>(m, "WindspcError");

    m.def("run_cli", &cli::run, py::arg("args"),
          "Run one CLI invocation (args without the program name); returns the exit status.");

    // --- spc -----------------------------------------------------------------
    py::class_<spc::ControlChart>(m, "ControlChart")
        .def(py::init<>())
        .def_readwrite("center", &spc::ControlChart::center)
        .def_readwrite("sigma_hat", &spc::ControlChart::sigma_hat)
        .def_readwrite("lcl", &spc::ControlChart::lcl)
        .def_readwrite("ucl", &spc::ControlChart::ucl)
        .def_readwrite("n_baseline", &spc::ControlChart::n_baseline)
        .def("__repr__", [](const spc::ControlChart& c) {
            return "ControlChart(center=" + std::to_string(c.center) +
                   ", lcl=" + std::to_string(c.lcl) + ", ucl=" + std::to_string(c.ucl) + ")";
        });

    m.def(
        "moving_range_sigma",
        [](const std::vector<double>& x) { return spc::moving_range_sigma(x); }, py::arg("x"),
        "Moving-range estimate of the short-term standard deviation (d2 = 1.128).");

    m.def(
        "fit_chart",
        [](const std::vector<double>& baseline, std::size_t min_baseline) {
            return spc::fit_chart(baseline, min_baseline);
        },
        py::arg("baseline"), py::arg("min_baseline") = 30,
        "Shewhart individuals chart (center +/- 3 sigma) fitted on baseline residuals.");

    m.def(
        "monitor",
        [](const spc::ControlChart& chart, const std::vector<Timestamp>& times,
           const std::vector<double>& values, std::optional<Timestamp> baseline_end) {
            const auto report = spc::monitor(chart, zip_series(times, values), baseline_end);
            std::vector<std::string> statuses;
            statuses.reserve(report.points.size());
            for (const auto& p : report.points) statuses.emplace_back(spc::to_string(p.status));
            py::dict out;
            out["statuses"] = statuses;
            out["out_count"] = report.out_count;
            out["total"] = report.total;
            out["fraction_out"] = report.fraction_out;
            out["baseline_fraction_out"] = report.baseline_fraction_out;
            return out;
        },
        py::arg("chart"), py::arg("times"), py::arg("values"),
        py::arg("baseline_end") = std::nullopt,
        "Label each point in_control/out_high/out_low against the chart limits.");

    m.def(
        "compare_fixed",
        [](const std::vector<Timestamp>& times, const std::vector<double>& values, double warning,
           double alarm) {
            spc::FixedThresholds t{warning, alarm};
            const auto report = spc::compare_fixed(zip_series(times, values), t);
            std::vector<std::string> zones;
            zones.reserve(report.points.size());
            for (const auto& p : report.points) zones.emplace_back(spc::to_string(p.zone));
            py::dict out;
            out["zones"] = zones;
            out["normal_count"] = report.normal_count;
            out["warning_count"] = report.warning_count;
            out["alarm_count"] = report.alarm_count;
            return out;
        },
        py::arg("times"), py::arg("values"), py::arg("warning"), py::arg("alarm"),
        "Zone each value against fixed warning/alarm thresholds.");

    // --- regress -------------------------------------------------------------
    m.def(
        "pearson",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return regress::pearson_correlation(a, b);
        },
        py::arg("a"), py::arg("b"), "Sample Pearson correlation.");

    m.def(
        "acf", [](const std::vector<double>& x, std::size_t max_lag) { return regress::acf(x, max_lag); },
        py::arg("x"), py::arg("max_lag"), "Autocorrelation r_0..r_max_lag (biased estimator).");

    m.def("mallows_cp", &regress::mallows_cp, py::arg("candidate_sse"), py::arg("p"),
          py::arg("full_sigma2"), py::arg("n"),
          "SSE_p / sigma2_full - n + 2p; the full model scores exactly p.");

    // --- turbine ---------------------------------------------------------------
    m.def(
        "classify_generator",
        [](double rpm) {
            switch (classify_generator(rpm, {})) {
                case GeneratorUse::Primary: return "primary";
                case GeneratorUse::Secondary: return "secondary";
                default: return "none";
            }
        },
        py::arg("rotor_rpm"), "Which generator the rotor speed implies: primary/secondary/none.");

    m.def(
        "theoretical_power", [](double wind_speed) { return theoretical_power(wind_speed, {}); },
        py::arg("wind_speed"), "Power curve output in watts for the default turbine parameters.");

    // --- simulate --------------------------------------------------------------
    m.def(
        "simulate",
        [](double duration_days, std::uint64_t seed, std::int64_t cadence_s) {
            auto cfg = sim::default_scenario();
            cfg.duration_days = duration_days;
            cfg.seed = seed;
            cfg.cadence_s = cadence_s;
            const auto d = sim::generate_scenario(cfg);

            py::dict out;
            std::vector<Timestamp> ts;
            ts.reserve(d.records.size());
            for (const auto& rec : d.records) ts.push_back(rec.timestamp);
            out["timestamp"] = ts;
            std::vector<std::string> fields = {"env_temp", "wind_speed", "rotor_speed",
                                               "generator_speed"};
            for (const auto& link : cfg.links) fields.push_back(link.response);
            for (const auto& f : fields) out[f.c_str()] = d.column(f);
            return out;
        },
        py::arg("duration_days") = 1.0, py::arg("seed") = 1, py::arg("cadence_s") = 240,
        "Synthetic SCADA dataset from the default scenario, as columns keyed by field name.");

    // --- misc ------------------------------------------------------------------
    m.def("format_percent", &pipeline::format_percent, py::arg("fraction"),
          py::arg("comma_decimal") = false,
          "Fraction rendered as a percentage with two decimals, e.g. 0.0701 -> '7.01%'.");

    m.def("parse_iso8601", [](const std::string& s) { return parse_iso8601(s); }, py::arg("text"),
          "Seconds since the Unix epoch for an ISO-8601 timestamp, or None.");

    m.def("format_iso8601", &format_iso8601, py::arg("t"),
          "Canonical 'YYYY-MM-DDTHH:MM:SSZ' rendering of an epoch timestamp.");
}
