#include "windspc/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "windspc/config.hpp"
#include "windspc/error.hpp"
#include "windspc/pipeline.hpp"

namespace windspc::cli {

namespace {

void print_monitor_summary(const io::ordered_json& summary) {
    for (const auto& v : summary.at("variables")) {
        std::cout << v.at("response").get<std::string>() << ": "
                  << v.at("out_count").get<std::size_t>() << "/"
                  << v.at("total").get<std::size_t>() << " out-of-control ("
                  << v.at("percent_out").get<std::string>() << ")\n";
    }
    for (const auto& t : summary.at("thresholds")) {
        std::cout << t.at("field").get<std::string>() << ": "
                  << t.at("warning_count").get<std::size_t>() << " warning, "
                  << t.at("alarm_count").get<std::size_t>() << " alarm of "
                  << t.at("total").get<std::size_t>() << " points\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Regression-adjusted control charting for wind turbine SCADA data"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    bool verbose = false;
    app.add_option("--config", config_path, "Pipeline configuration file (JSON)");
    app.add_option("--seed", seed, "Override the config's RNG seed");
    app.add_option("--out", out_dir, "Override the config's output directory");
    app.add_flag("--verbose", verbose, "Trace pipeline steps on stderr");

    for (const auto& [name, desc] :
         {std::pair{"simulate", "Generate a synthetic SCADA dataset plus ground truth"},
          {"ingest", "Parse, normalize and re-emit the input data with statistics"},
          {"baseline", "Detect the in-control period from the running correlation"},
          {"fit", "Fit the configured regression models on the baseline"},
          {"monitor", "Apply control charts to the model residuals"},
          {"report", "Run baseline, fit and monitor, then write a combined report"}}) {
        app.add_subcommand(name, desc)->fallthrough();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (config_path.empty()) {
            fail(Errc::InvalidConfig, "--config is required");
        }
        auto config = cfg::load_config(config_path);
        if (seed) config.apply_seed(*seed);
        if (out_dir) config.output_dir = *out_dir;

        pipeline::Pipeline p(std::move(config), verbose);
        if (sub == "simulate") {
            const auto d = p.run_simulate();
            std::cout << "wrote " << (p.out_dir() / "simulated.csv").string() << " ("
                      << d.records.size() << " records)\n";
        } else if (sub == "ingest") {
            const auto stats = p.run_ingest();
            std::cout << "parsed " << stats.parsed_rows << "/" << stats.total_rows
                      << " rows into " << (p.out_dir() / "ingested.csv").string() << "\n";
        } else if (sub == "baseline") {
            const auto w = p.run_baseline();
            std::cout << "baseline end: " << format_iso8601(w.end) << "\n";
        } else if (sub == "fit") {
            const auto models = p.run_fit();
            for (const auto& m : models) {
                std::cout << "fitted " << m.response << " (" << m.terms.size() << " terms, "
                          << m.n << " rows)\n";
            }
        } else if (sub == "monitor") {
            print_monitor_summary(p.run_monitor());
        } else {
            const auto report = p.run_report();
            print_monitor_summary(report.at("monitor"));
            std::cout << "wrote " << (p.out_dir() / "report.json").string() << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_status_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace windspc::cli
