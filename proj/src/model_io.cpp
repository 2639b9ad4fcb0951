#include "windspc/model_io.hpp"

#include <fstream>
#include <string>

#include "windspc/error.hpp"
#include "windspc/time.hpp"

namespace windspc::io {

void expect_kind(const ordered_json& j, std::string_view kind) {
    if (!j.is_object() || j.value("format", "") != kFormat || j.value("kind", "") != kind) {
        fail(Errc::IoError, "expected a " + std::string(kFormat) + " '" + std::string(kind) +
                                "' document");
    }
}

ordered_json model_to_json(const regress::RegressionModel& m) {
    ordered_json j;
    j["format"] = kFormat;
    j["kind"] = "regression_model";
    j["response"] = m.response;
    j["n"] = m.n;
    j["dropped"] = m.dropped;
    j["sse"] = m.sse;
    j["sigma2_hat"] = m.sigma2_hat;
    ordered_json coeffs = ordered_json::array();
    {
        ordered_json row;
        row["term"] = "(Intercept)";
        row["variable"] = "";
        row["power"] = 0;
        row["estimate"] = m.intercept;
        row["std_error"] = m.std_errors[0];
        row["t_value"] = m.t_values[0];
        row["p_value"] = m.p_values[0];
        coeffs.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < m.terms.size(); ++i) {
        ordered_json row;
        row["term"] = m.terms[i].display_name();
        row["variable"] = m.terms[i].variable;
        row["power"] = m.terms[i].power;
        row["estimate"] = m.coefficients[i];
        row["std_error"] = m.std_errors[i + 1];
        row["t_value"] = m.t_values[i + 1];
        row["p_value"] = m.p_values[i + 1];
        coeffs.push_back(std::move(row));
    }
    j["coefficients"] = std::move(coeffs);
    return j;
}

regress::RegressionModel model_from_json(const ordered_json& j) {
    expect_kind(j, "regression_model");
    try {
        regress::RegressionModel m;
        m.response = j.at("response").get<std::string>();
        m.n = j.at("n").get<std::size_t>();
        m.dropped = j.at("dropped").get<std::size_t>();
        m.sse = j.at("sse").get<double>();
        m.sigma2_hat = j.at("sigma2_hat").get<double>();
        const auto& coeffs = j.at("coefficients");
        if (!coeffs.is_array() || coeffs.empty()) {
            fail(Errc::IoError, "regression_model document has no coefficient rows");
        }
        for (const auto& row : coeffs) {
            const auto term = row.at("term").get<std::string>();
            const double est = row.at("estimate").get<double>();
            if (term == "(Intercept)") {
                m.intercept = est;
            } else {
                m.terms.push_back(
                    {row.at("variable").get<std::string>(), row.at("power").get<int>()});
                m.coefficients.push_back(est);
            }
            m.std_errors.push_back(row.at("std_error").get<double>());
            m.t_values.push_back(row.at("t_value").get<double>());
            m.p_values.push_back(row.at("p_value").get<double>());
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("malformed regression_model document: ") + e.what());
    }
}

ordered_json chart_to_json(const spc::ControlChart& c) {
    ordered_json j;
    j["format"] = kFormat;
    j["kind"] = "control_chart";
    j["center"] = c.center;
    j["sigma_hat"] = c.sigma_hat;
    j["lcl"] = c.lcl;
    j["ucl"] = c.ucl;
    j["n_baseline"] = c.n_baseline;
    return j;
}

spc::ControlChart chart_from_json(const ordered_json& j) {
    expect_kind(j, "control_chart");
    try {
        spc::ControlChart c;
        c.center = j.at("center").get<double>();
        c.sigma_hat = j.at("sigma_hat").get<double>();
        c.lcl = j.at("lcl").get<double>();
        c.ucl = j.at("ucl").get<double>();
        c.n_baseline = j.at("n_baseline").get<std::size_t>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("malformed control_chart document: ") + e.what());
    }
}

ordered_json window_to_json(const baseline::BaselineWindow& w) {
    ordered_json j;
    j["format"] = kFormat;
    j["kind"] = "baseline_window";
    j["start"] = format_iso8601(w.start);
    j["end"] = format_iso8601(w.end);
    j["rho_max"] = w.rho_max;
    j["profile_points"] = w.profile.size();
    return j;
}

baseline::BaselineWindow window_from_json(const ordered_json& j) {
    expect_kind(j, "baseline_window");
    try {
        baseline::BaselineWindow w;
        const auto start = parse_iso8601(j.at("start").get<std::string>());
        const auto end = parse_iso8601(j.at("end").get<std::string>());
        if (!start || !end) {
            fail(Errc::IoError, "baseline_window document has unparseable timestamps");
        }
        w.start = *start;
        w.end = *end;
        w.rho_max = j.at("rho_max").get<double>();
        return w;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("malformed baseline_window document: ") + e.what());
    }
}

ordered_json links_to_json(const std::vector<sim::LinearLink>& links) {
    ordered_json j;
    j["format"] = kFormat;
    j["kind"] = "ground_truth";
    ordered_json arr = ordered_json::array();
    for (const auto& link : links) {
        ordered_json lj;
        lj["response"] = link.response;
        lj["intercept"] = link.intercept;
        lj["noise_sigma"] = link.noise_sigma;
        ordered_json terms = ordered_json::array();
        for (const auto& t : link.terms) {
            ordered_json tj;
            tj["variable"] = t.variable;
            tj["power"] = t.power;
            tj["coef"] = t.coef;
            terms.push_back(std::move(tj));
        }
        lj["terms"] = std::move(terms);
        arr.push_back(std::move(lj));
    }
    j["links"] = std::move(arr);
    return j;
}

std::vector<sim::LinearLink> links_from_json(const ordered_json& j) {
    expect_kind(j, "ground_truth");
    try {
        std::vector<sim::LinearLink> links;
        for (const auto& lj : j.at("links")) {
            sim::LinearLink link;
            link.response = lj.at("response").get<std::string>();
            link.intercept = lj.at("intercept").get<double>();
            link.noise_sigma = lj.at("noise_sigma").get<double>();
            for (const auto& tj : lj.at("terms")) {
                link.terms.push_back({tj.at("variable").get<std::string>(),
                                      tj.at("power").get<int>(), tj.at("coef").get<double>()});
            }
            links.push_back(std::move(link));
        }
        return links;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("malformed ground_truth document: ") + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) fail(Errc::IoError, "failed writing '" + path.string() + "'");
}

ordered_json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open '" + path.string() + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, "malformed JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace windspc::io
