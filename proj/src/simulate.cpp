#include "windspc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "windspc/error.hpp"
#include "windspc/model_io.hpp"
#include "windspc/rng.hpp"

namespace windspc::sim {

std::string_view to_string(FaultKind k) {
    switch (k) {
        case FaultKind::MeanShift: return "mean_shift";
        case FaultKind::LinearDrift: return "linear_drift";
        case FaultKind::Decorrelation: return "decorrelation";
        case FaultKind::VibrationGrowth: return "vibration_growth";
    }
    return "mean_shift";
}

FaultKind fault_kind_from_string(std::string_view s) {
    if (s == "mean_shift") return FaultKind::MeanShift;
    if (s == "linear_drift") return FaultKind::LinearDrift;
    if (s == "decorrelation") return FaultKind::Decorrelation;
    if (s == "vibration_growth") return FaultKind::VibrationGrowth;
    fail(Errc::InvalidConfig, "unknown fault kind '" + std::string(s) + "'");
}

void ScenarioConfig::validate() const {
    if (!(duration_days > 0.0)) fail(Errc::InvalidConfig, "scenario duration must be positive");
    if (cadence_s <= 0) fail(Errc::InvalidConfig, "scenario cadence must be positive");
    if (!(env.seasonal_period_days > 0.0)) {
        fail(Errc::InvalidConfig, "seasonal period must be positive");
    }
    if (!(env.noise_sigma >= 0.0) || !(wind.noise_sigma >= 0.0)) {
        fail(Errc::InvalidConfig, "noise sigma must be >= 0");
    }
    if (!(wind.persistence >= 0.0) || wind.persistence >= 1.0) {
        fail(Errc::InvalidConfig, "wind persistence must lie in [0, 1)");
    }
    if (!(wind.mean > 0.0)) fail(Errc::InvalidConfig, "wind mean must be positive");
    if (duty.empty()) fail(Errc::InvalidConfig, "scenario needs at least one duty regime");
    double psum = 0.0;
    for (const auto& r : duty) {
        if (!(r.probability >= 0.0)) fail(Errc::InvalidConfig, "duty probability must be >= 0");
        psum += r.probability;
    }
    if (!(psum > 0.0)) fail(Errc::InvalidConfig, "duty probabilities sum to zero");
    for (const auto& link : links) {
        if (!is_known_field(link.response)) {
            fail(Errc::InvalidConfig, "link response '" + link.response + "' is not a known field");
        }
        if (!(link.noise_sigma >= 0.0)) fail(Errc::InvalidConfig, "link noise sigma must be >= 0");
        for (const auto& t : link.terms) {
            if (t.power < 1) fail(Errc::InvalidConfig, "link term power must be >= 1");
            if (!is_known_field(t.variable)) {
                fail(Errc::InvalidConfig,
                     "link term variable '" + t.variable + "' is not a known field");
            }
        }
    }
}

void FaultSpec::validate() const {
    if (!(magnitude > 0.0)) fail(Errc::InvalidParams, "fault magnitude must be positive");
    if (kind == FaultKind::Decorrelation && magnitude > 1.0) {
        fail(Errc::InvalidParams, "decorrelation fraction must lie in (0, 1]");
    }
    if (!is_known_field(target)) {
        fail(Errc::UnknownField, "fault target '" + target + "' is not a known field");
    }
}

ScenarioConfig default_scenario() {
    ScenarioConfig cfg;
    cfg.duty = {
        {0.72, 26.5, 1515.0, OperatingState::Run},
        {0.18, 20.0, 1150.0, OperatingState::Run},
        {0.10, 0.0, 0.0, OperatingState::Pause},
    };
    cfg.links = {
        {"nacelle_temp", 7.54899, {{"env_temp", 1, 0.94560}}, 1.0},
        {"bearing_temp", 15.0, {{"env_temp", 1, 0.55}, {"wind_speed", 2, 0.045}}, 0.4},
        {"gearbox_temp", 18.0, {{"env_temp", 1, 0.48}, {"wind_speed", 1, 0.90}}, 0.4},
        {"gen1_temp",
         5.0,
         {{"env_temp", 1, 0.45},
          {"generator_speed", 1, 0.022},
          {"bearing_temp", 1, 0.18},
          {"gearbox_temp", 1, 0.25}},
         0.8},
        {"power_output", 0.0, {{"wind_speed", 3, 425.075}}, 2000.0},
        {"vib.drivetrain.vel",
         0.05,
         {{"generator_speed", 1, 5.0e-4},
          {"wind_speed", 3, 1.5e-4},
          {"gen1_temp", 1, 2.0e-3},
          {"gen1_temp", 2, 1.0e-5},
          {"gen1_temp", 3, 2.0e-8}},
         0.05},
        {"vib.drivetrain.acc", 0.02, {{"generator_speed", 1, 4.0e-4}, {"wind_speed", 3, 2.0e-4}},
         0.02},
    };
    return cfg;
}

Dataset generate_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    const auto total_s = static_cast<std::int64_t>(std::llround(cfg.duration_days * 86400.0));
    const std::int64_t n = total_s / cfg.cadence_s;

    rng::Rng env_rng = rng::Rng::for_stream(cfg.seed, "env");
    rng::Rng wind_rng = rng::Rng::for_stream(cfg.seed, "wind");
    rng::Rng duty_rng = rng::Rng::for_stream(cfg.seed, "duty");
    std::vector<rng::Rng> link_rngs;
    link_rngs.reserve(cfg.links.size());
    for (const auto& link : cfg.links) {
        link_rngs.push_back(rng::Rng::for_stream(cfg.seed, "link:" + link.response));
    }

    std::vector<double> duty_weights;
    duty_weights.reserve(cfg.duty.size());
    for (const auto& r : cfg.duty) duty_weights.push_back(r.probability);

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double seasonal_period_s = cfg.env.seasonal_period_days * 86400.0;
    const double log_mean = std::log(cfg.wind.mean);
    const double phi = cfg.wind.persistence;

    // Stationary start for the log-wind AR(1).
    double log_wind =
        log_mean + cfg.wind.noise_sigma / std::sqrt(1.0 - phi * phi) * wind_rng.normal();

    Dataset d;
    d.records.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    for (std::int64_t k = 0; k < n; ++k) {
        ScadaRecord rec;
        rec.timestamp = cfg.start + k * cfg.cadence_s;
        const double phase = static_cast<double>(k * cfg.cadence_s);

        rec.env_temp = cfg.env.mean + cfg.env.seasonal_amplitude * std::sin(two_pi * phase / seasonal_period_s) +
                       cfg.env.daily_amplitude * std::sin(two_pi * phase / 86400.0) +
                       cfg.env.noise_sigma * env_rng.normal();

        if (k > 0) {
            log_wind = log_mean + phi * (log_wind - log_mean) + cfg.wind.noise_sigma * wind_rng.normal();
        }
        rec.wind_speed = std::exp(log_wind);

        const auto& regime = cfg.duty[duty_rng.categorical(duty_weights)];
        rec.rotor_speed = regime.rotor_speed;
        rec.generator_speed = regime.generator_speed;
        rec.operating_state = regime.state;

        for (std::size_t li = 0; li < cfg.links.size(); ++li) {
            const auto& link = cfg.links[li];
            double value = link.intercept;
            for (const auto& term : link.terms) {
                const auto x = field_value(rec, term.variable);
                if (!x) {
                    fail(Errc::InvalidConfig, "link '" + link.response + "' references '" +
                                                  term.variable +
                                                  "', which is not set at that point");
                }
                value += term.coef * std::pow(*x, term.power);
            }
            value += link.noise_sigma * link_rngs[li].normal();
            set_field_value(rec, link.response, value);
        }
        d.records.push_back(std::move(rec));
    }

    d.refresh_cadence();
    d.provenance = "simulate:" + io::links_to_json(cfg.links).dump();
    return d;
}

Dataset inject_fault(const Dataset& d, const FaultSpec& f) {
    f.validate();
    if (d.records.empty()) fail(Errc::EmptyInput, "inject_fault: empty dataset");
    if (f.onset < d.start_time() || f.onset > d.end_time()) {
        fail(Errc::OnsetOutOfRange, "fault onset " + format_iso8601(f.onset) +
                                        " is outside the dataset span [" +
                                        format_iso8601(d.start_time()) + ", " +
                                        format_iso8601(d.end_time()) + "]");
    }

    bool seen = false;
    for (const auto& rec : d.records) {
        if (field_value(rec, f.target)) {
            seen = true;
            break;
        }
    }
    if (!seen) {
        fail(Errc::UnknownField, "fault target '" + f.target + "' is never observed in the data");
    }

    Dataset out = d;

    double pre_mean = 0.0, pre_sd = 0.0;
    rng::Rng noise = rng::Rng::for_stream(f.seed, "fault:" + f.target);
    if (f.kind == FaultKind::Decorrelation) {
        // Moments of the unfaulted signal, estimated before onset.
        std::size_t n = 0;
        double mean = 0.0, m2 = 0.0;
        for (const auto& rec : d.records) {
            if (rec.timestamp >= f.onset) break;
            const auto v = field_value(rec, f.target);
            if (!v) continue;
            ++n;
            const double delta = *v - mean;
            mean += delta / static_cast<double>(n);
            m2 += delta * (*v - mean);
        }
        if (n < 2) {
            fail(Errc::InsufficientData,
                 "decorrelation fault needs at least 2 pre-onset observations of the target");
        }
        pre_mean = mean;
        pre_sd = std::sqrt(m2 / static_cast<double>(n - 1));
    }

    const double span = static_cast<double>(d.end_time() - f.onset);
    for (auto& rec : out.records) {
        if (rec.timestamp < f.onset) continue;
        const auto v = field_value(rec, f.target);
        if (!v) continue;
        const double elapsed = static_cast<double>(rec.timestamp - f.onset);
        double y = *v;
        switch (f.kind) {
            case FaultKind::MeanShift: y += f.magnitude; break;
            case FaultKind::LinearDrift: y += f.magnitude * elapsed / 86400.0; break;
            case FaultKind::Decorrelation:
                // Blend a fraction `magnitude` of the signal into independent
                // noise with the pre-onset marginal moments.
                y = pre_mean + (1.0 - f.magnitude) * (y - pre_mean) +
                    f.magnitude * pre_sd * noise.normal();
                break;
            case FaultKind::VibrationGrowth: {
                const double frac = span > 0.0 ? elapsed / span : 1.0;
                y *= 1.0 + f.magnitude * frac;
                break;
            }
        }
        set_field_value(rec, f.target, y);
    }

    out.provenance += ";fault=" + std::string(to_string(f.kind)) + ":" + f.target + "@" +
                      format_iso8601(f.onset);
    return out;
}

}  // namespace windspc::sim
