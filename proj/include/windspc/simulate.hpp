#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "windspc/time.hpp"
#include "windspc/types.hpp"

namespace windspc::sim {

// Seasonal + daily sinusoid with Gaussian noise, degrees C.
struct EnvModel {
    double mean = 12.0;
    double seasonal_amplitude = 8.0;
    double seasonal_period_days = 365.0;
    double daily_amplitude = 2.0;
    double noise_sigma = 0.5;
};

// First-order autoregression on the log scale (keeps wind speed positive).
// `mean` is the median of the stationary marginal.
struct WindModel {
    double mean = 8.0;
    double persistence = 0.9;  // phi in [0, 1)
    double noise_sigma = 0.12;
};

struct LinkTerm {
    std::string variable;
    int power = 1;
    double coef = 0.0;

    bool operator==(const LinkTerm&) const = default;
};

// Ground-truth linear relationship: response = intercept + sum coef*x^power + noise.
struct LinearLink {
    std::string response;
    double intercept = 0.0;
    std::vector<LinkTerm> terms;
    double noise_sigma = 0.0;

    bool operator==(const LinearLink&) const = default;
};

// One rotor-speed operating regime; regimes are drawn per record.
struct DutyRegime {
    double probability = 1.0;
    double rotor_speed = 26.5;
    double generator_speed = 1515.0;
    OperatingState state = OperatingState::Run;
};

struct ScenarioConfig {
    double duration_days = 30.0;
    std::int64_t cadence_s = 240;
    std::uint64_t seed = 1;
    Timestamp start = 1356998400;  // 2013-01-01T00:00:00Z
    EnvModel env;
    WindModel wind;
    std::vector<DutyRegime> duty;
    std::vector<LinearLink> links;  // evaluated in order; terms may reference earlier responses

    void validate() const;
};

enum class FaultKind { MeanShift, LinearDrift, Decorrelation, VibrationGrowth };

std::string_view to_string(FaultKind k);
FaultKind fault_kind_from_string(std::string_view s);

struct FaultSpec {
    FaultKind kind = FaultKind::MeanShift;
    std::string target;
    Timestamp onset = 0;
    // MeanShift: additive shift in target units; LinearDrift: units per day;
    // Decorrelation: fraction of the linkage replaced by noise, in (0, 1];
    // VibrationGrowth: relative growth reached at the end of the series.
    double magnitude = 0.0;
    std::uint64_t seed = 0;  // drives Decorrelation's replacement noise

    void validate() const;
};

// Scenario with the default linkage structure (nacelle/bearing/gearbox/
// generator temperatures and a drivetrain vibration channel tied to wind,
// ambient temperature and generator speed).
ScenarioConfig default_scenario();

// Deterministic in cfg (a named 64-bit PRNG with per-variable streams).
// The ground-truth links are recorded in the dataset provenance.
Dataset generate_scenario(const ScenarioConfig& cfg);

// Returns a copy of d with the fault applied to records at/after onset;
// earlier records are untouched.
Dataset inject_fault(const Dataset& d, const FaultSpec& f);

}  // namespace windspc::sim
