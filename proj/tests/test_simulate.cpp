#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "windspc/error.hpp"
#include "windspc/regress.hpp"
#include "windspc/simulate.hpp"

using namespace windspc;
using sim::FaultKind;
using sim::FaultSpec;
using sim::ScenarioConfig;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::IoError;
}

// every numeric field of the record, for whole-record comparisons
const std::vector<std::string>& all_fields() {
    static const std::vector<std::string> fields = [] {
        std::vector<std::string> f = core_field_names();
        f.push_back("vib.drivetrain.vel");
        f.push_back("vib.drivetrain.acc");
        return f;
    }();
    return fields;
}

double max_abs_difference(const Dataset& a, const Dataset& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& field : all_fields()) {
            auto va = field_value(a.records[i], field);
            auto vb = field_value(b.records[i], field);
            REQUIRE(va.has_value() == vb.has_value());
            if (va) worst = std::max(worst, std::abs(*va - *vb));
        }
    }
    return worst;
}

// stationary scenario (no seasonal/daily trend, single Run regime) used by
// the fault tests so pre/post windows are comparable
ScenarioConfig stationary_scenario(double days = 10.0) {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = days;
    cfg.seed = 77;
    cfg.env.seasonal_amplitude = 0.0;
    cfg.env.daily_amplitude = 0.0;
    cfg.duty = {{1.0, 26.5, 1515.0, OperatingState::Run}};
    return cfg;
}

std::vector<double> column_values(const Dataset& d, std::string_view field, Timestamp from,
                                  Timestamp to) {
    std::vector<double> out;
    for (const auto& r : d.records) {
        if (r.timestamp < from || r.timestamp >= to) continue;
        if (auto v = field_value(r, field)) out.push_back(*v);
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("generate_scenario: record count, cadence and schema") {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = 1.0;
    cfg.cadence_s = 240;
    Dataset d = sim::generate_scenario(cfg);

    REQUIRE(d.size() == 360);
    CHECK(d.cadence_s == 240);
    CHECK(d.records.front().timestamp == cfg.start);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const ScadaRecord& r = d.records[i];
        CHECK(r.timestamp == cfg.start + static_cast<Timestamp>(i) * 240);
        CHECK(r.env_temp.has_value());
        CHECK(*r.wind_speed > 0.0);
        REQUIRE(r.operating_state.has_value());
        // the duty tuple comes from one configured regime
        bool matched = false;
        for (const auto& regime : cfg.duty) {
            matched = matched || (r.rotor_speed == regime.rotor_speed &&
                                  r.generator_speed == regime.generator_speed &&
                                  r.operating_state == regime.state);
        }
        CHECK(matched);
        for (const auto& link : cfg.links) {
            CHECK(field_value(r, link.response).has_value());
        }
    }
    CHECK(d.provenance.starts_with("simulate:"));
}

TEST_CASE("generate_scenario: deterministic in the seed") {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = 2.0;
    cfg.seed = 123;
    Dataset a = sim::generate_scenario(cfg);
    Dataset b = sim::generate_scenario(cfg);
    CHECK(same_records(a, b));
    CHECK(a.provenance == b.provenance);

    cfg.seed = 124;
    Dataset c = sim::generate_scenario(cfg);
    CHECK_FALSE(same_records(a, c));
}

TEST_CASE("generate_scenario: duty regime frequencies match their weights") {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = 30.0;
    cfg.seed = 5;
    Dataset d = sim::generate_scenario(cfg);
    std::size_t paused = 0;
    for (const auto& r : d.records) {
        if (r.operating_state == OperatingState::Pause) ++paused;
    }
    double frac = static_cast<double>(paused) / static_cast<double>(d.size());
    CHECK(frac > 0.08);
    CHECK(frac < 0.12);
}

TEST_CASE("generate_scenario: wind is positive with the configured median") {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = 30.0;
    cfg.seed = 9;
    Dataset d = sim::generate_scenario(cfg);
    std::vector<double> wind;
    for (const auto& r : d.records) wind.push_back(*r.wind_speed);
    std::nth_element(wind.begin(), wind.begin() + static_cast<std::ptrdiff_t>(wind.size() / 2),
                     wind.end());
    double median = wind[wind.size() / 2];
    CHECK(median == doctest::Approx(cfg.wind.mean).epsilon(0.05));
}

TEST_CASE("generate_scenario: zero link noise recovers the ground truth") {
    ScenarioConfig cfg = sim::default_scenario();
    cfg.duration_days = 5.0;
    cfg.seed = 31;
    for (auto& link : cfg.links) link.noise_sigma = 0.0;
    Dataset d = sim::generate_scenario(cfg);

    // bearing_temp = 15 + 0.55*env + 0.045*wind^2, exactly
    regress::RegressionModel m =
        regress::ols_fit(d, "bearing_temp", {{"env_temp", 1}, {"wind_speed", 2}});
    CHECK(m.intercept == doctest::Approx(15.0).epsilon(1e-8));
    CHECK(m.coefficients[0] == doctest::Approx(0.55).epsilon(1e-8));
    CHECK(m.coefficients[1] == doctest::Approx(0.045).epsilon(1e-8));
    CHECK(m.sse < 1e-10);

    // gen1_temp depends on two earlier responses; still exact
    regress::RegressionModel g = regress::ols_fit(
        d, "gen1_temp",
        {{"env_temp", 1}, {"generator_speed", 1}, {"bearing_temp", 1}, {"gearbox_temp", 1}});
    CHECK(g.intercept == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(g.coefficients[0] == doctest::Approx(0.45).epsilon(1e-7));
    CHECK(g.coefficients[1] == doctest::Approx(0.022).epsilon(1e-7));
    CHECK(g.coefficients[2] == doctest::Approx(0.18).epsilon(1e-7));
    CHECK(g.coefficients[3] == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("generate_scenario: fully noiseless variant stays exact") {
    ScenarioConfig cfg;
    cfg.duration_days = 3.0;
    cfg.env.noise_sigma = 0.0;
    cfg.wind.noise_sigma = 0.0;
    cfg.duty = {{1.0, 26.5, 1515.0, OperatingState::Run}};
    cfg.links = {
        {"nacelle_temp", 7.54899, {{"env_temp", 1, 0.94560}}, 0.0},
        {"gearbox_temp", 2.0, {{"nacelle_temp", 1, 0.5}}, 0.0},  // chained response
    };
    Dataset d = sim::generate_scenario(cfg);

    regress::RegressionModel m = regress::ols_fit(d, "nacelle_temp", {{"env_temp", 1}});
    CHECK(m.intercept == doctest::Approx(7.54899).epsilon(1e-8));
    CHECK(m.coefficients[0] == doctest::Approx(0.94560).epsilon(1e-8));

    regress::RegressionModel chain = regress::ols_fit(d, "gearbox_temp", {{"nacelle_temp", 1}});
    CHECK(chain.intercept == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(chain.coefficients[0] == doctest::Approx(0.5).epsilon(1e-8));

    // with all noise off, the wind process sits exactly at its median
    for (const auto& r : d.records) CHECK(*r.wind_speed == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("generate_scenario: configuration validation") {
    auto expect_invalid = [](std::function<void(ScenarioConfig&)> mutate) {
        ScenarioConfig cfg = sim::default_scenario();
        mutate(cfg);
        CHECK(code_of([&] { sim::generate_scenario(cfg); }) == Errc::InvalidConfig);
    };
    expect_invalid([](ScenarioConfig& c) { c.duration_days = 0.0; });
    expect_invalid([](ScenarioConfig& c) { c.cadence_s = 0; });
    expect_invalid([](ScenarioConfig& c) { c.wind.persistence = 1.0; });
    expect_invalid([](ScenarioConfig& c) { c.wind.mean = 0.0; });
    expect_invalid([](ScenarioConfig& c) { c.env.noise_sigma = -0.5; });
    expect_invalid([](ScenarioConfig& c) { c.duty.clear(); });
    expect_invalid([](ScenarioConfig& c) { c.duty[0].probability = -0.1; });
    expect_invalid([](ScenarioConfig& c) {
        for (auto& r : c.duty) r.probability = 0.0;
    });
    expect_invalid([](ScenarioConfig& c) { c.links[0].response = "frob"; });
    expect_invalid([](ScenarioConfig& c) { c.links[0].terms[0].power = 0; });
    // a link may only reference variables already set when it runs
    expect_invalid([](ScenarioConfig& c) {
        c.links = {{"gearbox_temp", 1.0, {{"gen1_temp", 1, 0.5}}, 0.0}};
    });
}

TEST_CASE("inject_fault: vanishing magnitude leaves the data essentially unchanged") {
    ScenarioConfig cfg = stationary_scenario(5.0);
    Dataset d = sim::generate_scenario(cfg);
    const Timestamp onset = d.records[d.size() / 2].timestamp;

    for (FaultKind kind : {FaultKind::MeanShift, FaultKind::LinearDrift, FaultKind::Decorrelation,
                           FaultKind::VibrationGrowth}) {
        FaultSpec f;
        f.kind = kind;
        f.target = kind == FaultKind::VibrationGrowth ? "vib.drivetrain.vel" : "nacelle_temp";
        f.onset = onset;
        f.magnitude = 1e-12;
        f.seed = 3;
        Dataset faulted = sim::inject_fault(d, f);
        CHECK(max_abs_difference(faulted, d) < 1e-9);
    }
}

TEST_CASE("inject_fault: records before onset are identical to the input") {
    ScenarioConfig cfg = stationary_scenario(4.0);
    Dataset d = sim::generate_scenario(cfg);
    const std::size_t cut = d.size() / 3;
    const Timestamp onset = d.records[cut].timestamp;

    for (FaultKind kind : {FaultKind::MeanShift, FaultKind::LinearDrift, FaultKind::Decorrelation,
                           FaultKind::VibrationGrowth}) {
        FaultSpec f;
        f.kind = kind;
        f.target = kind == FaultKind::VibrationGrowth ? "vib.drivetrain.vel" : "gen1_temp";
        f.onset = onset;
        f.magnitude = 2.0;
        if (kind == FaultKind::Decorrelation) f.magnitude = 0.8;
        Dataset faulted = sim::inject_fault(d, f);
        REQUIRE(faulted.size() == d.size());
        for (std::size_t i = 0; i < cut; ++i) {
            CHECK(faulted.records[i] == d.records[i]);
        }
        // the record at the onset itself is already affected (except for a
        // drift/growth ramp, which starts at zero)
        if (kind == FaultKind::MeanShift) {
            CHECK(faulted.records[cut] != d.records[cut]);
        }
        CHECK(faulted.provenance.find("fault=") != std::string::npos);
    }
}

TEST_CASE("inject_fault: MeanShift adds exactly the configured step") {
    ScenarioConfig cfg = stationary_scenario(6.0);
    Dataset d = sim::generate_scenario(cfg);
    const Timestamp onset = d.records[d.size() / 2].timestamp;

    FaultSpec f;
    f.kind = FaultKind::MeanShift;
    f.target = "gen1_temp";
    f.onset = onset;
    f.magnitude = 5.0;
    Dataset faulted = sim::inject_fault(d, f);

    for (std::size_t i = 0; i < d.size(); ++i) {
        double want = d.records[i].timestamp >= onset ? 5.0 : 0.0;
        CHECK(*faulted.records[i].gen1_temp - *d.records[i].gen1_temp ==
              doctest::Approx(want).epsilon(1e-12));
    }

    // the two-sample view: post-onset mean minus pre-onset mean is ~5
    auto pre = column_values(faulted, "gen1_temp", d.start_time(), onset);
    auto post = column_values(faulted, "gen1_temp", onset, d.end_time() + 1);
    CHECK(mean_of(post) - mean_of(pre) == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("inject_fault: LinearDrift ramps at the configured per-day rate") {
    ScenarioConfig cfg = stationary_scenario(4.0);
    Dataset d = sim::generate_scenario(cfg);
    const Timestamp onset = d.records[d.size() / 4].timestamp;

    FaultSpec f;
    f.kind = FaultKind::LinearDrift;
    f.target = "gearbox_temp";
    f.onset = onset;
    f.magnitude = 2.4;  // units per day
    Dataset faulted = sim::inject_fault(d, f);

    for (std::size_t i = 0; i < d.size(); ++i) {
        const Timestamp t = d.records[i].timestamp;
        double want = t >= onset ? 2.4 * static_cast<double>(t - onset) / 86400.0 : 0.0;
        CHECK(*faulted.records[i].gearbox_temp - *d.records[i].gearbox_temp ==
              doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("inject_fault: Decorrelation severs the linkage but keeps the scale") {
    ScenarioConfig cfg = stationary_scenario(10.0);
    cfg.env.noise_sigma = 1.5;  // give env real variation without a trend
    Dataset d = sim::generate_scenario(cfg);
    const Timestamp onset = d.records[d.size() / 2].timestamp;

    FaultSpec f;
    f.kind = FaultKind::Decorrelation;
    f.target = "nacelle_temp";
    f.onset = onset;
    f.magnitude = 0.9;
    f.seed = 11;
    Dataset faulted = sim::inject_fault(d, f);

    auto corr_between = [&](const Dataset& data, Timestamp from, Timestamp to) {
        auto a = column_values(data, "nacelle_temp", from, to);
        auto b = column_values(data, "env_temp", from, to);
        return regress::pearson_correlation(a, b);
    };
    const double pre = corr_between(faulted, d.start_time(), onset);
    const double post = corr_between(faulted, onset, d.end_time() + 1);
    CHECK(pre > 0.7);
    CHECK(std::abs(post) < 0.35);

    // marginal spread is preserved up to the blend factor sqrt((1-m)^2 + m^2)
    const double sd_unfaulted = sd_of(column_values(d, "nacelle_temp", onset, d.end_time() + 1));
    const double sd_faulted = sd_of(column_values(faulted, "nacelle_temp", onset, d.end_time() + 1));
    CHECK(sd_faulted / sd_unfaulted > 0.80);
    CHECK(sd_faulted / sd_unfaulted < 1.05);

    SUBCASE("needs pre-onset observations to estimate moments") {
        FaultSpec at_start = f;
        at_start.onset = d.start_time();
        CHECK(code_of([&] { sim::inject_fault(d, at_start); }) == Errc::InsufficientData);
    }
}

TEST_CASE("inject_fault: VibrationGrowth scales up linearly to the configured factor") {
    ScenarioConfig cfg = stationary_scenario(4.0);
    Dataset d = sim::generate_scenario(cfg);
    const std::size_t cut = d.size() / 2;
    const Timestamp onset = d.records[cut].timestamp;

    FaultSpec f;
    f.kind = FaultKind::VibrationGrowth;
    f.target = "vib.drivetrain.vel";
    f.onset = onset;
    f.magnitude = 0.8;
    Dataset faulted = sim::inject_fault(d, f);

    const double span = static_cast<double>(d.end_time() - onset);
    for (std::size_t i = cut; i < d.size(); ++i) {
        double frac = static_cast<double>(d.records[i].timestamp - onset) / span;
        double ratio = *field_value(faulted.records[i], "vib.drivetrain.vel") /
                       *field_value(d.records[i], "vib.drivetrain.vel");
        CHECK(ratio == doctest::Approx(1.0 + 0.8 * frac).epsilon(1e-9));
    }
    // untouched sibling channel
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(*field_value(faulted.records[i], "vib.drivetrain.acc") ==
              *field_value(d.records[i], "vib.drivetrain.acc"));
    }
}

TEST_CASE("inject_fault: validation") {
    ScenarioConfig cfg = stationary_scenario(2.0);
    Dataset d = sim::generate_scenario(cfg);

    FaultSpec f;
    f.kind = FaultKind::MeanShift;
    f.target = "gen1_temp";
    f.onset = d.records[5].timestamp;
    f.magnitude = 1.0;

    SUBCASE("onset must lie within the span") {
        FaultSpec early = f;
        early.onset = d.start_time() - 240;
        CHECK(code_of([&] { sim::inject_fault(d, early); }) == Errc::OnsetOutOfRange);
        FaultSpec late = f;
        late.onset = d.end_time() + 240;
        CHECK(code_of([&] { sim::inject_fault(d, late); }) == Errc::OnsetOutOfRange);
    }

    SUBCASE("target must be a known, observed field") {
        FaultSpec bogus = f;
        bogus.target = "frobnication";
        CHECK(code_of([&] { sim::inject_fault(d, bogus); }) == Errc::UnknownField);
        FaultSpec unobserved = f;
        unobserved.target = "vib.tower.vel";  // valid name, never set
        CHECK(code_of([&] { sim::inject_fault(d, unobserved); }) == Errc::UnknownField);
    }

    SUBCASE("magnitude bounds") {
        FaultSpec zero = f;
        zero.magnitude = 0.0;
        CHECK(code_of([&] { sim::inject_fault(d, zero); }) == Errc::InvalidParams);
        FaultSpec over = f;
        over.kind = FaultKind::Decorrelation;
        over.magnitude = 1.5;
        CHECK(code_of([&] { sim::inject_fault(d, over); }) == Errc::InvalidParams);
    }

    SUBCASE("fault kind names round-trip") {
        for (FaultKind kind : {FaultKind::MeanShift, FaultKind::LinearDrift,
                               FaultKind::Decorrelation, FaultKind::VibrationGrowth}) {
            CHECK(sim::fault_kind_from_string(sim::to_string(kind)) == kind);
        }
        CHECK_THROWS_AS(sim::fault_kind_from_string("gremlins"), Error);
    }
}
