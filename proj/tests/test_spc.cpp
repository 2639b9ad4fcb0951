#include <cmath>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "windspc/error.hpp"
#include "windspc/rng.hpp"
#include "windspc/spc.hpp"

using namespace windspc;
using regress::SeriesPoint;
using spc::ControlChart;
using spc::PointStatus;
using spc::Zone;

namespace {

std::vector<SeriesPoint> series_of(const std::vector<double>& values) {
    std::vector<SeriesPoint> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back({static_cast<Timestamp>(240 * i), values[i]});
    }
    return out;
}

// four-decimal rounding used when comparing reported fractions
double round4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace

TEST_CASE("moving_range_sigma") {
    SUBCASE("alternating 0,2 series") {
        std::vector<double> x;
        for (int i = 0; i < 40; ++i) x.push_back(i % 2 ? 2.0 : 0.0);
        // mean moving range 2, sigma = 2/1.128
        CHECK(spc::moving_range_sigma(x) == doctest::Approx(1.77305).epsilon(1e-4));
        CHECK(spc::moving_range_sigma(x) == doctest::Approx(2.0 / 1.128).epsilon(1e-12));
    }

    SUBCASE("constant series has no range") {
        std::vector<double> flat(50, 3.25);
        try {
            spc::moving_range_sigma(flat);
            FAIL("expected ZeroRange");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ZeroRange);
        }
    }

    SUBCASE("too short") {
        std::vector<double> one = {1.0};
        try {
            spc::moving_range_sigma(one);
            FAIL("expected SeriesTooShort");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::SeriesTooShort);
        }
    }

    SUBCASE("unbiased for iid normal data") {
        rng::Rng r(rng::Rng::stream_seed(5, "mr-sigma"));
        std::vector<double> x;
        for (int i = 0; i < 100000; ++i) x.push_back(r.normal());
        double s = spc::moving_range_sigma(x);
        CHECK(s > 0.98);
        CHECK(s < 1.02);
    }
}

TEST_CASE("fit_chart") {
    SUBCASE("alternating 0,2 series") {
        std::vector<double> x;
        for (int i = 0; i < 40; ++i) x.push_back(i % 2 ? 2.0 : 0.0);
        ControlChart c = spc::fit_chart(x);
        CHECK(c.center == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.ucl == doctest::Approx(1.0 + 5.3191).epsilon(1e-4));
        CHECK(c.lcl == doctest::Approx(1.0 - 5.3191).epsilon(1e-4));
        CHECK(c.n_baseline == 40);
        // exact algebraic identities
        CHECK(c.ucl == c.center + 3.0 * c.sigma_hat);
        CHECK(c.lcl == c.center - 3.0 * c.sigma_hat);
        CHECK(c.lcl < c.ucl);
    }

    SUBCASE("limits near +-3 on standard normal residuals") {
        rng::Rng r(rng::Rng::stream_seed(6, "fit-chart"));
        std::vector<double> x;
        for (int i = 0; i < 100000; ++i) x.push_back(r.normal());
        ControlChart c = spc::fit_chart(x);
        CHECK(c.ucl > 2.9);
        CHECK(c.ucl < 3.1);
        CHECK(c.lcl > -3.1);
        CHECK(c.lcl < -2.9);
    }

    SUBCASE("insufficient baseline") {
        std::vector<double> x(29, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i % 3);
        try {
            spc::fit_chart(x);
            FAIL("expected InsufficientBaseline");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InsufficientBaseline);
        }
        // the floor is configurable
        ControlChart c = spc::fit_chart(x, 10);
        CHECK(c.n_baseline == 29);
    }
}

TEST_CASE("monitor") {
    ControlChart chart;
    chart.center = 1.0;
    chart.sigma_hat = 0.5;
    chart.lcl = -0.5;
    chart.ucl = 2.5;
    chart.n_baseline = 100;

    SUBCASE("all residuals at the center raise nothing") {
        spc::AlarmReport rep = spc::monitor(chart, series_of(std::vector<double>(25, 1.0)));
        CHECK(rep.total == 25);
        CHECK(rep.out_count == 0);
        CHECK(rep.fraction_out == 0.0);
        CHECK_FALSE(rep.baseline_fraction_out.has_value());
        for (const auto& pt : rep.points) CHECK(pt.status == PointStatus::InControl);
    }

    SUBCASE("single spike is exactly one OutHigh") {
        std::vector<double> vals(50, 1.0);
        vals[17] = chart.center + 10.0 * chart.sigma_hat;
        spc::AlarmReport rep = spc::monitor(chart, series_of(vals));
        CHECK(rep.out_count == 1);
        CHECK(rep.points[17].status == PointStatus::OutHigh);
        CHECK(rep.fraction_out == doctest::Approx(1.0 / 50.0).epsilon(1e-12));
    }

    SUBCASE("boundary points are in control; strictly outside is out") {
        std::vector<double> vals = {chart.ucl,
                                    chart.lcl,
                                    std::nextafter(chart.ucl, 1e9),
                                    std::nextafter(chart.lcl, -1e9),
                                    chart.center};
        spc::AlarmReport rep = spc::monitor(chart, series_of(vals));
        CHECK(rep.points[0].status == PointStatus::InControl);
        CHECK(rep.points[1].status == PointStatus::InControl);
        CHECK(rep.points[2].status == PointStatus::OutHigh);
        CHECK(rep.points[3].status == PointStatus::OutLow);
        CHECK(rep.points[4].status == PointStatus::InControl);
        CHECK(rep.out_count == 2);
    }

    SUBCASE("reported fractions match the published arithmetic") {
        // 2158 of 30775 -> 7.01%; 3678 of 30775 -> 11.95%
        std::vector<double> vals(30775, 1.0);
        for (int i = 0; i < 2158; ++i) vals[static_cast<std::size_t>(i)] = 100.0;
        spc::AlarmReport rep = spc::monitor(chart, series_of(vals));
        CHECK(rep.out_count == 2158);
        CHECK(rep.total == 30775);
        CHECK(round4(rep.fraction_out) == doctest::Approx(0.0701).epsilon(1e-12));

        for (int i = 2158; i < 3678; ++i) vals[static_cast<std::size_t>(i)] = -100.0;
        rep = spc::monitor(chart, series_of(vals));
        CHECK(rep.out_count == 3678);
        CHECK(round4(rep.fraction_out) == doctest::Approx(0.1195).epsilon(1e-12));
    }

    SUBCASE("iid normal residuals alarm at roughly the 3-sigma rate") {
        rng::Rng r(rng::Rng::stream_seed(7, "monitor-rate"));
        std::vector<double> vals;
        for (int i = 0; i < 100000; ++i) vals.push_back(r.normal());
        ControlChart unit;
        unit.center = 0.0;
        unit.sigma_hat = 1.0;
        unit.lcl = -3.0;
        unit.ucl = 3.0;
        unit.n_baseline = 100000;
        spc::AlarmReport rep = spc::monitor(unit, series_of(vals));
        CHECK(rep.fraction_out > 0.0015);
        CHECK(rep.fraction_out < 0.0045);
    }

    SUBCASE("baseline_fraction_out covers only points up to the baseline end") {
        std::vector<double> vals(10, 1.0);
        vals[2] = 50.0;   // inside the baseline span
        vals[9] = -50.0;  // after it
        // timestamps are 0,240,...; baseline ends at t=960 (first 5 points)
        spc::AlarmReport rep = spc::monitor(chart, series_of(vals), Timestamp{960});
        REQUIRE(rep.baseline_fraction_out.has_value());
        CHECK(*rep.baseline_fraction_out == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
        CHECK(rep.out_count == 2);

        // no point at or before the bound -> no baseline fraction
        spc::AlarmReport none = spc::monitor(chart, series_of(vals), Timestamp{-5});
        CHECK_FALSE(none.baseline_fraction_out.has_value());
    }

    SUBCASE("shift equivariance") {
        rng::Rng r(rng::Rng::stream_seed(8, "monitor-shift"));
        std::vector<double> vals;
        for (int i = 0; i < 500; ++i) vals.push_back(1.0 + 0.5 * r.normal());
        spc::AlarmReport base = spc::monitor(chart, series_of(vals));

        const double c = 13.75;
        ControlChart shifted = chart;
        shifted.center += c;
        shifted.lcl += c;
        shifted.ucl += c;
        std::vector<double> moved;
        for (double v : vals) moved.push_back(v + c);
        spc::AlarmReport rep = spc::monitor(shifted, series_of(moved));

        REQUIRE(rep.points.size() == base.points.size());
        for (std::size_t i = 0; i < rep.points.size(); ++i) {
            CHECK(rep.points[i].status == base.points[i].status);
        }
        CHECK(rep.out_count == base.out_count);
    }
}

TEST_CASE("compare_fixed") {
    spc::FixedThresholds t{1.06, 2.12};

    spc::FixedReport rep = spc::compare_fixed(series_of({1.0, 1.5, 2.5}), t);
    REQUIRE(rep.points.size() == 3);
    CHECK(rep.points[0].zone == Zone::Normal);
    CHECK(rep.points[1].zone == Zone::Warning);
    CHECK(rep.points[2].zone == Zone::Alarm);
    CHECK(rep.normal_count == 1);
    CHECK(rep.warning_count == 1);
    CHECK(rep.alarm_count == 1);

    SUBCASE("boundaries: warning is half-open, alarm strict") {
        spc::FixedReport b = spc::compare_fixed(series_of({1.06, 2.12, 2.120001}), t);
        CHECK(b.points[0].zone == Zone::Normal);   // == warning stays normal
        CHECK(b.points[1].zone == Zone::Warning);  // == alarm is still warning
        CHECK(b.points[2].zone == Zone::Alarm);
    }

    SUBCASE("threshold validation") {
        try {
            spc::compare_fixed({}, spc::FixedThresholds{2.0, 1.0});
            FAIL("expected InvalidParams");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidParams);
        }
        CHECK_THROWS_AS((spc::FixedThresholds{0.0, 1.0}).validate(), Error);
        CHECK_THROWS_AS((spc::FixedThresholds{1.0, 1.0}).validate(), Error);
    }
}

TEST_CASE("status and zone names") {
    CHECK(spc::to_string(PointStatus::InControl) == "in_control");
    CHECK(spc::to_string(PointStatus::OutHigh) == "out_high");
    CHECK(spc::to_string(PointStatus::OutLow) == "out_low");
    CHECK(spc::to_string(Zone::Normal) == "normal");
    CHECK(spc::to_string(Zone::Warning) == "warning");
    CHECK(spc::to_string(Zone::Alarm) == "alarm");
}
