#include "windspc/spc.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "windspc/error.hpp"

namespace windspc::spc {

namespace {
constexpr double kD2 = 1.128;  // E[range] / sigma for subgroups of size 2
}

std::string_view to_string(PointStatus s) {
    switch (s) {
        case PointStatus::InControl: return "in_control";
        case PointStatus::OutHigh: return "out_high";
        case PointStatus::OutLow: return "out_low";
    }
    return "in_control";
}

std::string_view to_string(Zone z) {
    switch (z) {
        case Zone::Normal: return "normal";
        case Zone::Warning: return "warning";
        case Zone::Alarm: return "alarm";
    }
    return "normal";
}

void FixedThresholds::validate() const {
    if (!(warning > 0.0) || !(alarm > warning)) {
        fail(Errc::InvalidParams, "fixed thresholds require 0 < warning < alarm");
    }
}

double moving_range_sigma(std::span<const double> x) {
    if (x.size() < 2) {
        fail(Errc::SeriesTooShort, "moving_range_sigma: need at least 2 points");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        sum += std::fabs(x[i + 1] - x[i]);
    }
    const double mr_bar = sum / static_cast<double>(x.size() - 1);
    if (mr_bar == 0.0) {
        fail(Errc::ZeroRange, "moving_range_sigma: all moving ranges are zero");
    }
    return mr_bar / kD2;
}

ControlChart fit_chart(std::span<const double> baseline_residuals, std::size_t min_baseline) {
    if (baseline_residuals.size() < min_baseline) {
        fail(Errc::InsufficientBaseline,
             "fit_chart: baseline has " + std::to_string(baseline_residuals.size()) +
                 " residuals, need " + std::to_string(min_baseline));
    }
    ControlChart c;
    c.n_baseline = baseline_residuals.size();
    c.center = std::accumulate(baseline_residuals.begin(), baseline_residuals.end(), 0.0) /
               static_cast<double>(baseline_residuals.size());
    c.sigma_hat = moving_range_sigma(baseline_residuals);
    c.lcl = c.center - 3.0 * c.sigma_hat;
    c.ucl = c.center + 3.0 * c.sigma_hat;
    return c;
}

AlarmReport monitor(const ControlChart& chart, std::span<const regress::SeriesPoint> residuals,
                    std::optional<Timestamp> baseline_end) {
    AlarmReport r;
    r.points.reserve(residuals.size());
    std::size_t base_total = 0, base_out = 0;
    for (const auto& p : residuals) {
        PointStatus st = PointStatus::InControl;
        if (p.value > chart.ucl) {
            st = PointStatus::OutHigh;
        } else if (p.value < chart.lcl) {
            st = PointStatus::OutLow;
        }
        if (st != PointStatus::InControl) ++r.out_count;
        if (baseline_end && p.t <= *baseline_end) {
            ++base_total;
            if (st != PointStatus::InControl) ++base_out;
        }
        r.points.push_back({p.t, p.value, st});
    }
    r.total = r.points.size();
    r.fraction_out =
        r.total == 0 ? 0.0 : static_cast<double>(r.out_count) / static_cast<double>(r.total);
    if (base_total > 0) {
        r.baseline_fraction_out = static_cast<double>(base_out) / static_cast<double>(base_total);
    }
    return r;
}

FixedReport compare_fixed(std::span<const regress::SeriesPoint> values, const FixedThresholds& t) {
    t.validate();
    FixedReport r;
    r.points.reserve(values.size());
    for (const auto& p : values) {
        Zone z = Zone::Normal;
        if (p.value > t.alarm) {
            z = Zone::Alarm;
            ++r.alarm_count;
        } else if (p.value > t.warning) {
            z = Zone::Warning;
            ++r.warning_count;
        } else {
            ++r.normal_count;
        }
        r.points.push_back({p.t, p.value, z});
    }
    return r;
}

}  // namespace windspc::spc
