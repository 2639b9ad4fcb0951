#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "windspc/regress.hpp"
#include "windspc/time.hpp"

namespace windspc::spc {

// Shewhart individuals chart fitted on baseline residuals.
struct ControlChart {
    double center = 0.0;     // mean of in-control residuals
    double sigma_hat = 0.0;  // moving-range estimate of short-term sd
    double lcl = 0.0;        // center - 3*sigma_hat
    double ucl = 0.0;        // center + 3*sigma_hat
    std::size_t n_baseline = 0;

    bool operator==(const ControlChart&) const = default;
};

enum class PointStatus { InControl, OutHigh, OutLow };

std::string_view to_string(PointStatus s);

struct AlarmPoint {
    Timestamp t = 0;
    double residual = 0.0;
    PointStatus status = PointStatus::InControl;

    bool operator==(const AlarmPoint&) const = default;
};

struct AlarmReport {
    std::vector<AlarmPoint> points;
    std::size_t out_count = 0;
    std::size_t total = 0;
    double fraction_out = 0.0;
    // Fraction out-of-control among points with t <= baseline_end, when a
    // baseline end was supplied to monitor() and at least one point qualifies.
    std::optional<double> baseline_fraction_out;
};

// Fixed vendor thresholds for raw (unmodeled) channels.
struct FixedThresholds {
    double warning = 0.0;
    double alarm = 0.0;

    void validate() const;  // requires 0 < warning < alarm
};

enum class Zone { Normal, Warning, Alarm };

std::string_view to_string(Zone z);

struct ZonePoint {
    Timestamp t = 0;
    double value = 0.0;
    Zone zone = Zone::Normal;

    bool operator==(const ZonePoint&) const = default;
};

struct FixedReport {
    std::vector<ZonePoint> points;
    std::size_t normal_count = 0;
    std::size_t warning_count = 0;
    std::size_t alarm_count = 0;
};

// mean(|x_{i+1} - x_i|) / 1.128 (d2 for subgroups of 2).
double moving_range_sigma(std::span<const double> x);

// center = mean, sigma_hat = moving_range_sigma, limits = center +/- 3 sigma.
ControlChart fit_chart(std::span<const double> baseline_residuals, std::size_t min_baseline = 30);

// Labels each residual OutHigh (> ucl), OutLow (< lcl) or InControl; points
// exactly on a limit are in control.
AlarmReport monitor(const ControlChart& chart, std::span<const regress::SeriesPoint> residuals,
                    std::optional<Timestamp> baseline_end = std::nullopt);

// Warning if warning < value <= alarm, Alarm if value > alarm, else Normal.
FixedReport compare_fixed(std::span<const regress::SeriesPoint> values, const FixedThresholds& t);

}  // namespace windspc::spc
