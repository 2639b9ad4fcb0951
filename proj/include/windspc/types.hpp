#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "windspc/time.hpp"

namespace windspc {

enum class OperatingState : int { Emergency = 0, Stop = 1, Pause = 2, Run = 3 };

std::optional<OperatingState> operating_state_from_int(long long value);

// One vibration channel carries a velocity (mm/s) and an acceleration value.
struct VibrationReading {
    std::optional<double> velocity;
    std::optional<double> acceleration;

    bool operator==(const VibrationReading&) const = default;
};

// One timestamped multi-sensor observation. Every numeric field may be
// missing; missingness is explicit (nullopt), never a sentinel number.
struct ScadaRecord {
    Timestamp timestamp = 0;
    std::optional<double> wind_speed;        // m/s
    std::optional<double> env_temp;          // degC
    std::optional<double> nacelle_temp;      // degC
    std::optional<double> gearbox_temp;      // degC
    std::optional<double> bearing_temp;      // degC
    std::optional<double> gen1_temp;         // degC
    std::optional<double> gen2_temp;         // degC
    std::optional<double> oil_temp;          // degC
    std::optional<double> rotor_speed;       // RPM
    std::optional<double> generator_speed;   // RPM
    std::optional<double> power_output;      // kW
    std::optional<double> pitch_angle;       // degrees
    std::optional<double> yaw;               // degrees
    std::optional<OperatingState> operating_state;
    std::map<std::string, VibrationReading, std::less<>> vibrations;

    bool operator==(const ScadaRecord&) const = default;
};

// Logical field addressing. Core fields go by their member name
// ("wind_speed", "env_temp", ...). Vibration channels are addressed as
// "vib.<channel>.vel" and "vib.<channel>.acc". operating_state and timestamp
// are not numeric fields and are not addressable here.
bool is_known_field(std::string_view name);
std::optional<double> field_value(const ScadaRecord& record, std::string_view name);
void set_field_value(ScadaRecord& record, std::string_view name, std::optional<double> value);

// The core field names in canonical (serialization) order.
const std::vector<std::string>& core_field_names();

struct Dataset {
    std::vector<ScadaRecord> records;
    // Median inter-record gap in seconds; 0 when fewer than two records.
    std::int64_t cadence_s = 0;
    // "path:<file>" or "simulated:<seed>".
    std::string provenance;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }

    Timestamp start_time() const { return records.empty() ? 0 : records.front().timestamp; }
    Timestamp end_time() const { return records.empty() ? 0 : records.back().timestamp; }

    // Recomputes cadence_s from the median inter-record gap.
    void refresh_cadence();

    // Extracts a column of optional values for a logical field, in record
    // order.
    std::vector<std::optional<double>> column(std::string_view field) const;
};

// Record-wise equality ignoring provenance (used by round-trip checks).
bool same_records(const Dataset& a, const Dataset& b);

}  // namespace windspc
